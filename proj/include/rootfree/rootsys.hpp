#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <unordered_map>

#include "rootfree/bits.hpp"
#include "rootfree/intmath.hpp"

// Finite crystallographic root systems in simple-root coordinates.
//
// A root is its coefficient vector over the simple roots, so roots are
// exact integer data.  Positive roots are generated from the Cartan
// matrix by reflection closure and sorted by (height, reverse
// lexicographic), which matches the order the classical references list
// them in for the small types.
//
// Conventions:
//   cartan[i][j] = <alpha_i, alpha_j^vee>, so the reflection s_j acts by
//   s_j(beta) = beta - (sum_i n_i cartan[i][j]) alpha_j.
//   d[j] = (alpha_j, alpha_j)/2, normalized so each factor has min 1;
//   form[i][j] = (alpha_i, alpha_j) = cartan[i][j] * d[j].
//
// Type labelings: C_n has alpha_1 = 2e_1 long and alpha_i = e_i - e_{i-1};
// B_n is its transpose (alpha_1 = e_1 short).  D/E/F/G follow Bourbaki
// numbering (D_n trivalent node at n-2, 1-based 2 for D4; F4 with
// alpha_1, alpha_2 long; G2 with alpha_1 short).

namespace rootfree {

struct VecHash {
  size_t operator()(const Vec& v) const {
    size_t h = 146527;
    for (Int x : v) h = h * 31 + std::hash<Int>()(x);
    return h;
  }
};

using Root = Vec;

struct RootSystem;
using RootSystemPtr = std::shared_ptr<const RootSystem>;

// ---------------------------------------------------------------------
// Cartan matrix classification

struct CartanComponent {
  std::vector<int> nodes;  // ambient node indices
  char letter = 0;
  int rank = 0;
};

inline Mat canonical_cartan(char letter, int rank);

namespace detail {

// Backtracking enumeration of Cartan-preserving node bijections a -> b.
inline void cartan_isos_rec(const Mat& a, const Mat& b, std::vector<int>& img,
                            std::vector<bool>& used, size_t k,
                            std::vector<std::vector<int>>& out, bool first_only) {
  size_t n = a.size();
  if (k == n) {
    out.push_back(img);
    return;
  }
  for (size_t j = 0; j < n; ++j) {
    if (used[j]) continue;
    bool ok = true;
    for (size_t i = 0; i < k && ok; ++i) {
      if (a[k][i] != b[j][img[i]] || a[i][k] != b[img[i]][j]) ok = false;
    }
    if (!ok) continue;
    img[k] = (int)j;
    used[j] = true;
    cartan_isos_rec(a, b, img, used, k + 1, out, first_only);
    used[j] = false;
    if (first_only && !out.empty()) return;
  }
}

}  // namespace detail

// All node bijections phi with a[i][k] == b[phi(i)][phi(k)].
inline std::vector<std::vector<int>> cartan_isos(const Mat& a, const Mat& b,
                                                 bool first_only = false) {
  std::vector<std::vector<int>> out;
  if (a.size() != b.size()) return out;
  std::vector<int> img(a.size());
  std::vector<bool> used(a.size(), false);
  detail::cartan_isos_rec(a, b, img, used, 0, out, first_only);
  return out;
}

// Validates a Cartan matrix of finite type and names its components.
// Returns nothing if the matrix is not a finite-type Cartan matrix.
// Letters are canonical: a rank-2 doubly-laced component is B2, never C2.
inline std::optional<std::vector<CartanComponent>> classify_cartan(const Mat& a) {
  size_t n = a.size();
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) return std::nullopt;
    if (a[i][i] != 2) return std::nullopt;
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0) return std::nullopt;
      if ((a[i][j] == 0) != (a[j][i] == 0)) return std::nullopt;
      Int p = a[i][j] * a[j][i];
      if (a[i][j] != 0 && (p < 1 || p > 3)) return std::nullopt;
    }
  }
  // components
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<size_t> stack{s};
    comp[s] = nc;
    while (!stack.empty()) {
      size_t v = stack.back();
      stack.pop_back();
      for (size_t j = 0; j < n; ++j)
        if (j != v && a[v][j] != 0 && comp[j] < 0) {
          comp[j] = nc;
          stack.push_back(j);
        }
    }
    ++nc;
  }
  std::vector<CartanComponent> comps(nc);
  for (size_t i = 0; i < n; ++i) comps[comp[i]].nodes.push_back((int)i);

  for (auto& c : comps) {
    size_t m = c.nodes.size();
    c.rank = (int)m;
    // local edge structure
    int edges = 0, doubles = 0, triples = 0;
    std::vector<int> deg(m, 0);
    for (size_t x = 0; x < m; ++x)
      for (size_t y = x + 1; y < m; ++y) {
        Int p = a[c.nodes[x]][c.nodes[y]] * a[c.nodes[y]][c.nodes[x]];
        if (!p) continue;
        ++edges;
        ++deg[x];
        ++deg[y];
        if (p == 2) ++doubles;
        if (p == 3) ++triples;
      }
    if (edges != (int)m - 1) return std::nullopt;  // finite type is a tree
    int maxdeg = 0, tri = 0;
    for (size_t x = 0; x < m; ++x) {
      maxdeg = std::max(maxdeg, deg[x]);
      if (deg[x] == 3) ++tri;
    }
    if (maxdeg > 3 || tri > 1) return std::nullopt;
    if (doubles + triples > 1) return std::nullopt;
    if ((doubles || triples) && tri) return std::nullopt;

    if (triples) {
      if (m != 2) return std::nullopt;
      c.letter = 'G';
    } else if (doubles) {
      // a path; find the double edge and its position
      if (m == 2) {
        c.letter = 'B';
        continue;
      }
      // path ends
      std::vector<int> ends;
      for (size_t x = 0; x < m; ++x)
        if (deg[x] == 1) ends.push_back((int)x);
      if (ends.size() != 2) return std::nullopt;
      // locate double edge; check whether an end node is on it
      int de_x = -1, de_y = -1;
      for (size_t x = 0; x < m; ++x)
        for (size_t y = x + 1; y < m; ++y) {
          Int p = a[c.nodes[x]][c.nodes[y]] * a[c.nodes[y]][c.nodes[x]];
          if (p == 2) {
            de_x = (int)x;
            de_y = (int)y;
          }
        }
      bool x_end = deg[de_x] == 1, y_end = deg[de_y] == 1;
      if (!x_end && !y_end) {
        // interior double edge: F4 or nothing
        if (m != 4) return std::nullopt;
        c.letter = 'F';
      } else {
        int e = x_end ? de_x : de_y;
        int nb = x_end ? de_y : de_x;
        // end node short => B, end node long => C
        Int toward_end = a[c.nodes[nb]][c.nodes[e]];
        c.letter = (toward_end == -2) ? 'B' : 'C';
      }
    } else {
      // simply laced
      if (!tri) {
        c.letter = 'A';
      } else {
        // arm lengths from the trivalent node
        int center = -1;
        for (size_t x = 0; x < m; ++x)
          if (deg[x] == 3) center = (int)x;
        std::vector<int> arms;
        for (size_t y = 0; y < m; ++y) {
          if ((int)y == center) continue;
          if (a[c.nodes[center]][c.nodes[y]] == 0) continue;
          // walk away from center
          int len = 1, prev = center, cur = (int)y;
          for (;;) {
            int nxt = -1;
            for (size_t z = 0; z < m; ++z)
              if ((int)z != prev && a[c.nodes[cur]][c.nodes[z]] != 0 && (int)z != cur)
                nxt = (int)z;
            if (nxt < 0) break;
            prev = cur;
            cur = nxt;
            ++len;
          }
          arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms.size() != 3) return std::nullopt;
        if (arms[0] == 1 && arms[1] == 1) c.letter = 'D';
        else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) c.letter = 'E';
        else return std::nullopt;
      }
    }
    // cross-check against the canonical matrix of the detected type
    Mat canon = canonical_cartan(c.letter, c.rank);
    if (canon.empty()) return std::nullopt;
    Mat sub(m, Vec(m));
    for (size_t x = 0; x < m; ++x)
      for (size_t y = 0; y < m; ++y) sub[x][y] = a[c.nodes[x]][c.nodes[y]];
    if (cartan_isos(canon, sub, true).empty()) return std::nullopt;
  }
  return comps;
}

inline Mat canonical_cartan(char letter, int rank) {
  auto chain = [](int n) {
    Mat a(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    for (int i = 0; i + 1 < n; ++i) a[i][i + 1] = a[i + 1][i] = -1;
    return a;
  };
  switch (letter) {
    case 'A':
      if (rank < 1) return {};
      return chain(rank);
    case 'B': {
      if (rank < 2) return {};
      Mat a = chain(rank);
      a[1][0] = -2;  // alpha_1 = e_1 short
      return a;
    }
    case 'C': {
      if (rank < 2) return {};
      Mat a = chain(rank);
      a[0][1] = -2;  // alpha_1 = 2e_1 long
      return a;
    }
    case 'D': {
      if (rank < 3) return {};
      Mat a(rank, Vec(rank, 0));
      for (int i = 0; i < rank; ++i) a[i][i] = 2;
      for (int i = 0; i + 2 < rank; ++i) a[i][i + 1] = a[i + 1][i] = -1;
      a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1;
      return a;
    }
    case 'E': {
      if (rank < 6 || rank > 8) return {};
      Mat a(rank, Vec(rank, 0));
      for (int i = 0; i < rank; ++i) a[i][i] = 2;
      auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
      link(0, 2);
      link(2, 3);
      link(3, 4);
      link(4, 5);
      if (rank >= 7) link(5, 6);
      if (rank >= 8) link(6, 7);
      link(1, 3);
      return a;
    }
    case 'F': {
      if (rank != 4) return {};
      Mat a = chain(4);
      a[1][2] = -2;  // alpha_1, alpha_2 long
      return a;
    }
    case 'G': {
      if (rank != 2) return {};
      Mat a = chain(2);
      a[1][0] = -3;  // alpha_1 short
      return a;
    }
  }
  return {};
}

// ---------------------------------------------------------------------

struct Subspace {
  Mat basis;   // rref-canonical primitive rows
  Bits roots;  // positive roots lying in the span
  int dim = 0;

  bool operator==(const Subspace& o) const { return basis == o.basis; }
};

struct RootSystem {
  int l = 0;  // rank
  std::vector<std::pair<char, int>> factors;
  std::string name;
  Mat cartan;
  Vec d;
  Mat form;

  std::vector<Root> pos;
  std::vector<int> height;
  std::unordered_map<Vec, int, VecHash> index;
  std::vector<int> simple_idx;
  // refl[i][j]: index of s_i(pos[j]); ~k encodes -pos[k]
  std::vector<std::vector<int>> refl;
  std::vector<std::vector<int>> sum;  // index of pos[i]+pos[j], or -1
  std::vector<Bits> below;            // below[j]: roots <= pos[j] in dominance
  Vec len2;
  std::vector<int> factor_of_node;
  std::vector<char> factor_letter;  // canonical letter per factor
  std::vector<int> factor_of_root;
  std::vector<bool> long_root;
  std::vector<int> highest_root;  // per factor, index into pos

  // alpha-string tables: strings[a] lists the strings through each root
  // as index sequences bottom to top; they partition the positive roots
  std::vector<std::vector<std::vector<int>>> strings;
  std::vector<std::vector<int>> string_id, string_pos;

  int n() const { return (int)pos.size(); }

  int index_of(const Root& r) const {
    auto it = index.find(r);
    return it == index.end() ? -1 : it->second;
  }
  bool is_positive_root(const Root& r) const { return index.count(r) != 0; }

  int height_of(int i) const { return height[i]; }

  // beta <= gamma coefficientwise
  bool dominance_leq(int b, int g) const { return below[g].get(b); }

  Int pair_len2(const Root& r) const {  // (r, r)
    Wide acc = 0;
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) acc += (Wide)r[i] * form[i][j] * r[j];
    return checked_narrow(acc);
  }
};

// ---------------------------------------------------------------------
// construction

namespace detail {

inline void finish_tables(RootSystem& R) {
  int l = R.l;
  // symmetrizer: propagate d ratios along edges, normalize per factor
  {
    std::vector<std::pair<Int, Int>> frac(l, {0, 1});  // num/den
    std::vector<int> comp(l, -1);
    int nc = 0;
    for (int s = 0; s < l; ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = nc;
      frac[s] = {1, 1};
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int j = 0; j < l; ++j) {
          if (j == v || R.cartan[v][j] == 0 || comp[j] >= 0) continue;
          comp[j] = nc;
          // d_j / d_v = a[j][v] / a[v][j]
          Int num = frac[v].first * R.cartan[j][v];
          Int den = frac[v].second * R.cartan[v][j];
          Int g = gcd_int(num, den);
          if (den < 0) g = -g;
          frac[j] = {num / g, den / g};
          stack.push_back(j);
        }
      }
      ++nc;
    }
    R.factor_of_node = comp;
    // clear denominators and normalize min=1 per factor
    R.d.assign(l, 0);
    for (int c = 0; c < nc; ++c) {
      Int lcm = 1;
      for (int i = 0; i < l; ++i)
        if (comp[i] == c) lcm = lcm / gcd_int(lcm, frac[i].second) * frac[i].second;
      Int mn = 0;
      for (int i = 0; i < l; ++i)
        if (comp[i] == c) {
          R.d[i] = frac[i].first * (lcm / frac[i].second);
          mn = mn == 0 ? R.d[i] : std::min(mn, R.d[i]);
        }
      for (int i = 0; i < l; ++i)
        if (comp[i] == c) R.d[i] /= mn;
    }
  }
  R.form.assign(l, Vec(l, 0));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) R.form[i][j] = R.cartan[i][j] * R.d[j];
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) assert(R.form[i][j] == R.form[j][i]);

  // positive roots by reflection closure
  std::vector<Root> roots;
  std::unordered_map<Vec, int, VecHash> seen;
  for (int i = 0; i < l; ++i) {
    Root e(l, 0);
    e[i] = 1;
    seen.emplace(e, (int)roots.size());
    roots.push_back(e);
  }
  for (size_t q = 0; q < roots.size(); ++q) {
    Root r = roots[q];
    for (int j = 0; j < l; ++j) {
      Int pair = 0;
      for (int i = 0; i < l; ++i) pair += r[i] * R.cartan[i][j];
      Root s = r;
      s[j] -= pair;
      bool pos = false, neg = false;
      for (Int x : s) {
        if (x > 0) pos = true;
        if (x < 0) neg = true;
      }
      if (neg || !pos) continue;
      if (seen.emplace(s, (int)roots.size()).second) roots.push_back(s);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    Int ha = 0, hb = 0;
    for (Int x : a) ha += x;
    for (Int x : b) hb += x;
    if (ha != hb) return ha < hb;
    return a > b;  // reverse lexicographic within a height level
  });
  R.pos = roots;
  int n = (int)roots.size();
  R.index.clear();
  for (int k = 0; k < n; ++k) R.index.emplace(roots[k], k);
  R.height.resize(n);
  for (int k = 0; k < n; ++k) {
    Int h = 0;
    for (Int x : roots[k]) h += x;
    R.height[k] = (int)h;
  }
  R.simple_idx.assign(l, -1);
  for (int i = 0; i < l; ++i) {
    Root e(l, 0);
    e[i] = 1;
    R.simple_idx[i] = R.index.at(e);
  }

  R.refl.assign(l, std::vector<int>(n, -1));
  for (int i = 0; i < l; ++i)
    for (int k = 0; k < n; ++k) {
      Int pair = 0;
      for (int t = 0; t < l; ++t) pair += R.pos[k][t] * R.cartan[t][i];
      Root s = R.pos[k];
      s[i] -= pair;
      if (k == R.simple_idx[i]) {
        R.refl[i][k] = ~k;
        continue;
      }
      auto it = R.index.find(s);
      assert(it != R.index.end());
      R.refl[i][k] = it->second;
    }

  R.sum.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Root s(l);
      for (int t = 0; t < l; ++t) s[t] = R.pos[i][t] + R.pos[j][t];
      auto it = R.index.find(s);
      if (it != R.index.end()) R.sum[i][j] = it->second;
    }

  R.below.assign(n, Bits(n));
  for (int g = 0; g < n; ++g)
    for (int b = 0; b < n; ++b) {
      bool leq = true;
      for (int t = 0; t < l && leq; ++t)
        if (R.pos[b][t] > R.pos[g][t]) leq = false;
      if (leq) R.below[g].set(b);
    }

  R.len2.resize(n);
  for (int k = 0; k < n; ++k) R.len2[k] = R.pair_len2(R.pos[k]);

  R.factor_of_root.resize(n);
  for (int k = 0; k < n; ++k) {
    int node = 0;
    while (R.pos[k][node] == 0) ++node;
    R.factor_of_root[k] = R.factor_of_node[node];
  }
  int nfac = 1 + *std::max_element(R.factor_of_node.begin(), R.factor_of_node.end());
  std::vector<Int> maxlen(nfac, 0);
  for (int k = 0; k < n; ++k)
    maxlen[R.factor_of_root[k]] = std::max(maxlen[R.factor_of_root[k]], R.len2[k]);
  R.long_root.resize(n);
  for (int k = 0; k < n; ++k) R.long_root[k] = R.len2[k] == maxlen[R.factor_of_root[k]];
  R.highest_root.assign(nfac, -1);
  for (int k = 0; k < n; ++k) {
    int f = R.factor_of_root[k];
    if (R.highest_root[f] < 0 || R.height[k] > R.height[R.highest_root[f]])
      R.highest_root[f] = k;
  }

  // canonical letters per factor
  auto cls = classify_cartan(R.cartan);
  assert(cls);
  R.factor_letter.assign(nfac, 0);
  for (const auto& c : *cls) R.factor_letter[R.factor_of_node[c.nodes[0]]] = c.letter;

  // alpha-string tables
  R.strings.assign(n, {});
  R.string_id.assign(n, std::vector<int>(n, -1));
  R.string_pos.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a) {
    for (int j = 0; j < n; ++j) {
      if (R.string_id[a][j] >= 0) continue;
      // walk to the bottom of the string through pos[j]
      Root b = R.pos[j];
      for (;;) {
        Root down(l);
        for (int t = 0; t < l; ++t) down[t] = b[t] - R.pos[a][t];
        if (!R.index.count(down)) break;
        b = down;
      }
      std::vector<int> str;
      Root cur = b;
      for (;;) {
        auto it = R.index.find(cur);
        if (it == R.index.end()) break;
        str.push_back(it->second);
        for (int t = 0; t < l; ++t) cur[t] += R.pos[a][t];
      }
      int sid = (int)R.strings[a].size();
      for (size_t p = 0; p < str.size(); ++p) {
        R.string_id[a][str[p]] = sid;
        R.string_pos[a][str[p]] = (int)p;
      }
      R.strings[a].push_back(std::move(str));
    }
  }
}

}  // namespace detail

// Builds the named system.  Factors appear in the given order; node
// indices are consecutive across factors.
inline RootSystemPtr build_system(const std::vector<std::pair<char, int>>& factors) {
  auto R = std::make_shared<RootSystem>();
  R->factors = factors;
  int l = 0;
  for (auto [letter, rank] : factors) l += rank;
  if (l == 0) throw std::invalid_argument("empty root system spec");
  R->l = l;
  R->cartan.assign(l, Vec(l, 0));
  int off = 0;
  std::string nm;
  for (auto [letter, rank] : factors) {
    Mat a = canonical_cartan(letter, rank);
    if (a.empty())
      throw std::invalid_argument(std::string("no finite type ") + letter +
                                  std::to_string(rank));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) R->cartan[off + i][off + j] = a[i][j];
    off += rank;
    if (!nm.empty()) nm += 'x';
    nm += letter;
    nm += std::to_string(rank);
  }
  R->name = nm;
  detail::finish_tables(*R);
  return R;
}

// Builds from an explicit Cartan matrix, keeping the given node order.
// Throws if the matrix is not of finite type.
inline RootSystemPtr build_from_cartan(const Mat& a, const std::string& name = "") {
  auto cls = classify_cartan(a);
  if (!cls) throw std::invalid_argument("matrix is not a finite-type Cartan matrix");
  auto R = std::make_shared<RootSystem>();
  R->l = (int)a.size();
  R->cartan = a;
  for (const auto& c : *cls) R->factors.emplace_back(c.letter, c.rank);
  R->name = name.empty() ? "cartan" : name;
  detail::finish_tables(*R);
  return R;
}

// "A3", "a2xC3" etc.  Throws std::invalid_argument on anything else.
inline RootSystemPtr parse_system(const std::string& spec) {
  std::vector<std::pair<char, int>> factors;
  size_t i = 0;
  while (i < spec.size()) {
    char letter = (char)std::toupper((unsigned char)spec[i]);
    if (letter < 'A' || letter > 'G' || letter == 'H')
      throw std::invalid_argument("bad type letter in '" + spec + "'");
    ++i;
    size_t j = i;
    while (j < spec.size() && std::isdigit((unsigned char)spec[j])) ++j;
    if (j == i) throw std::invalid_argument("missing rank in '" + spec + "'");
    int rank = std::stoi(spec.substr(i, j - i));
    factors.emplace_back(letter, rank);
    i = j;
    if (i < spec.size()) {
      if (spec[i] != 'x' && spec[i] != 'X')
        throw std::invalid_argument("expected 'x' between factors in '" + spec + "'");
      ++i;
      if (i == spec.size()) throw std::invalid_argument("trailing 'x' in '" + spec + "'");
    }
  }
  if (factors.empty()) throw std::invalid_argument("empty system spec");
  return build_system(factors);
}

// ---------------------------------------------------------------------
// alpha strings

// The alpha-string through beta inside R^+: the maximal chain
// bottom, bottom+alpha, ..., contained in R^+.  Indices bottom to top.
inline const std::vector<int>& alpha_string(const RootSystem& R, int alpha, int beta) {
  return R.strings[alpha][R.string_id[alpha][beta]];
}

// ---------------------------------------------------------------------
// duality

struct DualSystem {
  RootSystemPtr sys;
  std::vector<int> root_map;  // index in R -> index of coroot in sys
};

// The dual root system: same node set, transposed Cartan matrix.
// root_map sends beta to beta^vee = (d_i n_i / d_beta)_i.
inline DualSystem dual_system(const RootSystem& R) {
  Mat at(R.l, Vec(R.l));
  for (int i = 0; i < R.l; ++i)
    for (int j = 0; j < R.l; ++j) at[i][j] = R.cartan[j][i];
  std::string nm;
  for (auto [letter, rank] : R.factors) {
    char dl = letter == 'B' ? 'C' : letter == 'C' ? 'B' : letter;
    if (!nm.empty()) nm += 'x';
    nm += dl;
    nm += std::to_string(rank);
  }
  DualSystem out;
  out.sys = build_from_cartan(at, nm);
  out.root_map.resize(R.n());
  for (int k = 0; k < R.n(); ++k) {
    Int db = R.len2[k] / 2;
    assert(R.len2[k] % 2 == 0);
    Root co(R.l);
    for (int i = 0; i < R.l; ++i) {
      Int v = R.pos[k][i] * R.d[i];
      assert(v % db == 0);
      co[i] = v / db;
    }
    int idx = out.sys->index_of(co);
    assert(idx >= 0);
    out.root_map[k] = idx;
  }
  return out;
}

// ---------------------------------------------------------------------
// subspaces and restriction

inline Bits roots_in_span(const RootSystem& R, const Mat& basis) {
  Bits b(R.n());
  for (int k = 0; k < R.n(); ++k)
    if (in_span(basis, R.pos[k])) b.set(k);
  return b;
}

inline Subspace span_of_roots(const RootSystem& R, const std::vector<int>& gens) {
  Mat rows;
  for (int g : gens) rows.push_back(R.pos[g]);
  Subspace U;
  U.basis = rref_canonical(rows);
  U.dim = (int)U.basis.size();
  U.roots = roots_in_span(R, U.basis);
  return U;
}

// All subspaces of dimension k spanned by roots from the generator set.
// Grown level by level: every root-spanned d+1 subspace contains a
// root-spanned d subspace, so the BFS is complete.  Sorted by root mask.
inline std::vector<Subspace> root_spanned_subspaces(const RootSystem& R, int k,
                                                    const Bits* generators = nullptr) {
  std::vector<int> gens;
  if (generators)
    gens = generators->indices();
  else
    for (int i = 0; i < R.n(); ++i) gens.push_back(i);
  if (k < 1 || k > R.l) return {};
  std::map<Mat, Subspace> level;
  for (int g : gens) {
    Subspace U = span_of_roots(R, {g});
    level.emplace(U.basis, U);
  }
  for (int d = 1; d < k; ++d) {
    std::map<Mat, Subspace> next;
    for (const auto& [key, U] : level) {
      for (int g : gens) {
        if (U.roots.get(g)) continue;
        Mat rows = U.basis;
        rows.push_back(R.pos[g]);
        Mat nb = rref_canonical(rows);
        if ((int)nb.size() != d + 1) continue;
        if (next.count(nb)) continue;
        Subspace V;
        V.basis = nb;
        V.dim = d + 1;
        V.roots = roots_in_span(R, nb);
        next.emplace(std::move(nb), std::move(V));
      }
    }
    level = std::move(next);
  }
  std::vector<Subspace> out;
  for (auto& [key, U] : level) out.push_back(std::move(U));
  std::sort(out.begin(), out.end(),
            [](const Subspace& a, const Subspace& b) { return a.roots < b.roots; });
  return out;
}

struct Restriction {
  RootSystemPtr sys;            // canonical presentation of R cap U
  std::vector<int> to_ambient;  // sys root index -> ambient root index
  std::vector<int> from_ambient;
};

// R cap U is a root system in U; returns its canonical presentation and
// the index correspondence.  U must be given by its rref basis.
inline Restriction restrict_system(const RootSystem& R, const Subspace& U) {
  std::vector<int> members = U.roots.indices();
  int m = (int)members.size();
  Restriction out;
  out.from_ambient.assign(R.n(), -1);
  if (m == 0) {
    out.sys = nullptr;
    return out;
  }
  // simple system: members not a sum of two members
  std::vector<int> simples;
  std::vector<bool> decomposable(m, false);
  std::unordered_map<int, int> memberpos;
  for (int i = 0; i < m; ++i) memberpos[members[i]] = i;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int s = R.sum[members[i]][members[j]];
      if (s >= 0 && memberpos.count(s)) decomposable[memberpos[s]] = true;
    }
  for (int i = 0; i < m; ++i)
    if (!decomposable[i]) simples.push_back(members[i]);
  int r = (int)simples.size();
  // abstract Cartan matrix via the ambient form
  Mat sub(r, Vec(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Int num = 0;
      for (int s = 0; s < R.l; ++s)
        for (int t = 0; t < R.l; ++t)
          num += R.pos[simples[i]][s] * R.form[s][t] * R.pos[simples[j]][t];
      Int den = R.len2[simples[j]];
      assert((2 * num) % den == 0);
      sub[i][j] = 2 * num / den;
    }
  auto cls = classify_cartan(sub);
  if (!cls) throw std::runtime_error("restriction is not a root system (internal)");
  // canonical factor order: by (letter, rank), then by node content for ties
  std::vector<std::pair<char, int>> factors;
  {
    std::vector<const CartanComponent*> comps;
    for (const auto& c : *cls) comps.push_back(&c);
    std::sort(comps.begin(), comps.end(), [](auto* a, auto* b) {
      if (a->letter != b->letter) return a->letter < b->letter;
      if (a->rank != b->rank) return a->rank < b->rank;
      return a->nodes < b->nodes;
    });
    // build canonical matrix and locate an iso canonical -> sub
    Mat canon(r, Vec(r, 0));
    int off = 0;
    std::vector<int> canon_to_sub(r, -1);
    for (auto* c : comps) {
      Mat cc = canonical_cartan(c->letter, c->rank);
      Mat local(c->rank, Vec(c->rank));
      for (int x = 0; x < c->rank; ++x)
        for (int y = 0; y < c->rank; ++y) local[x][y] = sub[c->nodes[x]][c->nodes[y]];
      auto isos = cartan_isos(cc, local, true);
      assert(!isos.empty());
      for (int x = 0; x < c->rank; ++x) {
        canon_to_sub[off + x] = c->nodes[isos[0][x]];
        for (int y = 0; y < c->rank; ++y) canon[off + x][off + y] = cc[x][y];
      }
      factors.emplace_back(c->letter, c->rank);
      off += c->rank;
    }
    std::string nm;
    for (auto [letter, rank] : factors) {
      if (!nm.empty()) nm += 'x';
      nm += letter;
      nm += std::to_string(rank);
    }
    auto sys = std::make_shared<RootSystem>();
    sys->l = r;
    sys->cartan = canon;
    sys->factors = factors;
    sys->name = nm;
    detail::finish_tables(*sys);
    // map abstract roots to ambient roots
    out.sys = sys;
    out.to_ambient.assign(sys->n(), -1);
    for (int k = 0; k < sys->n(); ++k) {
      Root amb(R.l, 0);
      for (int i = 0; i < r; ++i) {
        int si = canon_to_sub[i];
        for (int t = 0; t < R.l; ++t) amb[t] += sys->pos[k][i] * R.pos[simples[si]][t];
      }
      int idx = R.index_of(amb);
      assert(idx >= 0 && U.roots.get(idx));
      out.to_ambient[k] = idx;
      out.from_ambient[idx] = k;
    }
    assert((int)sys->n() == m);
  }
  return out;
}

// Factor list of R cap U, canonically sorted.
inline std::vector<std::pair<char, int>> classify_restriction(const RootSystem& R,
                                                              const Subspace& U) {
  Restriction res = restrict_system(R, U);
  if (!res.sys) return {};
  return res.sys->factors;
}

inline std::string factors_name(const std::vector<std::pair<char, int>>& factors) {
  if (factors.empty()) return "0";
  std::string nm;
  for (auto [letter, rank] : factors) {
    if (!nm.empty()) nm += 'x';
    nm += letter;
    nm += std::to_string(rank);
  }
  return nm;
}

// ---------------------------------------------------------------------
// rendering

inline std::string render_root(const Root& r) {
  std::string s = "[";
  for (size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r[i]);
  }
  s += "]";
  return s;
}

}  // namespace rootfree
