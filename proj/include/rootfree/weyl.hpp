#pragma once

#include <sstream>

#include "rootfree/coconvex.hpp"
#include "rootfree/rootsys.hpp"

// Weyl group elements as words in the simple reflections.  Element
// identity is always decided through inversion sets: I(w) determines w,
// is cheap to compute, and orders deterministically.  Letters are
// 0-based in memory; parsing and rendering use the 1-based external
// form ("2 1 3 2" or "s2 s1 s3 s2").

namespace rootfree {

struct WeylWord {
  std::vector<int> letters;  // 0-based simple-root indices

  int length_upper_bound() const { return (int)letters.size(); }
  bool operator==(const WeylWord& o) const { return letters == o.letters; }
};

// signed root: (index into pos, sign)
struct SignedRoot {
  int idx;
  bool neg;
};

inline SignedRoot apply_simple(const RootSystem& R, int i, SignedRoot r) {
  int t = R.refl[i][r.idx];
  if (t < 0) return {~t, !r.neg};
  return {t, r.neg};
}

// w acts with the rightmost letter first: w(x) = s_{l1}(s_{l2}(...(x))).
inline SignedRoot act(const RootSystem& R, const WeylWord& w, SignedRoot r) {
  for (size_t k = w.letters.size(); k-- > 0;) r = apply_simple(R, w.letters[k], r);
  return r;
}

inline Root act_on_root(const RootSystem& R, const WeylWord& w, const Root& r) {
  int idx = R.index_of(r);
  bool neg = false;
  if (idx < 0) {
    Root m(r.size());
    for (size_t i = 0; i < r.size(); ++i) m[i] = -r[i];
    idx = R.index_of(m);
    neg = true;
    if (idx < 0) throw std::invalid_argument("not a root: " + render_root(r));
  }
  SignedRoot out = act(R, w, {idx, neg});
  Root v = R.pos[out.idx];
  if (out.neg)
    for (auto& x : v) x = -x;
  return v;
}

// I(w) = { beta > 0 : w^{-1} beta < 0 }
inline Bits inversion_set(const RootSystem& R, const WeylWord& w) {
  Bits out(R.n());
  for (int b = 0; b < R.n(); ++b) {
    SignedRoot r{b, false};
    // w^{-1} = reversed word
    for (size_t k = 0; k < w.letters.size(); ++k) r = apply_simple(R, w.letters[k], r);
    if (r.neg) out.set(b);
  }
  return out;
}

// Greedy extraction: while S nonempty, take the smallest simple root
// alpha_i in S, emit i, and replace S by s_i(S \ {alpha_i}).  Succeeds
// exactly on biconvex sets; the emitted word is reduced.
inline std::optional<WeylWord> word_from_inversion_set(const RootSystem& R, Bits S) {
  const Bits orig = S;
  WeylWord w;
  int guard = S.count();
  while (S.any()) {
    int found = -1;
    for (int i = 0; i < R.l; ++i)
      if (S.get(R.simple_idx[i])) {
        found = i;
        break;
      }
    if (found < 0) return std::nullopt;  // no simple root: not biconvex
    w.letters.push_back(found);
    S.reset(R.simple_idx[found]);
    Bits next(R.n());
    for (int b : S.indices()) {
      int t = R.refl[found][b];
      assert(t >= 0);
      next.set(t);
    }
    S = next;
    if ((int)w.letters.size() > guard) return std::nullopt;
  }
  if (!(inversion_set(R, w) == orig)) return std::nullopt;  // not an inversion set
  return w;
}

inline std::uint64_t weyl_order(char letter, int rank) {
  auto fact = [](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (letter) {
    case 'A': return fact(rank + 1);
    case 'B':
    case 'C': return fact(rank) << rank;
    case 'D': return fact(rank) << (rank - 1);
    case 'E': return rank == 6 ? 51840ull : rank == 7 ? 2903040ull : 696729600ull;
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 0;
}

inline std::uint64_t weyl_order(const RootSystem& R) {
  std::uint64_t n = 1;
  for (auto [letter, rank] : R.factors) n *= weyl_order(letter, rank);
  return n;
}

// The whole group, elements keyed by inversion set.  Order: by
// (length, inversion mask numeric), deterministic.
struct WeylGroup {
  const RootSystem* R = nullptr;
  std::vector<Bits> inv;       // per element
  std::vector<int> len;
  std::vector<WeylWord> word;  // canonical word (greedy extraction)
  std::unordered_map<Bits, int, BitsHash> id_of;
  std::vector<std::vector<int>> left;  // left[i][e] = id of s_i * e

  int size() const { return (int)inv.size(); }
  int identity() const { return 0; }
  int longest() const { return size() - 1; }

  int id_of_word(const WeylWord& w) const {
    auto it = id_of.find(inversion_set(*R, w));
    assert(it != id_of.end());
    return it->second;
  }
};

constexpr std::uint64_t kWeylBudget = 1000000;

inline WeylGroup enumerate_weyl(const RootSystem& R, std::uint64_t budget = kWeylBudget) {
  std::uint64_t order = weyl_order(R);
  if (order > budget)
    throw BudgetExceeded("Weyl group of " + R.name + " has " + std::to_string(order) +
                         " elements, budget " + std::to_string(budget));
  WeylGroup G;
  G.R = &R;
  // left multiplication on inversion masks:
  // alpha_i in I(w):  I(s_i w) = s_i(I(w) \ {alpha_i})
  // alpha_i not in I(w): I(s_i w) = s_i(I(w)) u {alpha_i}
  auto lmul = [&](int i, const Bits& m) {
    Bits src = m;
    bool had = src.get(R.simple_idx[i]);
    if (had) src.reset(R.simple_idx[i]);
    Bits out(R.n());
    for (int b : src.indices()) {
      int t = R.refl[i][b];
      assert(t >= 0);
      out.set(t);
    }
    if (!had) out.set(R.simple_idx[i]);
    return out;
  };

  std::vector<Bits> layer{Bits(R.n())};
  std::unordered_map<Bits, int, BitsHash> seen;
  seen.emplace(layer[0], 0);
  int length = 0;
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end());
    for (const Bits& m : layer) {
      G.id_of[m] = (int)G.inv.size();
      G.inv.push_back(m);
      G.len.push_back(length);
    }
    std::vector<Bits> next;
    for (const Bits& m : layer)
      for (int i = 0; i < R.l; ++i) {
        if (m.get(R.simple_idx[i])) continue;  // descent: shorter, skip
        Bits t = lmul(i, m);
        if (seen.emplace(t, 0).second) next.push_back(t);
      }
    layer = std::move(next);
    ++length;
  }
  assert((std::uint64_t)G.inv.size() == order);
  G.word.resize(G.size());
  for (int e = 0; e < G.size(); ++e) {
    auto w = word_from_inversion_set(R, G.inv[e]);
    assert(w);
    G.word[e] = *w;
  }
  G.left.assign(R.l, std::vector<int>(G.size()));
  for (int e = 0; e < G.size(); ++e)
    for (int i = 0; i < R.l; ++i) G.left[i][e] = G.id_of.at(lmul(i, G.inv[e]));
  return G;
}

// Bruhat order by the lifting property: for a left descent s of w,
// x <= w  iff  min(x, sx) <= sw.
inline bool bruhat_leq_ids(const WeylGroup& G, int x, int w) {
  for (;;) {
    if (x == w) return true;
    if (G.len[x] >= G.len[w]) return false;
    int s = G.word[w].letters.front();  // left descent of w
    int sw = G.left[s][w];
    int sx = G.left[s][x];
    if (G.len[sx] < G.len[x]) x = sx;
    w = sw;
  }
}

inline bool bruhat_leq(const WeylGroup& G, const WeylWord& x, const WeylWord& w) {
  return bruhat_leq_ids(G, G.id_of_word(x), G.id_of_word(w));
}

// P_w(q) = sum over x <= w of q^{l(x)}
inline IntPoly interval_poincare_id(const WeylGroup& G, int w) {
  Vec coeff(G.len[w] + 1, 0);
  for (int x = 0; x < G.size(); ++x)
    if (G.len[x] <= G.len[w] && bruhat_leq_ids(G, x, w)) ++coeff[G.len[x]];
  return IntPoly(std::move(coeff));
}

inline IntPoly interval_poincare(const WeylGroup& G, const WeylWord& w) {
  return interval_poincare_id(G, G.id_of_word(w));
}

// Factorization of p as a product of q-integers [k]_q, largest factor
// first.  If p = prod [k_i]_q then the multiset {k_i} is unique
// (cyclotomic support), and the largest member is the largest k with
// [k]_q | p, so the scan below never needs to backtrack.
inline std::optional<std::vector<int>> q_integer_factor(IntPoly p) {
  std::vector<int> ks;
  if (p.is_zero()) return std::nullopt;
  while (p.degree() > 0) {
    bool found = false;
    for (int k = p.degree() + 1; k >= 2; --k) {
      auto q = p.divide_exact(q_integer(k));
      if (q) {
        ks.push_back(k);
        p = *q;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  if (!(p == IntPoly::one())) return std::nullopt;
  std::sort(ks.begin(), ks.end());
  return ks;
}

// Exponents of w: the positive multiset {m_i} when P_w = prod [m_i+1]_q.
inline std::optional<std::vector<int>> exponents_of_id(const WeylGroup& G, int w) {
  auto ks = q_integer_factor(interval_poincare_id(G, w));
  if (!ks) return std::nullopt;
  if ((int)ks->size() > G.R->l) return std::nullopt;
  for (auto& k : *ks) k -= 1;
  return ks;
}

inline std::optional<std::vector<int>> exponents_of(const WeylGroup& G, const WeylWord& w) {
  return exponents_of_id(G, G.id_of_word(w));
}

// ---------------------------------------------------------------------
// parsing and rendering ("2 1 3 2", "s2 s1 s3 s2")

inline std::string render_word(const WeylWord& w) {
  if (w.letters.empty()) return "e";
  std::string s;
  for (size_t k = 0; k < w.letters.size(); ++k) {
    if (k) s += " ";
    s += std::to_string(w.letters[k] + 1);
  }
  return s;
}

inline std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

inline WeylWord parse_word(const RootSystem& R, const std::vector<std::string>& tokens) {
  WeylWord w;
  for (const auto& tk : tokens) {
    std::string t = tk;
    if (!t.empty() && (t[0] == 's' || t[0] == 'S')) t = t.substr(1);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad word letter '" + tk + "'");
    int v = std::stoi(t);
    if (v < 1 || v > R.l)
      throw std::invalid_argument("letter " + std::to_string(v) + " out of range 1.." +
                                  std::to_string(R.l));
    w.letters.push_back(v - 1);
  }
  return w;
}

}  // namespace rootfree
