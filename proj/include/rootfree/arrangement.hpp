#pragma once

#include <map>
#include <mutex>
#include <unordered_set>

#include "rootfree/bits.hpp"
#include "rootfree/intmath.hpp"
#include "rootfree/rootsys.hpp"

// Hyperplane arrangements cut out by root subsets, in the dual-basis
// coordinates where the hyperplane of a root is the kernel of its
// coefficient vector.  Freeness is certified by inductive freeness and
// refuted by a non-splitting Poincare polynomial; everything else is
// Ambiguous.  All arithmetic is exact.

namespace rootfree {

struct Arrangement {
  int ambient_dim = 0;
  std::vector<Vec> normals;  // primitive, first nonzero entry > 0, pairwise non-proportional

  int size() const { return (int)normals.size(); }
  bool operator==(const Arrangement& o) const {
    return ambient_dim == o.ambient_dim && normals == o.normals;
  }
};

struct Flat {
  Bits hyperplanes;  // closed index set
  int corank = 0;    // rank of the normals in the set
};

struct MultiRestriction {
  Vec base_normal;
  // key: canonical basis of the 2-dim span of {base, other}; value: multiplicity
  std::vector<std::pair<Mat, int>> entries;

  bool operator==(const MultiRestriction& o) const {
    return base_normal == o.base_normal && entries == o.entries;
  }
};

enum class Freeness { Free, NonFree, Ambiguous };

// Operations whose contract forbids guessing throw this when they meet
// an Ambiguous verdict; the CLI maps it to its own exit code.
struct AmbiguousVerdict : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string freeness_name(Freeness f) {
  switch (f) {
    case Freeness::Free: return "free";
    case Freeness::NonFree: return "nonfree";
    case Freeness::Ambiguous: return "ambiguous";
  }
  return "?";
}

struct FreenessVerdict {
  Freeness status = Freeness::Ambiguous;
  std::vector<int> coexponents;  // ascending, zero-padded to ambient_dim; empty unless Free
  IntPoly poincare;
};

inline Int dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Wide s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += (Wide)a[i] * b[i];
  return checked_narrow(s);
}

inline Arrangement from_subset(const RootSystem& R, const Bits& S) {
  Arrangement A;
  A.ambient_dim = R.l;
  for (int b : S.indices()) A.normals.push_back(R.pos[b]);
  return A;
}

inline Arrangement full_arrangement(const RootSystem& R) {
  return from_subset(R, ~Bits(R.n()));
}

// normalizes arbitrary input rows into valid Arrangement normals
inline Arrangement sanitize_arrangement(int ambient_dim, Mat rows) {
  Arrangement A;
  A.ambient_dim = ambient_dim;
  for (auto& r : rows) {
    if ((int)r.size() != ambient_dim) throw std::invalid_argument("normal has wrong length");
    if (is_zero(r)) throw std::invalid_argument("zero normal");
    make_primitive(r);
    if (std::find(A.normals.begin(), A.normals.end(), r) == A.normals.end())
      A.normals.push_back(std::move(r));
  }
  return A;
}

// ---------------------------------------------------------------------
// flats

inline Flat closure_flat(const Arrangement& A, const Bits& seed) {
  Mat rows;
  for (int j : seed.indices()) rows.push_back(A.normals[j]);
  Mat basis = rref_canonical(rows);
  Flat f;
  f.corank = (int)basis.size();
  f.hyperplanes = Bits(A.size());
  for (int k = 0; k < A.size(); ++k)
    if (in_span(basis, A.normals[k])) f.hyperplanes.set(k);
  return f;
}

// all flats, BFS by corank; closures of one-hyperplane extensions reach
// every flat because the intersection lattice is graded by corank
inline std::vector<Flat> flats(const Arrangement& A, int max_corank = -1) {
  std::vector<Flat> out;
  std::unordered_set<Bits, BitsHash> seen;
  std::vector<Flat> layer{closure_flat(A, Bits(A.size()))};
  seen.insert(layer[0].hyperplanes);
  int corank = 0;
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(),
              [](const Flat& a, const Flat& b) { return a.hyperplanes < b.hyperplanes; });
    for (auto& f : layer) out.push_back(f);
    if (max_corank >= 0 && corank >= max_corank) break;
    std::vector<Flat> next;
    for (const Flat& f : layer)
      for (int j = 0; j < A.size(); ++j) {
        if (f.hyperplanes.get(j)) continue;
        Bits s = f.hyperplanes;
        s.set(j);
        Flat g = closure_flat(A, s);
        assert(g.corank == corank + 1);
        if (seen.insert(g.hyperplanes).second) next.push_back(std::move(g));
      }
    layer = std::move(next);
    ++corank;
  }
  return out;
}

inline Arrangement localization(const Arrangement& A, const Flat& X) {
  Flat check = closure_flat(A, X.hyperplanes);
  if (!(check.hyperplanes == X.hyperplanes))
    throw std::invalid_argument("localization: index set is not a flat");
  Arrangement out;
  out.ambient_dim = A.ambient_dim;
  for (int j : X.hyperplanes.indices()) out.normals.push_back(A.normals[j]);
  return out;
}

// ---------------------------------------------------------------------
// deletion / restriction / Ziegler

inline Arrangement deletion(const Arrangement& A, int i) {
  assert(i >= 0 && i < A.size());
  Arrangement out;
  out.ambient_dim = A.ambient_dim;
  for (int j = 0; j < A.size(); ++j)
    if (j != i) out.normals.push_back(A.normals[j]);
  return out;
}

inline Arrangement restriction(const Arrangement& A, int i) {
  assert(i >= 0 && i < A.size());
  Mat B = hyperplane_kernel(A.normals[i]);
  Arrangement out;
  out.ambient_dim = (int)B.size();
  for (int j = 0; j < A.size(); ++j) {
    if (j == i) continue;
    Vec w(B.size());
    for (size_t k = 0; k < B.size(); ++k) w[k] = dot(B[k], A.normals[j]);
    if (is_zero(w)) continue;  // parallel hyperplane (impossible for distinct normals)
    make_primitive(w);
    if (std::find(out.normals.begin(), out.normals.end(), w) == out.normals.end())
      out.normals.push_back(std::move(w));
  }
  return out;
}

inline MultiRestriction ziegler_multirestriction(const Arrangement& A, int i) {
  assert(i >= 0 && i < A.size());
  MultiRestriction mr;
  mr.base_normal = A.normals[i];
  std::map<Mat, int> mult;
  for (int j = 0; j < A.size(); ++j) {
    if (j == i) continue;
    Mat key = rref_canonical({A.normals[i], A.normals[j]});
    assert(key.size() == 2);
    ++mult[key];
  }
  mr.entries.assign(mult.begin(), mult.end());
  return mr;
}

// ---------------------------------------------------------------------
// Poincare polynomial splitting

// p = prod (1 + m_i t) with m_i >= 1, if such a factorization exists.
// Any m with (1+mt) | p is a true factor (it contributes the root -1/m),
// so the divisor scan never backtracks.
inline std::optional<std::vector<int>> splits(const IntPoly& p) {
  if (p.is_zero() || p.coeff(0) != 1) return std::nullopt;
  std::vector<int> out;
  IntPoly q = p;
  while (q.degree() > 0) {
    Int lead = q.coeff(q.degree());
    if (lead <= 0) return std::nullopt;
    bool found = false;
    for (Int m = lead; m >= 1; --m) {
      if (lead % m != 0) continue;
      auto d = q.divide_exact(IntPoly(Vec{1, m}));
      if (d) {
        out.push_back((int)m);
        q = *d;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  if (!(q == IntPoly::one())) return std::nullopt;
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> pad_exponents(std::vector<int> e, int dim) {
  assert((int)e.size() <= dim);
  std::vector<int> out(dim - e.size(), 0);
  out.insert(out.end(), e.begin(), e.end());
  return out;
}

// slow independent oracle: Whitney sum over all subsets
inline IntPoly whitney_poincare(const Arrangement& A) {
  if (A.size() > 20) throw BudgetExceeded("whitney_poincare: arrangement too large");
  int n = A.size();
  Vec coeff(A.ambient_dim + 1, 0);
  for (std::uint64_t b = 0; b < (1ull << n); ++b) {
    Mat rows;
    for (int j = 0; j < n; ++j)
      if (b >> j & 1) rows.push_back(A.normals[j]);
    int r = int_rank(rows);
    int bits = __builtin_popcountll(b);
    coeff[r] += ((bits + r) % 2 == 0) ? 1 : -1;
  }
  return IntPoly(std::move(coeff));
}

// ---------------------------------------------------------------------
// FreenessEngine: memoized deletion-restriction over shared families.
//
// A family is a fixed list of canonical normals; every subarrangement
// is a bitmask over it.  Restriction at a pivot maps a family into a
// lower-dimensional family through a projection index map, so Q and
// inductive-freeness memos are shared across all subsets of all root
// systems that ever hit the same coordinates.

class FreenessEngine {
 public:
  static FreenessEngine& instance() {
    static FreenessEngine e;
    return e;
  }

  IntPoly poincare_subset(const RootSystem& R, const Bits& S) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    Entry& e = entry_for(R);
    return q_of(e.fam, translate(e, S));
  }

  FreenessVerdict verify_subset(const RootSystem& R, const Bits& S) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    Entry& e = entry_for(R);
    FreenessVerdict v = verify_mask(e.fam, translate(e, S));
    if (v.status == Freeness::Free) v.coexponents = pad_exponents(v.coexponents, R.l);
    return v;
  }

  IntPoly poincare(const Arrangement& A) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto [fam, mask] = family_of(A);
    return q_of(fam, mask);
  }

  std::optional<std::vector<int>> inductively_free(const Arrangement& A) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto [fam, mask] = family_of(A);
    FreenessVerdict v = verify_mask(fam, mask);
    if (v.status != Freeness::Free) return std::nullopt;
    return pad_exponents(v.coexponents, A.ambient_dim);
  }

  FreenessVerdict verify(const Arrangement& A) {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto [fam, mask] = family_of(A);
    FreenessVerdict v = verify_mask(fam, mask);
    if (v.status == Freeness::Free) v.coexponents = pad_exponents(v.coexponents, A.ambient_dim);
    return v;
  }

 private:
  struct Family;
  struct Child {
    Family* fam = nullptr;
    std::vector<int> proj;  // parent index -> child index (-1 for the pivot itself)
  };
  struct Family {
    int dim = 0;
    Mat normals;
    std::unordered_map<Vec, int, VecHash> index_of;
    std::vector<std::optional<Child>> children;
    std::unordered_map<std::uint64_t, Bits> span2;  // (i<<20|j) -> normals in span(n_i, n_j)
    std::unordered_map<Bits, IntPoly, BitsHash> qmemo;
    std::unordered_map<Bits, signed char, BitsHash> ifmemo;
  };
  struct Entry {
    Family* fam = nullptr;
    std::vector<int> remap;  // root index -> family index
  };

  std::recursive_mutex mu_;
  std::map<std::pair<int, Mat>, std::unique_ptr<Family>> families_;
  std::map<Mat, Entry> entries_;  // keyed by the root coefficient matrix, not the name

  // returns the family for these normals plus the index remap from the
  // caller's order into the family's stored order
  std::pair<Family*, std::vector<int>> family_for(int dim, const Mat& normals) {
    Mat key = normals;
    std::sort(key.begin(), key.end());
    auto it = families_.find({dim, key});
    if (it == families_.end()) {
      auto fam = std::make_unique<Family>();
      fam->dim = dim;
      fam->normals = normals;
      for (int i = 0; i < (int)normals.size(); ++i) fam->index_of.emplace(normals[i], i);
      assert(fam->index_of.size() == normals.size());
      fam->children.resize(normals.size());
      it = families_.emplace(std::make_pair(dim, std::move(key)), std::move(fam)).first;
    }
    Family* f = it->second.get();
    std::vector<int> remap(normals.size());
    for (size_t i = 0; i < normals.size(); ++i) remap[i] = f->index_of.at(normals[i]);
    return {f, std::move(remap)};
  }

  Entry& entry_for(const RootSystem& R) {
    auto it = entries_.find(R.pos);
    if (it == entries_.end()) {
      auto [fam, remap] = family_for(R.l, R.pos);
      it = entries_.emplace(R.pos, Entry{fam, std::move(remap)}).first;
    }
    return it->second;
  }

  static Bits translate(const Entry& e, const Bits& S) {
    Bits out((int)e.fam->normals.size());
    for (int b : S.indices()) out.set(e.remap[b]);
    return out;
  }

  std::pair<Family*, Bits> family_of(const Arrangement& A) {
    Arrangement C = sanitize_arrangement(A.ambient_dim, A.normals);
    auto [fam, remap] = family_for(C.ambient_dim, C.normals);
    Bits mask((int)fam->normals.size());
    for (int i : remap) mask.set(i);
    return {fam, mask};
  }

  Child& child_of(Family* F, int p) {
    if (!F->children[p]) {
      Mat B = hyperplane_kernel(F->normals[p]);
      Mat cn;
      std::unordered_map<Vec, int, VecHash> at;
      std::vector<int> proj(F->normals.size(), -1);
      for (int j = 0; j < (int)F->normals.size(); ++j) {
        if (j == p) continue;
        Vec w(B.size());
        for (size_t k = 0; k < B.size(); ++k) w[k] = dot(B[k], F->normals[j]);
        if (is_zero(w)) continue;
        make_primitive(w);
        auto it = at.find(w);
        if (it == at.end()) {
          it = at.emplace(w, (int)cn.size()).first;
          cn.push_back(w);
        }
        proj[j] = it->second;
      }
      auto [cf, remap] = family_for(F->dim - 1, cn);
      for (auto& x : proj)
        if (x >= 0) x = remap[x];
      F->children[p] = Child{cf, std::move(proj)};
    }
    return *F->children[p];
  }

  const Bits& span2_of(Family* F, int i, int j) {
    std::uint64_t key = ((std::uint64_t)i << 20) | (std::uint64_t)j;
    auto it = F->span2.find(key);
    if (it == F->span2.end()) {
      Mat basis = rref_canonical({F->normals[i], F->normals[j]});
      Bits m((int)F->normals.size());
      for (int k = 0; k < (int)F->normals.size(); ++k)
        if (in_span(basis, F->normals[k])) m.set(k);
      it = F->span2.emplace(key, std::move(m)).first;
    }
    return it->second;
  }

  // true if the normals of mask span rank <= 2 (then the arrangement is
  // free and inductively free with exponents 1, count-1)
  bool rank_le2(Family* F, const Bits& mask, int count) {
    if (count <= 2) return true;
    int a = mask.lowest();
    int b = mask.next_set(a + 1);
    return mask.subset_of(span2_of(F, a, b));
  }

  IntPoly q_of(Family* F, const Bits& mask) {
    int c = mask.count();
    if (c == 0) return IntPoly::one();
    if (c == 1) return IntPoly(Vec{1, 1});
    if (rank_le2(F, mask, c)) return IntPoly(Vec{1, c, c - 1});
    auto it = F->qmemo.find(mask);
    if (it != F->qmemo.end()) return it->second;
    int p = mask.lowest();
    Bits del = mask;
    del.reset(p);
    Child& ch = child_of(F, p);
    Bits cmask((int)ch.fam->normals.size());
    for (int j : del.indices()) {
      assert(ch.proj[j] >= 0);
      cmask.set(ch.proj[j]);
    }
    IntPoly q = q_of(F, del) + q_of(ch.fam, cmask).shift();
    F->qmemo.emplace(mask, q);
    return q;
  }

  // multiset difference when b = a minus exactly one element; that
  // element otherwise nullopt.  a, b sorted ascending.
  static std::optional<int> single_diff(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size() + 1) return std::nullopt;
    size_t i = 0, j = 0;
    std::optional<int> miss;
    while (i < a.size()) {
      if (j < b.size() && a[i] == b[j]) {
        ++i;
        ++j;
      } else {
        if (miss) return std::nullopt;
        miss = a[i];
        ++i;
      }
    }
    return miss;
  }

  bool if_of(Family* F, const Bits& mask) {
    int c = mask.count();
    if (c <= 1) return true;
    if (rank_le2(F, mask, c)) return true;
    auto it = F->ifmemo.find(mask);
    if (it != F->ifmemo.end()) return it->second != 0;
    bool result = false;
    auto exps = splits(q_of(F, mask));  // Terao: inductively free => Q splits
    if (exps) {
      for (int h : mask.indices()) {
        Bits del = mask;
        del.reset(h);
        Child& ch = child_of(F, h);
        Bits cmask((int)ch.fam->normals.size());
        for (int j : del.indices()) cmask.set(ch.proj[j]);
        auto eR = splits(q_of(ch.fam, cmask));
        if (!eR) continue;
        auto m = single_diff(*exps, *eR);
        if (!m || *m < 1) continue;
        // deletion must carry the same exponents with m decremented
        std::vector<int> eD = *eR;
        if (*m > 1) {
          eD.push_back(*m - 1);
          std::sort(eD.begin(), eD.end());
        }
        auto dD = splits(q_of(F, del));
        if (!dD || !(*dD == eD)) continue;
        if (if_of(ch.fam, cmask) && if_of(F, del)) {
          result = true;
          break;
        }
      }
    }
    F->ifmemo.emplace(mask, result ? 1 : 0);
    return result;
  }

  FreenessVerdict verify_mask(Family* F, const Bits& mask) {
    FreenessVerdict v;
    v.poincare = q_of(F, mask);
    auto sp = splits(v.poincare);
    if (!sp) {
      v.status = Freeness::NonFree;
      return v;
    }
    if (if_of(F, mask)) {
      v.status = Freeness::Free;
      v.coexponents = *sp;
    } else {
      v.status = Freeness::Ambiguous;
    }
    return v;
  }
};

// ---------------------------------------------------------------------
// public wrappers

inline IntPoly poincare_polynomial(const Arrangement& A) {
  return FreenessEngine::instance().poincare(A);
}

inline std::optional<std::vector<int>> inductively_free(const Arrangement& A) {
  return FreenessEngine::instance().inductively_free(A);
}

inline FreenessVerdict verify_freeness(const Arrangement& A) {
  return FreenessEngine::instance().verify(A);
}

inline IntPoly poincare_subset(const RootSystem& R, const Bits& S) {
  return FreenessEngine::instance().poincare_subset(R, S);
}

inline FreenessVerdict verify_subset(const RootSystem& R, const Bits& S) {
  return FreenessEngine::instance().verify_subset(R, S);
}

}  // namespace rootfree
