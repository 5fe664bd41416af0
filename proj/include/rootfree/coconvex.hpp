#pragma once

#include "rootfree/rootsys.hpp"

// Convexity predicates and exhaustive enumeration of convex, coconvex
// and biconvex subsets of R^+.  A subset is convex when it is closed
// under root addition inside R^+, coconvex when its complement is
// convex, biconvex when both hold.  Biconvex sets are exactly the
// inversion sets of Weyl group elements; the enumeration here does not
// use that fact, so the count #biconvex = |W| stays an honest test.

namespace rootfree {

inline bool is_convex(const RootSystem& R, const Bits& S) {
  std::vector<int> mem = S.indices();
  for (size_t x = 0; x < mem.size(); ++x)
    for (size_t y = x; y < mem.size(); ++y) {
      int s = R.sum[mem[x]][mem[y]];
      if (s >= 0 && !S.get(s)) return false;
    }
  return true;
}

inline bool is_coconvex(const RootSystem& R, const Bits& S) { return is_convex(R, ~S); }

inline bool is_biconvex(const RootSystem& R, const Bits& S) {
  return is_convex(R, S) && is_coconvex(R, S);
}

inline bool is_lower_ideal(const RootSystem& R, const Bits& S) {
  for (int g : S.indices())
    if (!R.below[g].subset_of(S)) return false;
  return true;
}

// Exp(S) for a lower order ideal S: h_i = #{beta in S : ht(beta) = i},
// h_0 = rank; the value i enters with multiplicity h_i - h_{i+1}.
// Result sorted ascending, size = rank (zeros included).
inline std::vector<int> exp_multiset(const RootSystem& R, const Bits& S) {
  if (!is_lower_ideal(R, S)) throw std::invalid_argument("Exp requires a lower order ideal");
  int maxh = 0;
  for (int i = 0; i < R.n(); ++i) maxh = std::max(maxh, R.height[i]);
  std::vector<int> h(maxh + 2, 0);
  h[0] = R.l;
  for (int g : S.indices()) ++h[R.height[g]];
  std::vector<int> out;
  for (int i = 0; i <= maxh; ++i) {
    int mult = h[i] - h[i + 1];
    assert(mult >= 0);
    for (int k = 0; k < mult; ++k) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  assert((int)out.size() == R.l);
  return out;
}

// ---------------------------------------------------------------------
// enumeration

constexpr int kEnumBudget = 30;  // max |R^+| for exhaustive subset search

namespace detail {

// Backtracking over roots in decreasing height (= decreasing index).
// When root k enters, every sum k+j with j already decided has already
// been decided too (heights add), so closure is checked incrementally.
// pair_checks[k] lists (j, s) with pos[k]+pos[j] = pos[s], j > k.
inline void enumerate_convex_masks(const RootSystem& R, std::vector<std::uint64_t>& out) {
  int n = R.n();
  std::vector<std::vector<std::pair<int, int>>> pair_checks(n);
  for (int k = 0; k < n; ++k)
    for (int j = k + 1; j < n; ++j) {
      int s = R.sum[k][j];
      if (s >= 0) pair_checks[k].emplace_back(j, s);
    }
  // iterative DFS: decide roots n-1 .. 0
  struct Node {
    int k;
    std::uint64_t mask;
    bool tried_include;
  };
  std::vector<Node> stack{{n - 1, 0, false}};
  while (!stack.empty()) {
    Node nd = stack.back();
    stack.pop_back();
    if (nd.k < 0) {
      out.push_back(nd.mask);
      continue;
    }
    if (!nd.tried_include) {
      // revisit this node for the exclude branch, try include first:
      // include is pushed second so exclude is explored first; ordering
      // of out is fixed by a final sort either way
      stack.push_back({nd.k, nd.mask, true});
      bool ok = true;
      for (auto [j, s] : pair_checks[nd.k])
        if ((nd.mask >> j) & 1 && !((nd.mask >> s) & 1)) {
          ok = false;
          break;
        }
      if (ok) stack.push_back({nd.k - 1, nd.mask | (1ull << nd.k), false});
    } else {
      stack.push_back({nd.k - 1, nd.mask, false});
    }
  }
  std::sort(out.begin(), out.end());
}

}  // namespace detail

inline std::vector<Bits> enumerate_convex(const RootSystem& R, int budget = kEnumBudget) {
  if (R.n() > budget)
    throw BudgetExceeded("subset enumeration over " + std::to_string(R.n()) +
                         " positive roots exceeds budget " + std::to_string(budget));
  std::vector<std::uint64_t> masks;
  detail::enumerate_convex_masks(R, masks);
  std::vector<Bits> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(Bits::from_mask(R.n(), m));
  return out;
}

inline std::vector<Bits> enumerate_coconvex(const RootSystem& R, int budget = kEnumBudget) {
  if (R.n() > budget)
    throw BudgetExceeded("subset enumeration over " + std::to_string(R.n()) +
                         " positive roots exceeds budget " + std::to_string(budget));
  std::vector<std::uint64_t> masks;
  detail::enumerate_convex_masks(R, masks);
  std::uint64_t full = R.n() == 64 ? ~0ull : (1ull << R.n()) - 1;
  for (auto& m : masks) m = full & ~m;
  std::sort(masks.begin(), masks.end());
  std::vector<Bits> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(Bits::from_mask(R.n(), m));
  return out;
}

inline std::vector<Bits> enumerate_biconvex(const RootSystem& R, int budget = kEnumBudget) {
  std::vector<Bits> out;
  for (const Bits& S : enumerate_coconvex(R, budget))
    if (is_convex(R, S)) out.push_back(S);
  return out;
}

// S_U in the restricted system's own indexing.
inline Bits intersect_with_subspace(const Bits& S, const Subspace& U, const Restriction& res) {
  assert(res.sys);
  Bits out(res.sys->n());
  for (int k = 0; k < res.sys->n(); ++k)
    if (S.get(res.to_ambient[k])) out.set(k);
  (void)U;
  return out;
}

}  // namespace rootfree
