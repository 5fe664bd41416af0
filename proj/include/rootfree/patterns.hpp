#pragma once

#include <map>
#include <tuple>

#include "rootfree/peterson.hpp"

// Pattern containment between root subsets, the minimal non-free
// pattern search, and the localization-based verification drivers.

namespace rootfree {

struct Pattern {
  RootSystemPtr system;
  Bits subset;
  std::string class_tag;  // "coconvex" or "biconvex"
};

// Positive-root index bijections R1 -> R2 induced by Cartan-preserving
// simple-root bijections (includes diagram automorphisms when R1 = R2).
inline std::vector<std::vector<int>> iso_maps(const RootSystem& R1, const RootSystem& R2) {
  std::vector<std::vector<int>> out;
  if (R1.l != R2.l || R1.n() != R2.n()) return out;
  for (const auto& sigma : cartan_isos(R1.cartan, R2.cartan, false)) {
    std::vector<int> map(R1.n(), -1);
    bool ok = true;
    for (int k = 0; k < R1.n() && ok; ++k) {
      Root img(R2.l, 0);
      for (int i = 0; i < R1.l; ++i) img[sigma[i]] = R1.pos[k][i];
      int idx = R2.index_of(img);
      if (idx < 0)
        ok = false;
      else
        map[k] = idx;
    }
    if (ok) out.push_back(std::move(map));
  }
  return out;
}

inline int subset_rank(const RootSystem& R, const Bits& S) {
  Mat rows;
  for (int b : S.indices()) rows.push_back(R.pos[b]);
  return int_rank(rows);
}

// Shared per-system caches: root-spanned subspaces by dimension, their
// restrictions, and the iso maps used for pattern matching.
struct PatternContext {
  const RootSystem* R;
  std::map<int, std::vector<Subspace>> spaces;
  std::map<int, std::vector<Restriction>> res;
  std::map<std::tuple<int, int, std::string>, std::vector<std::vector<int>>> isos;

  explicit PatternContext(const RootSystem& sys) : R(&sys) {}

  void ensure(int d) {
    if (spaces.count(d)) return;
    auto& sp = spaces[d];
    auto& rs = res[d];
    sp = d <= R->l ? root_spanned_subspaces(*R, d) : std::vector<Subspace>{};
    rs.reserve(sp.size());
    for (const Subspace& U : sp) rs.push_back(restrict_system(*R, U));
  }

  const std::vector<std::vector<int>>& isos_for(int d, int u, const RootSystem& target) {
    auto key = std::make_tuple(d, u, target.name);
    auto it = isos.find(key);
    if (it == isos.end()) it = isos.emplace(key, iso_maps(*res[d][u].sys, target)).first;
    return it->second;
  }
};

// Witness subspace U with R|U isomorphic to the pattern's system and
// S cap U mapped onto the pattern's subset by some isomorphism.
inline std::optional<Subspace> contains_pattern(const RootSystem& R, PatternContext& ctx,
                                                const Bits& S, const Pattern& p) {
  int d = p.system->l;
  if (d > R.l || d < 1) return std::nullopt;
  ctx.ensure(d);
  const auto& sp = ctx.spaces[d];
  for (int u = 0; u < (int)sp.size(); ++u) {
    const Restriction& res = ctx.res[d][u];
    if (!res.sys || res.sys->factors != p.system->factors) continue;
    const auto& maps = ctx.isos_for(d, u, *p.system);
    if (maps.empty()) continue;
    Bits SU = intersect_with_subspace(S, sp[u], res);
    if (SU.count() != p.subset.count()) continue;
    for (const auto& m : maps) {
      Bits img(p.system->n());
      for (int k : SU.indices()) img.set(m[k]);
      if (img == p.subset) return sp[u];
    }
  }
  return std::nullopt;
}

inline std::optional<Subspace> contains_pattern(const RootSystem& R, const Bits& S,
                                                const Pattern& p) {
  PatternContext ctx(R);
  return contains_pattern(R, ctx, S, p);
}

// ---------------------------------------------------------------------
// the minimal-pattern procedure

enum class SubsetStatus { FREE, NOT_MINIMAL, MINIMAL_PATTERN, AMBIGUOUS };

inline std::string status_name(SubsetStatus s) {
  switch (s) {
    case SubsetStatus::FREE: return "FREE";
    case SubsetStatus::NOT_MINIMAL: return "NOT_MINIMAL";
    case SubsetStatus::MINIMAL_PATTERN: return "MINIMAL_PATTERN";
    case SubsetStatus::AMBIGUOUS: return "AMBIGUOUS";
  }
  return "?";
}

// Decision order: free wins; then any verifiably non-free proper
// restriction of dimension 3 <= d < rank makes the subset non-minimal
// (unverifiable restriction: ambiguous); then non-free means minimal.
inline SubsetStatus classify_subset(const RootSystem& R, PatternContext& ctx, const Bits& S) {
  FreenessVerdict v = FreenessEngine::instance().verify_subset(R, S);
  if (v.status == Freeness::Free) return SubsetStatus::FREE;
  int r = subset_rank(R, S);
  for (int d = 3; d < r; ++d) {
    ctx.ensure(d);
    const auto& sp = ctx.spaces[d];
    for (int u = 0; u < (int)sp.size(); ++u) {
      const Restriction& res = ctx.res[d][u];
      if (!res.sys) continue;
      Bits SU = intersect_with_subspace(S, sp[u], res);
      if (SU.count() <= 2) continue;  // rank <= 2, always free
      FreenessVerdict vU = FreenessEngine::instance().verify_subset(*res.sys, SU);
      if (vU.status == Freeness::NonFree) return SubsetStatus::NOT_MINIMAL;
      if (vU.status == Freeness::Ambiguous) return SubsetStatus::AMBIGUOUS;
    }
  }
  if (v.status == Freeness::NonFree) return SubsetStatus::MINIMAL_PATTERN;
  return SubsetStatus::AMBIGUOUS;
}

inline SubsetStatus classify_subset(const RootSystem& R, const Bits& S) {
  PatternContext ctx(R);
  return classify_subset(R, ctx, S);
}

struct SearchReport {
  RootSystemPtr sys;
  std::string class_tag;
  std::uint64_t n_free = 0, n_not_minimal = 0, n_minimal = 0, n_ambiguous = 0;
  // minimal statuses split by whether the subset spans the ambient
  // space; only spanning subsets define patterns of this system's type
  std::uint64_t n_minimal_embedded = 0;
  std::vector<Bits> minimal_patterns;  // spanning, ascending mask order

  std::vector<Pattern> patterns() const {
    std::vector<Pattern> out;
    out.reserve(minimal_patterns.size());
    for (const Bits& S : minimal_patterns) out.push_back({sys, S, class_tag});
    return out;
  }
};

inline SearchReport find_minimal_patterns(const RootSystemPtr& Rp, const std::string& class_tag,
                                          std::function<void(std::uint64_t, std::uint64_t)>
                                              progress = nullptr) {
  const RootSystem& R = *Rp;
  if (class_tag != "coconvex" && class_tag != "biconvex")
    throw std::invalid_argument("class must be coconvex or biconvex");
  std::vector<Bits> universe =
      class_tag == "biconvex" ? enumerate_biconvex(R) : enumerate_coconvex(R);
  SearchReport rep;
  rep.sys = Rp;
  rep.class_tag = class_tag;
  PatternContext ctx(R);
  std::uint64_t done = 0;
  for (const Bits& S : universe) {
    switch (classify_subset(R, ctx, S)) {
      case SubsetStatus::FREE: ++rep.n_free; break;
      case SubsetStatus::NOT_MINIMAL: ++rep.n_not_minimal; break;
      case SubsetStatus::AMBIGUOUS: ++rep.n_ambiguous; break;
      case SubsetStatus::MINIMAL_PATTERN:
        ++rep.n_minimal;
        if (subset_rank(R, S) == R.l)
          rep.minimal_patterns.push_back(S);
        else
          ++rep.n_minimal_embedded;
        break;
    }
    if (progress && (++done & 0xfff) == 0) progress(done, universe.size());
  }
  return rep;
}

// ---------------------------------------------------------------------
// localization checks (L_k) and (T_k)

struct CheckReport {
  bool holds = true;
  std::optional<Bits> counterexample;
  std::uint64_t subsets_checked = 0;
};

// true if some localization of A(S) at a flat of corank <= k is
// verifiably non-free.  Every corank-c flat with 3 <= c <= k arises as
// S cap U for a dimension-c root-spanned subspace U; smaller coranks
// are always free.
inline bool has_nonfree_small_localization(const RootSystem& R, PatternContext& ctx,
                                           const Bits& S, int k, const char* who) {
  for (int d = 3; d <= std::min(k, R.l); ++d) {
    ctx.ensure(d);
    for (const Subspace& U : ctx.spaces[d]) {
      Bits T = S & U.roots;
      if (T.count() <= 2) continue;
      FreenessVerdict v = FreenessEngine::instance().verify_subset(R, T);
      if (v.status == Freeness::Ambiguous)
        throw AmbiguousVerdict(std::string(who) + ": ambiguous localization verdict");
      if (v.status == Freeness::NonFree) return true;
    }
  }
  return false;
}

// Shared body: a vertex S is harmless when verifiably free, when its
// own rank is at most k (the center is then a corank <= k flat), or
// when some corank <= k localization is verifiably non-free.  A
// verifiably non-free leftover is a counterexample; an unverifiable
// leftover leaves the property undecided.
inline bool lk_tk_vertex(const RootSystem& R, PatternContext& ctx, const Bits& S, int k,
                         const char* who) {
  if (subset_rank(R, S) <= k) return true;  // the center is itself a corank <= k flat
  FreenessVerdict v = FreenessEngine::instance().verify_subset(R, S);
  if (v.status == Freeness::Free) return true;
  if (has_nonfree_small_localization(R, ctx, S, k, who)) return true;
  if (v.status == Freeness::Ambiguous)
    throw AmbiguousVerdict(std::string(who) +
                           ": freeness not verifiable and no non-free localization");
  return false;
}

inline CheckReport lk_report(const RootSystem& R, int k,
                             std::function<void(std::uint64_t, std::uint64_t)> progress = nullptr) {
  CheckReport rep;
  std::vector<Bits> universe = enumerate_coconvex(R);
  rep.subsets_checked = universe.size();
  PatternContext ctx(R);
  std::uint64_t done = 0;
  for (const Bits& S : universe) {
    if (progress && (++done & 0xfff) == 0) progress(done, universe.size());
    if (!lk_tk_vertex(R, ctx, S, k, "check_Lk")) {
      rep.holds = false;
      rep.counterexample = S;
      return rep;
    }
  }
  return rep;
}

inline bool check_Lk(const RootSystem& R, int k) { return lk_report(R, k).holds; }

inline CheckReport tk_report(const RootSystemPtr& Rp, int k, std::uint64_t max_vertices = 500000,
                             std::function<void(std::uint64_t, std::uint64_t)> progress = nullptr) {
  const RootSystem& R = *Rp;
  TranslationGraph G = build_graph(Rp, true, max_vertices);
  CheckReport rep;
  PatternContext ctx(R);
  std::vector<int> terms = G.terminal_vertices();
  rep.subsets_checked = terms.size();
  std::uint64_t done = 0;
  for (int t : terms) {
    const Bits& S = G.vertices[t];
    if (progress && (++done & 0xff) == 0) progress(done, terms.size());
    if (!lk_tk_vertex(R, ctx, S, k, "check_Tk")) {
      rep.holds = false;
      rep.counterexample = S;
      return rep;
    }
  }
  return rep;
}

inline bool check_Tk(const RootSystemPtr& Rp, int k) { return tk_report(Rp, k).holds; }

// ---------------------------------------------------------------------
// avoidance

inline bool freeness_by_avoidance(const RootSystem& R, PatternContext& ctx, const Bits& S,
                                  const std::vector<Pattern>& db) {
  for (const Pattern& p : db)
    if (contains_pattern(R, ctx, S, p)) return false;
  return true;
}

inline bool freeness_by_avoidance(const RootSystem& R, const Bits& S,
                                  const std::vector<Pattern>& db) {
  PatternContext ctx(R);
  return freeness_by_avoidance(R, ctx, S, db);
}

// ---------------------------------------------------------------------
// structure of filtered-graph terminal vertices in type C

// Checks, on every terminal vertex S of the filtered graph of C_n (in
// the labeling where alpha_1 = 2e_1 and alpha_i = e_i - e_{i-1}):
//   1. e_k - e_i in S (i < k) implies e_j - e_i in S for all i < j < k;
//   2. e_l + e_k in S implies e_j - e_i in S for all 1 <= i < j <= k.
inline bool terminal_structure_check_Cn(int n, std::uint64_t max_vertices = 500000) {
  if (n < 2 || n > 5) throw std::invalid_argument("terminal_structure_check_Cn: n must be 2..5");
  RootSystemPtr Rp = build_system({{'C', n}});
  const RootSystem& R = *Rp;
  // e-coordinates of a positive root from its simple-root coefficients
  auto ecoords = [&](int idx) {
    const Root& r = R.pos[idx];
    Vec v(n, 0);
    v[0] = 2 * r[0] - (n > 1 ? r[1] : 0);
    for (int t = 1; t + 1 < n; ++t) v[t] = r[t] - r[t + 1];
    if (n > 1) v[n - 1] = r[n - 1];
    return v;
  };
  std::map<Vec, int> at;
  for (int b = 0; b < R.n(); ++b) at.emplace(ecoords(b), b);
  auto diff_root = [&](int j, int i) {  // e_j - e_i, 1-based, i < j
    Vec v(n, 0);
    v[j - 1] = 1;
    v[i - 1] = -1;
    return at.at(v);
  };
  TranslationGraph G = build_graph(Rp, true, max_vertices);
  for (int t = 0; t < (int)G.vertices.size(); ++t) {
    if (!G.terminal[t]) continue;
    const Bits& S = G.vertices[t];
    for (int b : S.indices()) {
      Vec v = ecoords(b);
      int plus1 = 0, minus = 0, k_hi = 0;
      for (int p = 0; p < n; ++p) {
        if (v[p] > 0) {
          plus1 += (int)v[p];
          k_hi = p + 1;
        } else if (v[p] < 0) {
          minus = p + 1;
        }
      }
      if (minus) {
        // e_k - e_i with i = minus, k = k_hi
        for (int j = minus + 1; j < k_hi; ++j)
          if (!S.get(diff_root(j, minus))) return false;
      } else {
        // e_l + e_k with k = the larger index
        for (int j = 2; j <= k_hi; ++j)
          for (int i = 1; i < j; ++i)
            if (!S.get(diff_root(j, i))) return false;
      }
    }
  }
  return true;
}

}  // namespace rootfree
