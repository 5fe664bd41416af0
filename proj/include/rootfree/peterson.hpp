#pragma once

#include "rootfree/arrangement.hpp"
#include "rootfree/coconvex.hpp"
#include "rootfree/weyl.hpp"

// Peterson translation: per-string compression of a root subset toward
// the bottom of each alpha-string, the induced walk down to a lower
// order ideal, and the translation graphs (plain and freeness-filtered).

namespace rootfree {

// Each alpha-string keeps as many of its members as before, moved to
// the bottom of the string.  Total size is preserved.
inline Bits translate(const RootSystem& R, const Bits& S, int a) {
  assert(a >= 0 && a < R.n());
  Bits out(R.n());
  for (const auto& str : R.strings[a]) {
    int c = 0;
    for (int j : str)
      if (S.get(j)) ++c;
    for (int p = 0; p < c; ++p) out.set(str[p]);
  }
  return out;
}

struct TranslatePath {
  Bits ideal;
  std::vector<std::pair<Bits, int>> steps;  // (set before the step, witness root)
};

// Walks S down to a lower order ideal, always using the first root (in
// the canonical root order) whose translation moves the set.  Each
// moving step strictly decreases the height sum, so this terminates.
inline TranslatePath translate_to_ideal(const RootSystem& R, Bits S) {
  if (!is_coconvex(R, S))
    throw std::invalid_argument("translate_to_ideal: subset is not coconvex");
  TranslatePath out;
  for (;;) {
    bool moved = false;
    for (int a : S.indices()) {
      Bits T = translate(R, S, a);
      if (!(T == S)) {
        out.steps.emplace_back(S, a);
        S = std::move(T);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (!is_lower_ideal(R, S))
    throw std::logic_error("translate_to_ideal: stalled on a non-ideal (internal)");
  out.ideal = std::move(S);
  return out;
}

// Freeness of A(S) with the no-guessing policy.
inline bool subset_is_free(const RootSystem& R, const Bits& S, const char* who) {
  FreenessVerdict v = FreenessEngine::instance().verify_subset(R, S);
  if (v.status == Freeness::Ambiguous)
    throw AmbiguousVerdict(std::string(who) + ": ambiguous freeness verdict");
  return v.status == Freeness::Free;
}

// A(S) free and every single translate free.
inline bool is_peterson_free(const RootSystem& R, const Bits& S) {
  if (!is_coconvex(R, S)) throw std::invalid_argument("is_peterson_free: not coconvex");
  if (!subset_is_free(R, S, "is_peterson_free")) return false;
  for (int a : S.indices())
    if (!subset_is_free(R, translate(R, S, a), "is_peterson_free")) return false;
  return true;
}

// Equivalent test through rank-3 restrictions: S is Peterson-free iff
// S_U is Peterson-free inside R cap U for every root-spanned subspace U
// of dimension 3.  (Lower-rank restrictions are always free.)
inline bool is_peterson_free_dim3(const RootSystem& R, const Bits& S) {
  if (!is_coconvex(R, S)) throw std::invalid_argument("is_peterson_free_dim3: not coconvex");
  if (R.l < 3) return true;
  for (const Subspace& U : root_spanned_subspaces(R, 3)) {
    Restriction res = restrict_system(R, U);
    Bits SU = intersect_with_subspace(S, U, res);
    if (!is_peterson_free(*res.sys, SU)) return false;
  }
  return true;
}

// Exp of the ideal reached by translation.  Valid as the coexponent
// multiset of A(S) only under the documented preconditions; pass
// unchecked = true to skip them (diagnostics only).
inline std::vector<int> coexponents_via_translation(const RootSystem& R, const Bits& S,
                                                    bool unchecked = false) {
  if (!is_coconvex(R, S))
    throw std::invalid_argument("coexponents_via_translation: subset is not coconvex");
  if (!unchecked) {
    bool safe_type = true;
    for (auto [letter, rank] : R.factors)
      if (letter == 'C' || letter == 'F') safe_type = false;
    if (!safe_type && !is_biconvex(R, S) && !is_peterson_free(R, S))
      throw std::invalid_argument(
          "coexponents_via_translation: type has C/F factors and the subset is neither "
          "biconvex nor Peterson-free");
    if (!subset_is_free(R, S, "coexponents_via_translation"))
      throw std::invalid_argument("coexponents_via_translation: arrangement is not free");
  }
  return exp_multiset(R, translate_to_ideal(R, S).ideal);
}

// ---------------------------------------------------------------------
// translation graphs

struct TranslationGraph {
  RootSystemPtr sys;
  bool filtered = false;
  std::vector<Bits> vertices;  // all coconvex subsets, ascending mask order
  std::unordered_map<Bits, int, BitsHash> vertex_id;
  // edges[v]: (witness root, target vertex), witness ascending
  std::vector<std::vector<std::pair<int, int>>> edges;
  std::vector<bool> ideal;
  std::vector<bool> terminal;

  std::vector<int> terminal_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < (int)vertices.size(); ++v)
      if (terminal[v]) out.push_back(v);
    return out;
  }
};

// shared restriction tables for all dimension-3 root-spanned subspaces
struct Dim3Cache {
  std::vector<Subspace> spaces;
  std::vector<Restriction> res;
  std::vector<std::vector<int>> containing;  // root index -> subspace ids through it

  explicit Dim3Cache(const RootSystem& R) {
    if (R.l < 3) {
      containing.assign(R.n(), {});
      return;
    }
    spaces = root_spanned_subspaces(R, 3);
    res.reserve(spaces.size());
    for (const Subspace& U : spaces) res.push_back(restrict_system(R, U));
    containing.assign(R.n(), {});
    for (int u = 0; u < (int)spaces.size(); ++u)
      for (int b : spaces[u].roots.indices()) containing[b].push_back(u);
  }
};

// The filtered graph drops an edge S -> tau(S, a) exactly when some
// dimension-3 subspace through a restricts S to a free arrangement
// whose translate is not free.
inline bool edge_survives_filter(const Dim3Cache& C, const Bits& S, int a) {
  for (int u : C.containing[a]) {
    const Restriction& res = C.res[u];
    Bits SU = intersect_with_subspace(S, C.spaces[u], res);
    int aU = res.from_ambient[a];
    Bits TU = translate(*res.sys, SU, aU);
    if (TU == SU) continue;
    if (!subset_is_free(*res.sys, SU, "graph filter")) continue;
    if (!subset_is_free(*res.sys, TU, "graph filter")) return false;
  }
  return true;
}

inline TranslationGraph build_graph(const RootSystemPtr& Rp, bool filtered,
                                    std::uint64_t max_vertices = 500000) {
  const RootSystem& R = *Rp;
  TranslationGraph G;
  G.sys = Rp;
  G.filtered = filtered;
  G.vertices = enumerate_coconvex(R);
  if (G.vertices.size() > max_vertices)
    throw BudgetExceeded("translation graph of " + R.name + " has " +
                         std::to_string(G.vertices.size()) + " vertices, budget " +
                         std::to_string(max_vertices));
  for (int v = 0; v < (int)G.vertices.size(); ++v) G.vertex_id.emplace(G.vertices[v], v);
  G.edges.resize(G.vertices.size());
  G.ideal.resize(G.vertices.size());
  G.terminal.resize(G.vertices.size());
  std::optional<Dim3Cache> cache;
  if (filtered) cache.emplace(R);
  for (int v = 0; v < (int)G.vertices.size(); ++v) {
    const Bits& S = G.vertices[v];
    G.ideal[v] = is_lower_ideal(R, S);
    for (int a : S.indices()) {
      Bits T = translate(R, S, a);
      if (T == S) continue;
      if (filtered && !edge_survives_filter(*cache, S, a)) continue;
      G.edges[v].emplace_back(a, G.vertex_id.at(T));
    }
    G.terminal[v] = G.edges[v].empty();
  }
  return G;
}

// ---------------------------------------------------------------------
// augmented translation on pairs (S, I(y))

// r_a y computed on the inversion set: beta is inverted by r_a y iff
// r_a(beta) is positive and inverted by y, or negative with |r_a(beta)|
// not inverted by y.
inline Bits inversion_set_after_reflection(const RootSystem& R, int a, const Bits& Iy) {
  Bits out(R.n());
  const Root& av = R.pos[a];
  Int alen = R.len2[a];
  for (int b = 0; b < R.n(); ++b) {
    Wide num = 0;
    for (int s = 0; s < R.l; ++s)
      for (int t = 0; t < R.l; ++t) num += (Wide)R.pos[b][s] * R.form[s][t] * av[t];
    Int c = checked_narrow(2 * num / alen);
    assert((2 * num) % alen == 0);
    Root g(R.l);
    for (int t = 0; t < R.l; ++t) g[t] = R.pos[b][t] - c * av[t];
    int idx = R.index_of(g);
    if (idx >= 0) {
      if (Iy.get(idx)) out.set(b);
    } else {
      for (auto& x : g) x = -x;
      idx = R.index_of(g);
      assert(idx >= 0);
      if (!Iy.get(idx)) out.set(b);
    }
  }
  return out;
}

// Peterson translation of the pair (S, I(y)) by a in I(y): returns
// (tau(S,a), word for r_a y) and checks I(r_a y) inside tau(S,a).
inline std::pair<Bits, WeylWord> augmented_translate(const RootSystem& R, const Bits& S,
                                                     const WeylWord& y, int a) {
  Bits Iy = inversion_set(R, y);
  if (!Iy.subset_of(S))
    throw std::invalid_argument("augmented_translate: I(y) is not contained in S");
  if (!Iy.get(a)) throw std::invalid_argument("augmented_translate: root is not in I(y)");
  Bits T = translate(R, S, a);
  Bits Iry = inversion_set_after_reflection(R, a, Iy);
  auto w = word_from_inversion_set(R, Iry);
  if (!w) throw std::logic_error("augmented_translate: reflected set is not an inversion set");
  if (!Iry.subset_of(T))
    throw std::logic_error("augmented_translate: inclusion I(r_a y) in tau(S,a) failed");
  return {std::move(T), std::move(*w)};
}

}  // namespace rootfree
