#pragma once

// Test-only oracles and instance generators. Everything here is written
// directly from the problem definitions by plain enumeration and shares no
// code path with the solvers under test.

#include <bit>
#include <stdexcept>
#include <cstdint>
#include <vector>

#include "gapred/gapred.hpp"

namespace gapred::testing {

inline std::vector<std::uint32_t> adjacency_masks(const SimpleGraph& g) {
  std::vector<std::uint32_t> adj(g.num_vertices(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1U << v;
    adj[v] |= 1U << u;
  }
  return adj;
}

/// Clique number by enumerating all 2^n vertex subsets (n <= 20).
inline std::size_t brute_clique_number(const SimpleGraph& g) {
  const auto n = g.num_vertices();
  auto adj = adjacency_masks(g);
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    auto size = static_cast<std::size_t>(std::popcount(s));
    if (size <= best) continue;
    bool clique = true;
    for (std::size_t v = 0; v < n && clique; ++v)
      if ((s >> v) & 1U) clique = (s & ~(1U << v) & ~adj[v]) == 0;
    if (clique) best = size;
  }
  return best;
}

/// Minimum maximal independent set size by enumerating all subsets (n <= 20).
inline std::size_t brute_mmis(const SimpleGraph& g) {
  const auto n = g.num_vertices();
  if (n > 20) throw std::logic_error("brute_mmis: graph too large");
  auto adj = adjacency_masks(g);
  const std::uint32_t all = (1U << n) - 1;
  std::size_t best = n;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    auto size = static_cast<std::size_t>(std::popcount(s));
    if (size >= best) continue;
    std::uint32_t dominated = s;
    bool independent = true;
    for (std::size_t v = 0; v < n; ++v)
      if ((s >> v) & 1U) {
        if (adj[v] & s) independent = false;
        dominated |= adj[v];
      }
    if (independent && dominated == all) best = size;
  }
  return best;
}

/// Minimum maximal independent set size by listing every maximal
/// independent set (Bron-Kerbosch on the complement, Tomita pivoting).
/// Works on any size as long as the number of maximal independent sets is modest.
inline std::size_t enumerated_mmis(const SimpleGraph& g) {
  const auto n = g.num_vertices();
  if (n == 0) return 0;
  std::vector<Bitset> non_adj(n, Bitset(n));
  for (std::size_t v = 0; v < n; ++v) {
    non_adj[v] = ~g.neighbors(v);
    non_adj[v].reset(v);
  }
  std::size_t best = n;
  auto recurse = [&](auto&& self, std::size_t depth, Bitset p, Bitset x) -> void {
    if (depth >= best) return;
    if (p.none()) {
      if (x.none()) best = depth;
      return;
    }
    std::size_t pivot = 0, pivot_hits = 0;
    Bitset px = p | x;
    for (auto u = px.find_first(); u != Bitset::npos; u = px.find_next(u)) {
      auto hits = (p & non_adj[u]).count();
      if (hits >= pivot_hits) {
        pivot = u;
        pivot_hits = hits;
      }
    }
    Bitset candidates = p - non_adj[pivot];
    for (auto v = candidates.find_first(); v != Bitset::npos; v = candidates.find_next(v)) {
      self(self, depth + 1, p & non_adj[v], x & non_adj[v]);
      p.reset(v);
      x.set(v);
    }
  };
  Bitset all(n);
  all.set();
  recurse(recurse, 0, all, Bitset(n));
  return best;
}

/// All maximal independent sets (n <= 20), as bitmasks.
inline std::vector<std::uint32_t> all_maximal_independent_sets(const SimpleGraph& g) {
  const auto n = g.num_vertices();
  auto adj = adjacency_masks(g);
  const std::uint32_t all = (1U << n) - 1;
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s <= all; ++s) {
    std::uint32_t dominated = s;
    bool independent = true;
    for (std::size_t v = 0; v < n; ++v)
      if ((s >> v) & 1U) {
        if (adj[v] & s) independent = false;
        dominated |= adj[v];
      }
    if (independent && dominated == all) out.push_back(s);
  }
  return out;
}

/// Minimum set cover by scanning the subset lattice of the family (<= 20 sets).
inline std::size_t brute_setcover(const SetCoverInstance& inst) {
  const auto f = inst.family_size();
  std::vector<std::uint64_t> masks;
  for (const auto& s : inst.family()) {
    std::uint64_t m = 0;
    for (auto e : s) m |= std::uint64_t{1} << e;
    masks.push_back(m);
  }
  const std::uint64_t universe =
      inst.universe_size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << inst.universe_size()) - 1;
  std::size_t best = f + 1;
  for (std::uint32_t pick = 0; pick < (1U << f); ++pick) {
    auto size = static_cast<std::size_t>(std::popcount(pick));
    if (size >= best) continue;
    std::uint64_t covered = 0;
    for (std::size_t i = 0; i < f; ++i)
      if ((pick >> i) & 1U) covered |= masks[i];
    if (covered == universe) best = size;
  }
  return best;
}

/// Min-Rep cover predicate evaluated straight from the definition.
inline bool brute_minrep_covers(const MinRepInstance& inst, std::uint32_t s) {
  const auto& left = inst.left_groups();
  const auto& right = inst.right_groups();
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) {
      bool superedge = false, covered = false;
      for (auto a : left[i])
        for (auto b : right[j])
          for (auto [x, y] : inst.edges())
            if ((x == a && y == b) || (x == b && y == a)) {
              superedge = true;
              if (((s >> a) & 1U) && ((s >> b) & 1U)) covered = true;
            }
      if (superedge && !covered) return false;
    }
  return true;
}

inline std::size_t brute_minrep(const MinRepInstance& inst) {
  const auto n = inst.num_vertices();
  std::size_t best = n;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    auto size = static_cast<std::size_t>(std::popcount(s));
    if (size < best && brute_minrep_covers(inst, s)) best = size;
  }
  return best;
}

/// MaxSAT by direct enumeration over std::vector<bool> assignments.
inline std::size_t brute_maxsat(const CnfInstance& cnf) {
  const auto q = cnf.num_variables();
  std::size_t best = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << q); ++bits) {
    std::size_t sat = 0;
    for (const auto& c : cnf.clauses()) {
      bool any = false;
      for (const auto& lit : c.literals) {
        bool value = (bits >> (lit.variable - 1)) & 1U;
        any = any || (value != lit.negated);
      }
      sat += any;
    }
    best = std::max(best, sat);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Generators (SplitMix64-seeded, reproducible).

inline SimpleGraph random_graph(SplitMix64& rng, std::size_t n, double density) {
  SimpleGraph g(n);
  const auto threshold = static_cast<std::uint64_t>(density * 1024.0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.below(1024) < threshold) g.add_edge(u, v);
  return g;
}

inline SimpleGraph random_connected_graph(SplitMix64& rng, std::size_t n, double density) {
  while (true) {
    auto g = random_graph(rng, n, density);
    // Add a random spanning path backbone half the time to keep sparse ones connected.
    if (!g.is_connected()) {
      for (Vertex v = 1; v < n; ++v) g.add_edge(static_cast<Vertex>(rng.below(v)), v);
    }
    if (g.is_connected()) return g;
  }
}

/// Clause over three distinct variables of 1..q (q >= 3).
inline Clause random_clause(SplitMix64& rng, std::size_t q) {
  std::vector<std::uint32_t> vars;
  while (vars.size() < 3) {
    auto v = static_cast<std::uint32_t>(rng.between(1, q));
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  return Clause(Literal(vars[0], rng.coin()), Literal(vars[1], rng.coin()), Literal(vars[2], rng.coin()));
}

inline CnfInstance random_cnf(SplitMix64& rng, std::size_t q, std::size_t m) {
  CnfInstance cnf(q);
  for (std::size_t i = 0; i < m; ++i) cnf.add_clause(random_clause(rng, q));
  return cnf;
}

/// The 8 clauses over x1..x3 with every sign pattern; unsatisfiable.
inline CnfInstance all_sign_patterns() {
  CnfInstance cnf(3);
  for (unsigned mask = 0; mask < 8; ++mask)
    cnf.add_clause(Clause(Literal(1, mask & 4U), Literal(2, mask & 2U), Literal(3, mask & 1U)));
  return cnf;
}

/// Feasible instance: every element is placed in at least one set.
inline SetCoverInstance random_setcover(SplitMix64& rng, std::size_t universe, std::size_t family) {
  std::vector<ElementSet> sets(family);
  for (std::size_t e = 0; e < universe; ++e) {
    sets[rng.below(family)].push_back(e);
    for (auto& s : sets)
      if (rng.below(4) == 0) s.push_back(e);
  }
  return SetCoverInstance(universe, std::move(sets));
}

/// Random Min-Rep instance on at most `max_vertices` vertices.
inline MinRepInstance random_minrep(SplitMix64& rng, std::size_t max_vertices) {
  const auto left_groups = rng.between(1, 3), right_groups = rng.between(1, 3);
  std::vector<std::vector<Vertex>> left, right;
  Vertex next = 0;
  auto budget = max_vertices;
  auto fill = [&](std::vector<std::vector<Vertex>>& side, std::size_t groups, std::size_t cap) {
    for (std::size_t g = 0; g < groups; ++g) {
      auto size = rng.between(1, std::max<std::size_t>(1, std::min<std::size_t>(4, cap / groups)));
      side.emplace_back();
      for (std::size_t i = 0; i < size; ++i) side.back().push_back(next++);
    }
  };
  fill(left, left_groups, budget / 2);
  fill(right, right_groups, budget / 2);
  std::vector<Edge> edges;
  for (const auto& a_group : left)
    for (const auto& b_group : right)
      for (auto a : a_group)
        for (auto b : b_group)
          if (rng.below(3) == 0) edges.emplace_back(a, b);
  return MinRepInstance(std::move(left), std::move(right), std::move(edges));
}

}  // namespace gapred::testing
