#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gapred/clique_reduction.hpp"
#include "gapred/graph.hpp"
#include "gapred/minrep.hpp"
#include "gapred/mmis_reduction.hpp"
#include "gapred/rng.hpp"
#include "gapred/sat.hpp"
#include "gapred/setcover.hpp"

namespace gapred {

// ---------------------------------------------------------------------------
// Seeded generators.

inline SimpleGraph generate_graph(SplitMix64& rng, std::size_t n, double density) {
  SimpleGraph g(n);
  const auto threshold = static_cast<std::uint64_t>(density * 1000.0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.below(1000) < threshold) g.add_edge(u, v);
  return g;
}

/// Random graph plus a random spanning tree, so the result is connected.
inline SimpleGraph generate_connected_graph(SplitMix64& rng, std::size_t n, double density) {
  auto g = generate_graph(rng, n, density);
  for (Vertex v = 1; v < n; ++v) g.add_edge(static_cast<Vertex>(rng.below(v)), v);
  return g;
}

/// m clauses, each over three distinct variables of 1..q (q >= 3).
inline CnfInstance generate_3cnf(SplitMix64& rng, std::size_t q, std::size_t m) {
  if (q < 3) throw InvalidArgument("generate_3cnf needs q >= 3");
  CnfInstance cnf(q);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::uint32_t> vars;
    for (std::uint32_t x = 1; x <= q; ++x) vars.push_back(x);
    rng.shuffle(vars);
    cnf.add_clause(Clause(Literal(vars[0], rng.coin()), Literal(vars[1], rng.coin()), Literal(vars[2], rng.coin())));
  }
  return cnf;
}

/// Every element lands in one random set, then in each set with probability 1/3.
inline SetCoverInstance generate_setcover(SplitMix64& rng, std::size_t universe, std::size_t family) {
  std::vector<ElementSet> sets(family);
  for (std::size_t e = 0; e < universe; ++e) {
    auto home = rng.below(family);
    for (std::size_t s = 0; s < family; ++s)
      if (s == home || rng.below(3) == 0) sets[s].push_back(e);
  }
  return SetCoverInstance(universe, std::move(sets));
}

/// Min-Rep with up to three groups per side and at most `max_vertices` vertices.
inline MinRepInstance generate_minrep(SplitMix64& rng, std::size_t max_vertices) {
  std::vector<std::vector<Vertex>> left, right;
  Vertex next = 0;
  const auto per_side = std::max<std::size_t>(1, max_vertices / 2);
  for (auto* side : {&left, &right}) {
    auto groups = rng.between(1, std::min<std::size_t>(3, per_side));
    for (std::size_t g = 0; g < groups; ++g) {
      auto size = rng.between(1, std::max<std::size_t>(1, std::min<std::size_t>(4, per_side / groups)));
      side->emplace_back();
      for (std::size_t i = 0; i < size; ++i) side->back().push_back(next++);
    }
  }
  std::vector<Edge> edges;
  for (const auto& a : left)
    for (const auto& b : right)
      for (auto u : a)
        for (auto v : b)
          if (rng.below(3) == 0) edges.emplace_back(u, v);
  return MinRepInstance(std::move(left), std::move(right), std::move(edges));
}

// ---------------------------------------------------------------------------
// Claim suites: randomized self-consistency checks run by `gapred verify`.

struct ClaimResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const noexcept { return failures == 0 && cases > 0; }
  void record(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

namespace detail {

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

inline std::size_t densest_subset_edges(const SimpleGraph& g, std::size_t q) {
  const auto n = g.num_vertices();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != q) continue;
    std::vector<Vertex> us;
    for (Vertex v = 0; v < n; ++v)
      if ((mask >> v) & 1U) us.push_back(v);
    best = std::max(best, induced_edge_count(g, VertexSet(std::move(us))));
  }
  return best;
}

}  // namespace detail

inline ClaimResult claim_clique_maxsat(std::uint64_t seed, std::size_t count) {
  ClaimResult r{"clique-maxsat", 0, 0, {}};
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    auto cnf = generate_3cnf(rng, rng.between(3, 6), rng.between(1, 5));
    auto omega = max_clique_exact(sat_to_clique(cnf).graph).size;
    r.record(omega == max_sat_bruteforce(cnf).satisfied, "case " + std::to_string(i) + ":\n" + to_dimacs(cnf));
  }
  return r;
}

inline ClaimResult claim_supervertex_block(std::uint64_t seed, std::size_t count) {
  ClaimResult r{"supervertex-block", 0, 0, {}};
  SplitMix64 rng(seed);
  SolverLimits limits;
  limits.clique_vertices = 1 << 12;
  for (std::size_t i = 0; i < count; ++i) {
    auto g = generate_graph(rng, rng.between(3, 12), 0.3 + 0.5 * static_cast<double>(rng.below(100)) / 100.0);
    auto omega = max_clique_exact(g).size;
    for (std::size_t block = 1; block <= 3; ++block) {
      if (omega < block) continue;
      auto t = supervertex_clique_transform(g, block, limits);
      r.record(max_clique_exact(t.graph, limits).size == omega / block,
               "B=" + std::to_string(block) + "\n" + to_edge_list(g));
    }
  }
  return r;
}

inline ClaimResult claim_power(std::uint64_t seed, std::size_t count) {
  ClaimResult r{"power", 0, 0, {}};
  SplitMix64 rng(seed);
  SolverLimits limits;
  limits.clique_vertices = 400;
  for (std::size_t i = 0; i < count; ++i) {
    auto n = rng.between(1, 7);
    auto h = generate_graph(rng, n, 0.5);
    auto omega = max_clique_exact(h).size;
    std::size_t expected = 1, size = 1;
    for (std::size_t k = 1; k <= 3; ++k) {
      expected *= omega;
      size *= n;
      if (size > 350) break;
      r.record(max_clique_exact(graph_power(h, k, limits), limits).size == expected,
               "k=" + std::to_string(k) + "\n" + to_edge_list(h));
    }
  }
  return r;
}

inline ClaimResult claim_union_closure(std::uint64_t seed, std::size_t count) {
  ClaimResult r{"union-closure", 0, 0, {}};
  SplitMix64 rng(seed);
  SolverLimits limits;
  limits.setcover_family = 200;
  for (std::size_t i = 0; i < count; ++i) {
    auto inst = generate_setcover(rng, rng.between(1, 12), rng.between(1, 8));
    auto old_opt = setcover_exact(inst).size;
    for (std::size_t p = 1; p <= std::min<std::size_t>(4, inst.family_size()); ++p) {
      auto closure = union_closure_transform(inst, p, false, limits);
      auto cover = setcover_exact(closure.instance, limits);
      bool ok = cover.size == detail::ceil_div(old_opt, p) && inst.is_cover(expand_union_cover(closure, cover.indices));
      r.record(ok, "P=" + std::to_string(p) + "\n" + to_set_system(inst));
    }
  }
  return r;
}

inline ClaimResult claim_greedy_ratio(std::uint64_t seed, std::size_t count) {
  ClaimResult r{"greedy-ratio", 0, 0, {}};
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    auto inst = generate_setcover(rng, rng.between(1, 12), rng.between(1, 8));
    auto greedy = setcover_greedy(inst).size();
    auto opt = setcover_exact(inst).size;
    double bound = (std::log(static_cast<double>(inst.universe_size())) + 1.0) * static_cast<double>(opt);
    r.record(static_cast<double>(greedy) <= bound, to_set_system(inst));
  }
  return r;
}

inline ClaimResult claim_mmis_yes(std::uint64_t seed, std::size_t count) {
  ClaimResult r{"mmis-yes", 0, 0, {}};
  SplitMix64 rng(seed);
  SolverLimits limits;
  limits.mmis_vertices = 256;
  for (std::size_t i = 0; i < count; ++i) {
    auto cnf = generate_3cnf(rng, rng.between(3, 6), rng.between(1, 4));
    auto sat = max_sat_bruteforce(cnf);
    if (sat.satisfied != cnf.num_clauses()) continue;
    const auto q = cnf.num_variables();
    for (std::size_t f = 1; f <= q; ++f) {
      if (q % f != 0) continue;
      auto g = sat_to_mmis(cnf, f, limits);
      auto s = build_yes_solution(cnf, sat.witness, f, g);
      bool ok = s.size() == f && verify_vertex_set(g.graph, s, VertexSetMode::maximal_independent);
      if (ok && g.graph.num_vertices() <= limits.mmis_vertices) ok = mmis_exact(g.graph, limits).size <= f;
      r.record(ok, "f=" + std::to_string(f) + "\n" + to_dimacs(cnf));
    }
  }
  return r;
}

/// The unsatisfiable all-sign-patterns formula over x1..x3 (and a q = 4
/// variant splitting one pattern on x4): mmis_exact > q.
inline ClaimResult claim_mmis_no(std::uint64_t, std::size_t) {
  ClaimResult r{"mmis-no", 0, 0, {}};
  SolverLimits limits;
  limits.mmis_vertices = 256;
  CnfInstance base(3);
  for (unsigned mask = 0; mask < 8; ++mask)
    base.add_clause(Clause(Literal(1, mask & 4U), Literal(2, mask & 2U), Literal(3, mask & 1U)));
  CnfInstance split(4);
  for (unsigned mask = 0; mask < 7; ++mask)
    split.add_clause(Clause(Literal(1, mask & 4U), Literal(2, mask & 2U), Literal(3, mask & 1U)));
  split.add_clause(Clause(Literal(1, true), Literal(2, true), Literal(4, false)));
  split.add_clause(Clause(Literal(1, true), Literal(3, true), Literal(4, true)));
  split.add_clause(Clause(Literal(2, true), Literal(3, true), Literal(4, true)));
  for (const auto* cnf : {&base, &split}) {
    if (is_satisfiable(*cnf)) {
      r.record(false, "formula unexpectedly satisfiable\n" + to_dimacs(*cnf));
      continue;
    }
    auto g = sat_to_mmis(*cnf, 1, limits);
    r.record(mmis_exact(g.graph, limits).size > cnf->num_variables(), to_dimacs(*cnf));
  }
  return r;
}

inline ClaimResult claim_minrep_setcover(std::uint64_t seed, std::size_t count) {
  ClaimResult r{"minrep-setcover", 0, 0, {}};
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    auto inst = generate_minrep(rng, 16);
    const std::size_t e = std::size_t{2} << rng.below(3);
    const auto s = rng.next();
    auto reduced = minrep_to_setcover(inst, e, s);
    auto mr = minrep_exact(inst);
    std::vector<std::size_t> as_sets(mr.witness.begin(), mr.witness.end());
    bool ok = reduced.instance.is_cover(as_sets) && setcover_exact(reduced.instance).size <= mr.size &&
              to_set_system(minrep_to_setcover(inst, e, s).instance) == to_set_system(reduced.instance);
    r.record(ok, minrep_to_json(inst).dump());
  }
  return r;
}

inline ClaimResult claim_dense_subgraph(std::uint64_t seed, std::size_t count) {
  ClaimResult r{"dense-subgraph", 0, 0, {}};
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    auto g = generate_connected_graph(rng, rng.between(1, 8), 0.4);
    for (std::size_t q = 1; q <= g.num_vertices(); ++q) {
      auto tree = dense_q_subgraph_tree(g, q);
      bool ok = tree.edge_count() == q - 1 && tree.vertices.size() == q;
      if (q >= 2) ok = ok && detail::densest_subset_edges(g, q) <= (q + 2) * (q - 1);
      r.record(ok, "q=" + std::to_string(q) + "\n" + to_edge_list(g));
    }
  }
  return r;
}

struct ClaimSuite {
  const char* name;
  ClaimResult (*run)(std::uint64_t seed, std::size_t count);
};

inline const std::vector<ClaimSuite>& claim_suites() {
  static const std::vector<ClaimSuite> suites{
      {"clique-maxsat", claim_clique_maxsat},     {"supervertex-block", claim_supervertex_block},
      {"power", claim_power},                     {"union-closure", claim_union_closure},
      {"greedy-ratio", claim_greedy_ratio},       {"mmis-yes", claim_mmis_yes},
      {"mmis-no", claim_mmis_no},                 {"minrep-setcover", claim_minrep_setcover},
      {"dense-subgraph", claim_dense_subgraph},
  };
  return suites;
}

}  // namespace gapred
