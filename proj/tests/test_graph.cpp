#include <gtest/gtest.h>

#include <numeric>

#include "gapred/graph.hpp"
#include "oracles.hpp"

using namespace gapred;
using gapred::testing::brute_clique_number;
using gapred::testing::brute_mmis;

TEST(EdgeList, ParseAndWrite) {
  auto g = parse_edge_list("3 2\n0 1\r\n2 1\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_TRUE(g.adjacent(1, 2));
  EXPECT_EQ(to_edge_list(g), "3 2\n0 1\n1 2\n");
}

TEST(EdgeList, Errors) {
  EXPECT_THROW(parse_edge_list("3 1\n0 3\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 1\n1 1\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 1\n0 a\n"), ParseError);
  EXPECT_THROW(parse_edge_list(""), ParseError);
}

TEST(EdgeList, RoundTripProperty) {
  SplitMix64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto g = gapred::testing::random_graph(rng, rng.between(1, 12), 0.4);
    EXPECT_EQ(parse_edge_list(to_edge_list(g)), g);
  }
}

TEST(SimpleGraph, RejectsLoops) {
  SimpleGraph g(2);
  EXPECT_THROW(g.add_edge(1, 1), InvalidArgument);
  EXPECT_THROW(g.add_edge(0, 2), InvalidArgument);
  EXPECT_TRUE(g.add_edge(0, 1));
  EXPECT_FALSE(g.add_edge(1, 0));
  EXPECT_EQ(g.num_edges(), 1u);
}

TEST(MaxClique, Examples) {
  EXPECT_EQ(max_clique_exact(SimpleGraph::complete(5)).size, 5u);
  EXPECT_EQ(max_clique_exact(SimpleGraph(4)).size, 1u);
  // Oracle value for C5, computed by enumerating all 32 subsets.
  auto c5 = SimpleGraph::cycle(5);
  ASSERT_EQ(brute_clique_number(c5), 2u);
  EXPECT_EQ(max_clique_exact(c5).size, 2u);
  EXPECT_EQ(max_clique_exact(SimpleGraph(0)).size, 0u);
}

TEST(MaxClique, CapEnforced) {
  SolverLimits limits;
  limits.clique_vertices = 10;
  EXPECT_THROW(max_clique_exact(SimpleGraph(11), limits), CapExceeded);
}

TEST(MaxClique, AgreesWithEnumerationAndWitnessIsClique) {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    auto n = rng.between(1, 16);
    auto g = gapred::testing::random_graph(rng, n, 0.2 + 0.6 * (rng.below(100) / 100.0));
    auto r = max_clique_exact(g);
    EXPECT_EQ(r.size, brute_clique_number(g));
    EXPECT_EQ(r.witness.size(), r.size);
    EXPECT_TRUE(verify_vertex_set(g, r.witness, VertexSetMode::clique));
    EXPECT_EQ(max_clique_exact(g).witness, r.witness);  // deterministic
  }
}

TEST(GraphPower, FirstPowerIsIdentity) {
  SplitMix64 rng(8);
  for (int i = 0; i < 30; ++i) {
    auto h = gapred::testing::random_graph(rng, rng.between(1, 9), 0.5);
    auto p = graph_power(h, 1);
    EXPECT_EQ(p.edges(), h.edges());
  }
}

TEST(GraphPower, CompleteSquared) {
  auto p = graph_power(SimpleGraph::complete(3), 2);
  EXPECT_EQ(p.num_vertices(), 9u);
  EXPECT_EQ(p.num_edges(), 36u);
  ASSERT_EQ(brute_clique_number(p), 9u);
  EXPECT_EQ(max_clique_exact(p).size, 9u);
}

TEST(GraphPower, CycleSquared) {
  auto p = graph_power(SimpleGraph::cycle(5), 2);
  EXPECT_EQ(p.num_vertices(), 25u);
  ASSERT_EQ(brute_clique_number(p), 4u);
  EXPECT_EQ(max_clique_exact(p).size, 4u);
}

TEST(GraphPower, LexicographicTupleIndexing) {
  auto path = SimpleGraph::path(3);  // 0-1-2
  auto p = graph_power(path, 2);
  // (0,0)=0 ~ (1,1)=4 ; (0,0) !~ (2,0)=6 ; (0,1)=1 ~ (1,2)=5
  EXPECT_TRUE(p.adjacent(0, 4));
  EXPECT_FALSE(p.adjacent(0, 6));
  EXPECT_TRUE(p.adjacent(1, 5));
  EXPECT_EQ(power_tuple(5, 3, 2), (std::vector<Vertex>{1, 2}));
}

TEST(GraphPower, MultiplicativeOnSmallGraphs) {
  SplitMix64 rng(23);
  SolverLimits limits;
  limits.clique_vertices = 400;
  for (int trial = 0; trial < 60; ++trial) {
    auto n = rng.between(1, 7);
    auto h = gapred::testing::random_graph(rng, n, 0.5);
    auto w = brute_clique_number(h);
    for (std::size_t k = 1; k <= 3; ++k) {
      std::size_t expected = 1;
      for (std::size_t i = 0; i < k; ++i) expected *= w;
      if (expected > 350 || n * n * n > 350) continue;
      EXPECT_EQ(max_clique_exact(graph_power(h, k, limits), limits).size, expected);
    }
  }
}

TEST(GraphPower, CapAndArguments) {
  SolverLimits limits;
  limits.power_vertices = 100;
  EXPECT_THROW(graph_power(SimpleGraph(5), 3, limits), CapExceeded);
  EXPECT_THROW(graph_power(SimpleGraph(0), 2), InvalidArgument);
  EXPECT_THROW(graph_power(SimpleGraph(3), 0), InvalidArgument);
}

TEST(VerifyVertexSet, Examples) {
  auto k3 = SimpleGraph::complete(3);
  EXPECT_TRUE(verify_vertex_set(k3, {0, 1}, VertexSetMode::clique));
  auto path = SimpleGraph::path(3);
  EXPECT_TRUE(verify_vertex_set(path, {0, 2}, VertexSetMode::maximal_independent));
  auto r = verify_vertex_set(path, {0}, VertexSetMode::maximal_independent);
  EXPECT_FALSE(r);
  ASSERT_TRUE(r.violation);
  EXPECT_EQ(r.violation->first, 2u);
}

TEST(VerifyVertexSet, ViolationsAndRange) {
  auto path = SimpleGraph::path(3);
  auto indep = verify_vertex_set(path, {0, 1}, VertexSetMode::independent);
  EXPECT_FALSE(indep);
  EXPECT_EQ(*indep.violation, (Edge{0, 1}));
  EXPECT_FALSE(verify_vertex_set(path, {0, 2}, VertexSetMode::clique));
  EXPECT_TRUE(verify_vertex_set(path, {1}, VertexSetMode::dominating));
  EXPECT_THROW(verify_vertex_set(path, {3}, VertexSetMode::clique), InvalidArgument);
}

TEST(Mmis, Examples) {
  EXPECT_EQ(mmis_exact(SimpleGraph::complete(6)).size, 1u);
  EXPECT_EQ(mmis_exact(SimpleGraph(4)).size, 4u);
  auto path = SimpleGraph::path(3);
  // Oracle: the maximal independent sets of a-b-c are {b} and {a,c}.
  auto mis = gapred::testing::all_maximal_independent_sets(path);
  ASSERT_EQ(mis.size(), 2u);
  auto r = mmis_exact(path);
  EXPECT_EQ(r.size, 1u);
  EXPECT_EQ(r.witness, VertexSet({1}));
}

TEST(Mmis, AgreesWithEnumeration) {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    auto n = rng.between(1, 16);
    auto g = gapred::testing::random_graph(rng, n, 0.1 + 0.6 * (rng.below(100) / 100.0));
    auto r = mmis_exact(g);
    EXPECT_EQ(r.size, brute_mmis(g));
    EXPECT_TRUE(verify_vertex_set(g, r.witness, VertexSetMode::maximal_independent));
    // Sanity upper bound: any greedy maximal independent set.
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      rng.shuffle(order);
      auto greedy = greedy_maximal_independent_set(g, order);
      EXPECT_TRUE(verify_vertex_set(g, greedy, VertexSetMode::maximal_independent));
      EXPECT_LE(r.size, greedy.size());
    }
  }
}

TEST(Mmis, CapEnforced) {
  EXPECT_THROW(mmis_exact(SimpleGraph(41)), CapExceeded);
}

TEST(DenseSubgraph, TreeSizes) {
  auto g = SimpleGraph::cycle(6);
  EXPECT_EQ(dense_q_subgraph_tree(g, 1).edge_count(), 0u);
  auto r = dense_q_subgraph_tree(g, 3);
  EXPECT_EQ(r.edge_count(), 2u);
  EXPECT_EQ(r.vertices, VertexSet({0, 1, 5}));
}

TEST(DenseSubgraph, Errors) {
  SimpleGraph disconnected(3);
  disconnected.add_edge(0, 1);
  EXPECT_THROW(dense_q_subgraph_tree(disconnected, 2), InvalidArgument);
  EXPECT_THROW(dense_q_subgraph_tree(SimpleGraph::path(3), 4), InvalidArgument);
  EXPECT_THROW(dense_q_subgraph_tree(SimpleGraph::path(3), 0), InvalidArgument);
}

TEST(DenseSubgraph, SpanningTreeOnConnectedSubgraphAndRatioBound) {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    auto n = rng.between(1, 9);
    auto g = gapred::testing::random_connected_graph(rng, n, 0.4);
    for (std::size_t q = 1; q <= n; ++q) {
      auto r = dense_q_subgraph_tree(g, q);
      ASSERT_EQ(r.vertices.size(), q);
      ASSERT_EQ(r.edge_count(), q - 1);
      for (auto [u, v] : r.tree_edges) {
        EXPECT_TRUE(g.adjacent(u, v));
        EXPECT_TRUE(r.vertices.contains(u) && r.vertices.contains(v));
      }
      SimpleGraph sub(n);
      for (auto [u, v] : r.tree_edges) sub.add_edge(u, v);
      EXPECT_EQ(sub.bfs_order(r.vertices[0]).size(), q);  // tree is connected on U
      if (q < 2) continue;
      std::size_t best = 0;
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != q) continue;
        std::vector<Vertex> us;
        for (Vertex v = 0; v < n; ++v)
          if ((mask >> v) & 1U) us.push_back(v);
        best = std::max(best, induced_edge_count(g, VertexSet(us)));
      }
      EXPECT_LE(best, (q + 2) * (q - 1));
    }
  }
}
