#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gapred/graph.hpp"
#include "gapred/sat.hpp"

namespace gapred {

/// A gadget vertex: a satisfying partial assignment to one clause's variables.
struct GadgetVertex {
  std::size_t clause = 0;
  /// (variable, value), ascending by variable.
  std::vector<std::pair<std::uint32_t, bool>> assignment;
};

struct CliqueGadgetGraph {
  SimpleGraph graph;
  std::vector<GadgetVertex> gadgets;
};

inline bool compatible(const GadgetVertex& a, const GadgetVertex& b) {
  auto i = a.assignment.begin();
  auto j = b.assignment.begin();
  while (i != a.assignment.end() && j != b.assignment.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      if (i->second != j->second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

/// Clause-gadget reduction from 3-SAT to Clique. Each clause contributes one
/// vertex per satisfying assignment of its distinct variables (7 for three
/// distinct variables), listed in lexicographic order with false first.
/// Vertices are adjacent iff they come from different clauses and agree on
/// every shared variable.
inline CliqueGadgetGraph sat_to_clique(const CnfInstance& cnf) {
  std::vector<GadgetVertex> gadgets;
  for (std::size_t c = 0; c < cnf.num_clauses(); ++c) {
    const auto& clause = cnf.clauses()[c];
    auto vars = clause.variables();
    const auto width = vars.size();
    for (std::uint32_t bits = 0; bits < (1U << width); ++bits) {
      GadgetVertex gv{c, {}};
      for (std::size_t i = 0; i < width; ++i)
        gv.assignment.emplace_back(vars[i], (bits >> (width - 1 - i)) & 1U);
      bool sat = false;
      for (const auto& lit : clause.literals)
        for (const auto& [var, value] : gv.assignment)
          if (var == lit.variable && lit.satisfied_by(value)) sat = true;
      if (sat) gadgets.push_back(std::move(gv));
    }
  }
  SimpleGraph g(gadgets.size());
  for (std::size_t u = 0; u < gadgets.size(); ++u)
    for (std::size_t v = u + 1; v < gadgets.size(); ++v)
      if (gadgets[u].clause != gadgets[v].clause && compatible(gadgets[u], gadgets[v]))
        g.add_edge(u, v);
  return {std::move(g), std::move(gadgets)};
}

/// Extends the partial assignments of a clique's gadget vertices to a total
/// assignment (unmentioned variables false). Throws if they conflict.
inline Assignment assignment_from_clique(const CnfInstance& cnf, const CliqueGadgetGraph& reduced,
                                         const VertexSet& clique) {
  Assignment a(cnf.num_variables());
  for (auto v : clique) {
    for (const auto& [var, value] : reduced.gadgets.at(v).assignment) {
      auto prev = a.value(var);
      if (prev && *prev != value) throw InvalidArgument("clique gadgets disagree on x" + std::to_string(var));
      a.set(var, value);
    }
  }
  for (std::uint32_t var = 1; var <= cnf.num_variables(); ++var)
    if (!a.value(var)) a.set(var, false);
  return a;
}

struct SupervertexGraph {
  SimpleGraph graph;
  SupervertexMap<Vertex> map;
};

namespace detail {

template <typename Visit>
void for_each_clique_of_size(const SimpleGraph& g, std::size_t size, Visit&& visit) {
  std::vector<Vertex> current;
  Bitset all(g.num_vertices());
  all.set();
  auto rec = [&](auto&& self, const Bitset& candidates) -> void {
    if (current.size() == size) {
      visit(current);
      return;
    }
    for (auto v = candidates.find_first(); v != Bitset::npos; v = candidates.find_next(v)) {
      Bitset next = candidates & g.neighbors(v);
      // Only extend upward so each clique is produced once, in lex order.
      next &= ~Bitset(g.num_vertices()).set(0, v + 1, true);
      if (next.count() + current.size() + 1 < size) continue;
      current.push_back(v);
      self(self, next);
      current.pop_back();
    }
  };
  rec(rec, all);
}

}  // namespace detail

/// Number of B-vertex cliques of g.
inline std::size_t count_cliques_of_size(const SimpleGraph& g, std::size_t block) {
  std::size_t count = 0;
  detail::for_each_clique_of_size(g, block, [&](const std::vector<Vertex>&) { ++count; });
  return count;
}

/// Supervertex transform: one supervertex per B-subset of V(g) that induces a
/// clique (lexicographic order); two supervertices are adjacent iff they are
/// disjoint and their union is a clique of g. Non-clique subsets would be
/// isolated and are not materialised.
inline SupervertexGraph supervertex_clique_transform(const SimpleGraph& g, std::size_t block,
                                                     const SolverLimits& limits = {}) {
  if (block == 0 || block > g.num_vertices())
    throw InvalidArgument("block size must be in 1..n");
  auto count = count_cliques_of_size(g, block);
  if (count > limits.supervertices)
    throw CapExceeded("supervertex_clique_transform", count, limits.supervertices);

  SupervertexGraph out;
  std::vector<Bitset> common;
  std::vector<Bitset> members;
  detail::for_each_clique_of_size(g, block, [&](const std::vector<Vertex>& clique) {
    out.map.subsets.push_back(clique);
    Bitset cn(g.num_vertices());
    cn.set();
    Bitset mem(g.num_vertices());
    for (auto v : clique) {
      cn &= g.neighbors(v);
      mem.set(v);
    }
    common.push_back(std::move(cn));
    members.push_back(std::move(mem));
  });
  out.graph = SimpleGraph(count);
  // B' ⊆ common-neighbourhood(A) forces disjointness and a clique union.
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b)
      if (members[b].is_subset_of(common[a])) out.graph.add_edge(a, b);
  return out;
}

/// Union of the subsets of a supervertex clique, i.e. the underlying clique.
inline VertexSet expand_supervertices(const SupervertexMap<Vertex>& map, const VertexSet& supervertices) {
  std::vector<Vertex> out;
  for (auto s : supervertices) out.insert(out.end(), map[s].begin(), map[s].end());
  return VertexSet(std::move(out));
}

inline nlohmann::json gadgets_to_json(const std::vector<GadgetVertex>& gadgets) {
  auto arr = nlohmann::json::array();
  for (std::size_t v = 0; v < gadgets.size(); ++v) {
    auto assignment = nlohmann::json::array();
    for (const auto& [var, value] : gadgets[v].assignment) assignment.push_back({var, value});
    arr.push_back({{"vertex", v}, {"clause", gadgets[v].clause}, {"assignment", assignment}});
  }
  return arr;
}

template <typename Element>
nlohmann::json supervertex_map_to_json(const SupervertexMap<Element>& map) {
  return map.subsets;
}

inline SupervertexMap<Vertex> supervertex_map_from_json(const nlohmann::json& j) {
  SupervertexMap<Vertex> map;
  try {
    map.subsets = j.get<std::vector<std::vector<Vertex>>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed supervertex map: ") + e.what());
  }
  for (const auto& s : map.subsets)
    if (s.empty()) throw InvalidArgument("supervertex subsets must be nonempty");
  return map;
}

}  // namespace gapred
