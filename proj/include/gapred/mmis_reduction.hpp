#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gapred/graph.hpp"
#include "gapred/sat.hpp"

namespace gapred {

/// Signed literal: +x stands for u_x, -x for its complement vertex.
using SignedLiteral = long long;

/// H(I): contradiction-free literal supervertices followed by q copies of
/// every clause. Vertex ids: supervertices first, then clause c owns
/// [clause_copies[c].first, clause_copies[c].second).
struct MmisGraph {
  SimpleGraph graph;
  SupervertexMap<SignedLiteral> supervertices;
  std::vector<std::pair<Vertex, Vertex>> clause_copies;

  std::size_t num_supervertices() const noexcept { return supervertices.size(); }
  bool is_clause_copy(Vertex v) const noexcept { return v >= supervertices.size(); }
};

/// C(n, k), saturating at `cap + 1`.
inline std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 value = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > cap) return cap + 1;
  }
  return static_cast<std::size_t>(value);
}

/// Supervertex count C(q, q/f) * 2^(q/f), saturating at `cap + 1`.
inline std::size_t mmis_supervertex_count(std::size_t q, std::size_t f, std::size_t cap) {
  const auto width = q / f;
  auto count = binomial_capped(q, width, cap);
  for (std::size_t i = 0; i < width && count <= cap; ++i) count *= 2;
  return std::min(count, cap + 1);
}

/// 3-SAT -> minimum maximal independent set. Supervertices are all literal
/// sets of size q/f without a complementary pair, ordered by variable
/// combination (lexicographic) and then by sign pattern (positive first,
/// first variable most significant). Edges:
///   * two supervertices sharing a variable (in any polarity),
///   * a supervertex holding u_x and every copy of a clause containing x,
///     likewise for the complement literal.
/// Clause copies are independent of each other.
inline MmisGraph sat_to_mmis(const CnfInstance& cnf, std::size_t f, const SolverLimits& limits = {}) {
  const auto q = cnf.num_variables();
  const auto m = cnf.num_clauses();
  if (f == 0 || q == 0 || q % f != 0)
    throw InvalidArgument("sat_to_mmis needs q >= 1 and f dividing q (q = " + std::to_string(q) +
                          ", f = " + std::to_string(f) + ")");
  const auto width = q / f;
  const auto count = mmis_supervertex_count(q, f, limits.supervertices);
  if (count > limits.supervertices) throw CapExceeded("sat_to_mmis", count, limits.supervertices);

  MmisGraph out;
  std::vector<Bitset> vars_of;  // variable support, bit x-1
  std::vector<std::uint32_t> combo(width);
  for (std::size_t i = 0; i < width; ++i) combo[i] = static_cast<std::uint32_t>(i + 1);
  while (true) {
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << width); ++signs) {
      std::vector<SignedLiteral> lits;
      for (std::size_t i = 0; i < width; ++i) {
        bool neg = (signs >> (width - 1 - i)) & 1U;
        lits.push_back(neg ? -static_cast<SignedLiteral>(combo[i]) : combo[i]);
      }
      out.supervertices.subsets.push_back(std::move(lits));
      Bitset support(q);
      for (auto x : combo) support.set(x - 1);
      vars_of.push_back(std::move(support));
    }
    std::size_t i = width;
    while (i > 0 && combo[i - 1] == q - width + i) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < width; ++j) combo[j] = combo[j - 1] + 1;
  }

  const auto supers = out.supervertices.size();
  out.graph = SimpleGraph(supers + q * m);
  for (std::size_t a = 0; a < supers; ++a)
    for (std::size_t b = a + 1; b < supers; ++b)
      if (vars_of[a].intersects(vars_of[b])) out.graph.add_edge(a, b);

  for (std::size_t c = 0; c < m; ++c) {
    const Vertex first = supers + c * q;
    out.clause_copies.emplace_back(first, first + q);
    const auto& clause = cnf.clauses()[c];
    for (std::size_t s = 0; s < supers; ++s) {
      bool hit = std::any_of(out.supervertices[s].begin(), out.supervertices[s].end(), [&](SignedLiteral l) {
        return clause.contains(Literal::from_signed(l));
      });
      if (!hit) continue;
      for (Vertex w = first; w < first + q; ++w) out.graph.add_edge(s, w);
    }
  }
  return out;
}

/// Yes-instance solution: variables split into f contiguous blocks of size
/// q/f, each block turned into the literal set chosen by tau, and the
/// matching supervertices returned.
inline VertexSet build_yes_solution(const CnfInstance& cnf, const Assignment& tau, std::size_t f,
                                    const MmisGraph& g) {
  const auto q = cnf.num_variables();
  if (f == 0 || q == 0 || q % f != 0) throw InvalidArgument("build_yes_solution needs f dividing q");
  if (tau.num_variables() != q || evaluate(cnf, tau) != cnf.num_clauses())
    throw InvalidArgument("build_yes_solution: tau does not satisfy the formula");
  std::map<std::vector<SignedLiteral>, Vertex> index;
  for (std::size_t s = 0; s < g.num_supervertices(); ++s) index.emplace(g.supervertices[s], s);

  const auto width = q / f;
  std::vector<Vertex> solution;
  for (std::size_t block = 0; block < f; ++block) {
    std::vector<SignedLiteral> t;
    for (std::size_t i = 0; i < width; ++i) {
      auto x = static_cast<std::uint32_t>(block * width + i + 1);
      t.push_back(*tau.value(x) ? static_cast<SignedLiteral>(x) : -static_cast<SignedLiteral>(x));
    }
    auto it = index.find(t);
    if (it == index.end()) throw Error("build_yes_solution: assignment set missing from the graph");
    solution.push_back(it->second);
  }
  return VertexSet(std::move(solution));
}

/// Partial assignment induced by a set of supervertices; nullopt if two
/// members disagree on some variable.
inline std::optional<Assignment> induced_assignment(const MmisGraph& g, const VertexSet& s,
                                                    std::size_t num_variables) {
  Assignment a(num_variables);
  for (auto v : s) {
    if (g.is_clause_copy(v)) continue;
    for (auto lit : g.supervertices[v]) {
      auto x = static_cast<std::uint32_t>(lit < 0 ? -lit : lit);
      auto prev = a.value(x);
      if (prev && *prev != (lit > 0)) return std::nullopt;
      a.set(x, lit > 0);
    }
  }
  return a;
}

inline nlohmann::json mmis_metadata_to_json(const MmisGraph& g) {
  nlohmann::json copies = nlohmann::json::array();
  for (auto [lo, hi] : g.clause_copies) copies.push_back({lo, hi});
  return {{"supervertices", g.supervertices.subsets}, {"clauseCopies", copies}};
}

}  // namespace gapred
