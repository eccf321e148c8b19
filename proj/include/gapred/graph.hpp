#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "gapred/error.hpp"
#include "gapred/limits.hpp"
#include "gapred/sat.hpp"

namespace gapred {

using Bitset = boost::dynamic_bitset<>;
using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free set of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs) : VertexSet(std::vector<Vertex>(vs)) {}
  explicit VertexSet(std::vector<Vertex> vs) : members_(std::move(vs)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }
  static VertexSet from_bitset(const Bitset& bits) {
    VertexSet s;
    for (auto v = bits.find_first(); v != Bitset::npos; v = bits.find_next(v))
      s.members_.push_back(v);
    return s;
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Vertex>& members() const noexcept { return members_; }

  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

/// Supervertex index -> underlying subset. The element type is a vertex id for
/// clique supervertices and a signed literal for MMIS supervertices.
template <typename Element = Vertex>
struct SupervertexMap {
  std::vector<std::vector<Element>> subsets;

  std::size_t size() const noexcept { return subsets.size(); }
  const std::vector<Element>& operator[](std::size_t i) const { return subsets[i]; }
};

/// Simple undirected graph on vertices 0..n-1 backed by adjacency bitsets.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n) : adj_(n, Bitset(n)) {}
  SimpleGraph(std::size_t n, const std::vector<Edge>& edges) : SimpleGraph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  static SimpleGraph complete(std::size_t n) {
    SimpleGraph g(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }
  static SimpleGraph cycle(std::size_t n) {
    SimpleGraph g(n);
    for (Vertex u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
    return g;
  }
  static SimpleGraph path(std::size_t n) {
    SimpleGraph g(n);
    for (Vertex u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
  }

  std::size_t num_vertices() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return edge_count_; }

  /// Returns false if the edge was already present. Loops are rejected.
  bool add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (u == v) throw InvalidArgument("loop at vertex " + std::to_string(u));
    if (adj_[u][v]) return false;
    adj_[u].set(v);
    adj_[v].set(u);
    ++edge_count_;
    return true;
  }

  bool adjacent(Vertex u, Vertex v) const { return adj_[u][v]; }
  const Bitset& neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].count(); }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < adj_.size(); ++u)
      for (auto v = adj_[u].find_next(u); v != Bitset::npos; v = adj_[u].find_next(v))
        out.emplace_back(u, v);
    return out;
  }

  bool is_connected() const {
    if (adj_.empty()) return true;
    return bfs_order(0).size() == adj_.size();
  }

  /// Vertices reachable from `root` in BFS order (neighbors visited ascending).
  std::vector<Vertex> bfs_order(Vertex root, std::vector<Vertex>* parent = nullptr) const {
    check(root);
    std::vector<Vertex> order;
    Bitset seen(adj_.size());
    std::vector<Vertex> par(adj_.size(), root);
    std::deque<Vertex> queue{root};
    seen.set(root);
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      order.push_back(u);
      for (auto v = adj_[u].find_first(); v != Bitset::npos; v = adj_[u].find_next(v)) {
        if (seen[v]) continue;
        seen.set(v);
        par[v] = u;
        queue.push_back(v);
      }
    }
    if (parent) *parent = std::move(par);
    return order;
  }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) { return a.adj_ == b.adj_; }

 private:
  void check(Vertex v) const {
    if (v >= adj_.size())
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range 0.." +
                            std::to_string(adj_.size()) + ")");
  }

  std::vector<Bitset> adj_;
  std::size_t edge_count_ = 0;
};

// ---------------------------------------------------------------------------
// Edge-list text format: "n e" then e lines "u v", 0-based.

inline SimpleGraph parse_edge_list(std::string_view text) {
  using detail::parse_int;
  auto lines = detail::split_lines(text);
  std::size_t line_no = 0;
  std::optional<SimpleGraph> g;
  std::size_t declared = 0, seen = 0;
  for (auto line : lines) {
    ++line_no;
    auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError(ParseErrorKind::malformed_line, line_no, std::string(line));
    auto a = parse_int<std::size_t>(tokens[0]);
    auto b = parse_int<std::size_t>(tokens[1]);
    if (!a || !b)
      throw ParseError(ParseErrorKind::non_integer_token, line_no, std::string(line));
    if (!g) {
      g.emplace(*a);
      declared = *b;
      continue;
    }
    if (*a >= g->num_vertices() || *b >= g->num_vertices())
      throw ParseError(ParseErrorKind::index_out_of_range, line_no, std::string(line));
    if (*a == *b) throw ParseError(ParseErrorKind::malformed_line, line_no, "loop edge");
    if (!g->add_edge(*a, *b)) throw ParseError(ParseErrorKind::malformed_line, line_no, "parallel edge");
    ++seen;
  }
  if (!g) throw ParseError(ParseErrorKind::malformed_header, line_no, "missing 'n e' header");
  if (seen != declared)
    throw ParseError(ParseErrorKind::count_mismatch, line_no,
                     "declared " + std::to_string(declared) + " edges, found " + std::to_string(seen));
  return *g;
}

inline void write_edge_list(std::ostream& out, const SimpleGraph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string to_edge_list(const SimpleGraph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

// ---------------------------------------------------------------------------
// Vertex-set predicates.

enum class VertexSetMode { clique, independent, dominating, maximal_independent };

struct VertexSetCheck {
  bool ok = true;
  /// First violating pair (clique / independent) or undominated vertex
  /// (dominating / maximal-independent, reported as {v, v}).
  std::optional<Edge> violation;

  explicit operator bool() const noexcept { return ok; }
};

inline VertexSetCheck verify_vertex_set(const SimpleGraph& g, const VertexSet& s, VertexSetMode mode) {
  for (auto v : s)
    if (v >= g.num_vertices())
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range");

  auto pairwise = [&](bool want_adjacent) -> VertexSetCheck {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (g.adjacent(s[i], s[j]) != want_adjacent) return {false, Edge{s[i], s[j]}};
    return {};
  };
  auto dominating = [&]() -> VertexSetCheck {
    Bitset covered(g.num_vertices());
    for (auto v : s) {
      covered |= g.neighbors(v);
      covered.set(v);
    }
    covered.flip();
    auto v = covered.find_first();
    if (v != Bitset::npos) return {false, Edge{v, v}};
    return {};
  };

  switch (mode) {
    case VertexSetMode::clique: return pairwise(true);
    case VertexSetMode::independent: return pairwise(false);
    case VertexSetMode::dominating: return dominating();
    case VertexSetMode::maximal_independent: {
      auto indep = pairwise(false);
      if (!indep) return indep;
      return dominating();
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Maximum clique: bitset branch and bound with greedy colouring bounds
// (San Segundo's BBMC). Vertices are renumbered by non-increasing degree,
// ties by index, so the search and the returned witness are deterministic.

namespace detail {

class CliqueSearch {
 public:
  CliqueSearch(const SimpleGraph& g, const Bitset* restrict_to = nullptr) {
    const auto n = g.num_vertices();
    for (Vertex v = 0; v < n; ++v)
      if (!restrict_to || (*restrict_to)[v]) order_.push_back(v);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    const auto k = order_.size();
    std::vector<std::size_t> pos(n, k);
    for (std::size_t i = 0; i < k; ++i) pos[order_[i]] = i;
    adj_.assign(k, Bitset(k));
    for (std::size_t i = 0; i < k; ++i) {
      const auto& nb = g.neighbors(order_[i]);
      for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w))
        if (pos[w] < k) adj_[i].set(pos[w]);
    }
  }

  /// Largest clique; stops early once `target` is reached (0 = no target).
  std::vector<Vertex> run(std::size_t target = 0) {
    target_ = target;
    best_.clear();
    current_.clear();
    Bitset all(adj_.size());
    all.set();
    if (!adj_.empty()) expand(all);
    std::vector<Vertex> out;
    for (auto i : best_) out.push_back(order_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void expand(Bitset candidates) {
    std::vector<std::size_t> verts, colours;
    colour_sort(candidates, verts, colours);
    for (std::size_t idx = verts.size(); idx-- > 0;) {
      if (done()) return;
      if (current_.size() + colours[idx] <= best_.size()) return;
      auto v = verts[idx];
      current_.push_back(v);
      Bitset next = candidates & adj_[v];
      if (next.none()) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(next);
      }
      current_.pop_back();
      candidates.reset(v);
    }
  }

  void colour_sort(const Bitset& candidates, std::vector<std::size_t>& verts,
                   std::vector<std::size_t>& colours) const {
    Bitset uncoloured = candidates;
    std::size_t colour = 0;
    while (uncoloured.any()) {
      ++colour;
      Bitset available = uncoloured;
      for (auto v = available.find_first(); v != Bitset::npos; v = available.find_next(v)) {
        uncoloured.reset(v);
        available -= adj_[v];
        verts.push_back(v);
        colours.push_back(colour);
      }
    }
  }

  bool done() const noexcept { return target_ != 0 && best_.size() >= target_; }

  std::vector<Vertex> order_;
  std::vector<Bitset> adj_;
  std::vector<std::size_t> best_, current_;
  std::size_t target_ = 0;
};

}  // namespace detail

struct CliqueResult {
  std::size_t size = 0;
  VertexSet witness;
};

/// Clique number and a maximum clique. The empty graph has clique number 0.
inline CliqueResult max_clique_exact(const SimpleGraph& g, const SolverLimits& limits = {}) {
  if (g.num_vertices() > limits.clique_vertices)
    throw CapExceeded("max_clique_exact", g.num_vertices(), limits.clique_vertices);
  auto clique = detail::CliqueSearch(g).run();
  return {clique.size(), VertexSet(std::move(clique))};
}

// ---------------------------------------------------------------------------
// Minimum maximal independent set (= minimum independent dominating set).

namespace detail {

/// Branches on an undominated vertex with the fewest still-selectable closed
/// neighbours: one of them must join the set. Selectable means not yet
/// dominated, which keeps the partial solution independent.
class IndependentDominatingSearch {
 public:
  explicit IndependentDominatingSearch(const SimpleGraph& g) : g_(g), n_(g.num_vertices()) {
    closed_.reserve(n_);
    for (Vertex v = 0; v < n_; ++v) {
      Bitset c = g.neighbors(v);
      c.set(v);
      closed_.push_back(std::move(c));
    }
  }

  std::vector<Vertex> run() {
    best_ = greedy();
    Bitset undominated(n_);
    undominated.set();
    std::vector<Vertex> chosen;
    search(undominated, chosen);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  // Lowest-index-first greedy maximal independent set; initial upper bound.
  std::vector<Vertex> greedy() const {
    std::vector<Vertex> set;
    Bitset free(n_);
    free.set();
    for (auto v = free.find_first(); v != Bitset::npos; v = free.find_next(v)) {
      set.push_back(v);
      free -= closed_[v];
    }
    return set;
  }

  void search(const Bitset& undominated, std::vector<Vertex>& chosen) {
    if (undominated.none()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + lower_bound(undominated) >= best_.size()) return;

    Vertex pivot = Bitset::npos;
    std::size_t fewest = Bitset::npos;
    for (auto v = undominated.find_first(); v != Bitset::npos; v = undominated.find_next(v)) {
      auto options = (closed_[v] & undominated).count();
      if (options < fewest) {
        fewest = options;
        pivot = v;
        if (options == 1) break;
      }
    }
    Bitset options = closed_[pivot] & undominated;
    for (auto u = options.find_first(); u != Bitset::npos; u = options.find_next(u)) {
      chosen.push_back(u);
      search(undominated - closed_[u], chosen);
      chosen.pop_back();
      if (chosen.size() + 1 >= best_.size()) return;
    }
  }

  // Each new member dominates at most max |N[u] ∩ undominated| vertices.
  std::size_t lower_bound(const Bitset& undominated) const {
    std::size_t reach = 1;
    for (auto u = undominated.find_first(); u != Bitset::npos; u = undominated.find_next(u))
      reach = std::max(reach, (closed_[u] & undominated).count());
    auto remaining = undominated.count();
    return (remaining + reach - 1) / reach;
  }

  const SimpleGraph& g_;
  std::size_t n_;
  std::vector<Bitset> closed_;
  std::vector<Vertex> best_;
};

}  // namespace detail

struct MmisResult {
  std::size_t size = 0;
  VertexSet witness;
};

inline MmisResult mmis_exact(const SimpleGraph& g, const SolverLimits& limits = {}) {
  if (g.num_vertices() > limits.mmis_vertices)
    throw CapExceeded("mmis_exact", g.num_vertices(), limits.mmis_vertices);
  auto set = detail::IndependentDominatingSearch(g).run();
  return {set.size(), VertexSet(std::move(set))};
}

/// Greedy maximal independent set that scans vertices in the given order.
inline VertexSet greedy_maximal_independent_set(const SimpleGraph& g, const std::vector<Vertex>& order) {
  Bitset blocked(g.num_vertices());
  std::vector<Vertex> set;
  for (auto v : order) {
    if (blocked[v]) continue;
    set.push_back(v);
    blocked |= g.neighbors(v);
    blocked.set(v);
  }
  return VertexSet(std::move(set));
}

// ---------------------------------------------------------------------------
// Graph power.

inline std::size_t checked_power(std::size_t base, std::size_t k, std::size_t cap, const char* stage) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (base != 0 && result > cap / base) throw CapExceeded(stage, cap + 1, cap);
    result *= base;
  }
  if (result > cap) throw CapExceeded(stage, result, cap);
  return result;
}

/// Decodes a power-graph vertex into its k coordinates (most significant first).
inline std::vector<Vertex> power_tuple(Vertex index, std::size_t n, std::size_t k) {
  std::vector<Vertex> tuple(k);
  for (std::size_t i = k; i-- > 0;) {
    tuple[i] = index % n;
    index /= n;
  }
  return tuple;
}

/// H^k on lexicographically indexed k-tuples: distinct tuples are adjacent iff
/// every coordinate pair is equal or an edge of H.
inline SimpleGraph graph_power(const SimpleGraph& h, std::size_t k, const SolverLimits& limits = {}) {
  const auto n = h.num_vertices();
  if (n == 0) throw InvalidArgument("graph_power needs at least one vertex");
  if (k == 0) throw InvalidArgument("graph_power exponent must be positive");
  const auto total = checked_power(n, k, limits.power_vertices, "graph_power");

  std::vector<std::vector<Vertex>> closed(n);
  for (Vertex v = 0; v < n; ++v) {
    Bitset c = h.neighbors(v);
    c.set(v);
    for (auto w = c.find_first(); w != Bitset::npos; w = c.find_next(w)) closed[v].push_back(w);
  }

  SimpleGraph out(total);
  std::vector<Vertex> tuple(k);
  for (Vertex t = 0; t < total; ++t) {
    tuple = power_tuple(t, n, k);
    // Enumerate the product of closed neighbourhoods; only keep larger indices.
    auto visit = [&](auto&& self, std::size_t coord, Vertex prefix) -> void {
      if (coord == k) {
        if (prefix > t) out.add_edge(t, prefix);
        return;
      }
      for (auto w : closed[tuple[coord]]) self(self, coord + 1, prefix * n + w);
    };
    visit(visit, 0, 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense-q-subgraph baseline: a spanning tree on q vertices.

struct DenseSubgraphResult {
  VertexSet vertices;
  std::vector<Edge> tree_edges;

  std::size_t edge_count() const noexcept { return tree_edges.size(); }
};

/// First q vertices of a BFS from vertex 0 together with their BFS-tree
/// edges; q - 1 edges on a connected subgraph.
inline DenseSubgraphResult dense_q_subgraph_tree(const SimpleGraph& g, std::size_t q) {
  if (q == 0) throw InvalidArgument("q must be positive");
  if (q > g.num_vertices())
    throw InvalidArgument("q = " + std::to_string(q) + " exceeds n = " + std::to_string(g.num_vertices()));
  std::vector<Vertex> parent;
  auto order = g.bfs_order(0, &parent);
  if (order.size() != g.num_vertices()) throw InvalidArgument("dense_q_subgraph_tree needs a connected graph");
  order.resize(q);
  DenseSubgraphResult result;
  for (std::size_t i = 1; i < q; ++i) {
    auto v = order[i];
    result.tree_edges.emplace_back(std::min(v, parent[v]), std::max(v, parent[v]));
  }
  result.vertices = VertexSet(std::move(order));
  return result;
}

/// Number of edges of g with both endpoints in s.
inline std::size_t induced_edge_count(const SimpleGraph& g, const VertexSet& s) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) count += g.adjacent(s[i], s[j]);
  return count;
}

}  // namespace gapred
