#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "gapred/error.hpp"
#include "gapred/graph.hpp"
#include "gapred/limits.hpp"
#include "gapred/rng.hpp"
#include "gapred/setcover.hpp"

namespace gapred {

/// (left group index, right group index).
using Superedge = std::pair<std::size_t, std::size_t>;

/// Bipartite Min-Rep instance. Vertex ids are global (0..n-1); every vertex
/// belongs to exactly one left group A_i or right group B_j.
class MinRepInstance {
 public:
  MinRepInstance() = default;
  MinRepInstance(std::vector<std::vector<Vertex>> left, std::vector<std::vector<Vertex>> right,
                 std::vector<Edge> edges)
      : left_(std::move(left)), right_(std::move(right)) {
    std::size_t n = 0;
    for (const auto* side : {&left_, &right_})
      for (const auto& group : *side) {
        if (group.empty()) throw InvalidArgument("Min-Rep groups must be nonempty");
        n += group.size();
      }
    group_of_.assign(n, npos);
    is_left_.assign(n, false);
    auto place = [&](const std::vector<std::vector<Vertex>>& side, bool left) {
      for (std::size_t g = 0; g < side.size(); ++g)
        for (auto v : side[g]) {
          if (v >= n) throw InvalidArgument("vertex id " + std::to_string(v) + " out of range");
          if (group_of_[v] != npos) throw InvalidArgument("vertex " + std::to_string(v) + " in two groups");
          group_of_[v] = g;
          is_left_[v] = left;
        }
    };
    place(left_, true);
    place(right_, false);

    std::map<Superedge, std::vector<Edge>> by_superedge;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [a, b] : edges) {
      if (a >= n || b >= n) throw InvalidArgument("edge endpoint out of range");
      if (!is_left_[a] && is_left_[b]) std::swap(a, b);
      if (!is_left_[a] || is_left_[b]) throw InvalidArgument("edges must join a left and a right vertex");
      by_superedge[{group_of_[a], group_of_[b]}].emplace_back(a, b);
    }
    for (auto& [se, es] : by_superedge) {
      std::sort(es.begin(), es.end());
      superedges_.push_back(se);
      superedge_edges_.push_back(std::move(es));
      for (auto e : superedge_edges_.back()) edges_.push_back(e);
    }
  }

  std::size_t num_vertices() const noexcept { return group_of_.size(); }
  const std::vector<std::vector<Vertex>>& left_groups() const noexcept { return left_; }
  const std::vector<std::vector<Vertex>>& right_groups() const noexcept { return right_; }
  /// Edges normalised to (left, right), grouped by superedge.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Derived superedge set E+, sorted.
  const std::vector<Superedge>& superedges() const noexcept { return superedges_; }
  const std::vector<Edge>& superedge_edges(std::size_t s) const { return superedge_edges_.at(s); }
  bool is_left(Vertex v) const { return is_left_.at(v); }
  std::size_t group_of(Vertex v) const { return group_of_.at(v); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::vector<std::vector<Vertex>> left_, right_;
  std::vector<std::size_t> group_of_;
  std::vector<bool> is_left_;
  std::vector<Edge> edges_;
  std::vector<Superedge> superedges_;
  std::vector<std::vector<Edge>> superedge_edges_;
};

inline MinRepInstance minrep_from_json(const nlohmann::json& j) {
  try {
    return MinRepInstance(j.at("left").get<std::vector<std::vector<Vertex>>>(),
                          j.at("right").get<std::vector<std::vector<Vertex>>>(),
                          j.at("edges").get<std::vector<Edge>>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed Min-Rep JSON: ") + e.what());
  }
}

inline nlohmann::json minrep_to_json(const MinRepInstance& inst) {
  return {{"left", inst.left_groups()}, {"right", inst.right_groups()}, {"edges", inst.edges()}};
}

struct MinRepCoverCheck {
  bool covered = true;
  std::optional<Superedge> first_uncovered;

  explicit operator bool() const noexcept { return covered; }
};

/// S covers superedge (i, j) iff some edge (a, b) has a ∈ A_i ∩ S and b ∈ B_j ∩ S.
inline MinRepCoverCheck minrep_cover_check(const MinRepInstance& inst, const VertexSet& s) {
  std::vector<bool> in(inst.num_vertices(), false);
  for (auto v : s) {
    if (v >= inst.num_vertices()) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
    in[v] = true;
  }
  for (std::size_t k = 0; k < inst.superedges().size(); ++k) {
    const auto& es = inst.superedge_edges(k);
    bool hit = std::any_of(es.begin(), es.end(), [&](const Edge& e) { return in[e.first] && in[e.second]; });
    if (!hit) return {false, inst.superedges()[k]};
  }
  return {};
}

namespace detail {

/// "Can the chosen set be extended by at most `budget` vertices, all with
/// id >= min_vertex, into a Min-Rep cover?" Branches on the uncovered
/// superedge with the fewest usable edges.
class MinRepSearch {
 public:
  using Bits = boost::dynamic_bitset<>;

  explicit MinRepSearch(const MinRepInstance& inst) : inst_(inst) {}

  bool coverable(Bits& chosen, std::size_t budget, std::size_t min_vertex) const {
    const auto& ses = inst_.superedges();
    std::size_t pivot = ses.size(), fewest = static_cast<std::size_t>(-1);
    Bits needy_groups(inst_.left_groups().size() + inst_.right_groups().size());
    Bits has_member(needy_groups.size());
    for (auto v = chosen.find_first(); v != Bits::npos; v = chosen.find_next(v))
      has_member.set(group_index(v));
    std::size_t unlabelled_uncovered = 0;
    for (std::size_t k = 0; k < ses.size(); ++k) {
      std::size_t usable = 0;
      bool covered = false;
      for (auto [a, b] : inst_.superedge_edges(k)) {
        if (chosen[a] && chosen[b]) {
          covered = true;
          break;
        }
        std::size_t extra = (!chosen[a]) + (!chosen[b]);
        bool allowed = (chosen[a] || a >= min_vertex) && (chosen[b] || b >= min_vertex);
        if (allowed && extra <= budget) ++usable;
      }
      if (covered) continue;
      if (usable == 0) return false;
      auto gl = ses[k].first;
      auto gr = inst_.left_groups().size() + ses[k].second;
      bool fresh = false;
      if (!has_member[gl]) needy_groups.set(gl), fresh = true;
      if (!has_member[gr]) needy_groups.set(gr), fresh = true;
      if (!fresh) ++unlabelled_uncovered;
      if (usable < fewest) {
        fewest = usable;
        pivot = k;
      }
    }
    if (pivot == ses.size()) return true;
    // Each group with an uncovered superedge and no chosen member needs its own vertex.
    auto lower = std::max<std::size_t>(needy_groups.count(), unlabelled_uncovered > 0 ? 1 : 0);
    if (lower > budget) return false;

    for (auto [a, b] : inst_.superedge_edges(pivot)) {
      std::size_t extra = (!chosen[a]) + (!chosen[b]);
      bool allowed = (chosen[a] || a >= min_vertex) && (chosen[b] || b >= min_vertex);
      if (!allowed || extra > budget) continue;
      bool add_a = !chosen[a], add_b = !chosen[b];
      if (add_a) chosen.set(a);
      if (add_b) chosen.set(b);
      bool ok = coverable(chosen, budget - extra, min_vertex);
      if (add_a) chosen.reset(a);
      if (add_b) chosen.reset(b);
      if (ok) return true;
    }
    return false;
  }

 private:
  std::size_t group_index(Vertex v) const {
    return inst_.is_left(v) ? inst_.group_of(v) : inst_.left_groups().size() + inst_.group_of(v);
  }

  const MinRepInstance& inst_;
};

}  // namespace detail

struct MinRepResult {
  std::size_t size = 0;
  VertexSet witness;
};

/// Minimum Min-Rep cover; the lexicographically least one among minima.
inline MinRepResult minrep_exact(const MinRepInstance& inst, const SolverLimits& limits = {}) {
  const auto n = inst.num_vertices();
  if (n > limits.minrep_vertices) throw CapExceeded("minrep_exact", n, limits.minrep_vertices);
  detail::MinRepSearch search(inst);
  detail::MinRepSearch::Bits chosen(n);
  std::size_t k = 0;
  while (!search.coverable(chosen, k, 0)) {
    if (++k > n) throw Error("minrep_exact: instance has an uncoverable superedge");
  }
  std::vector<Vertex> witness;
  std::size_t next = 0;
  while (!minrep_cover_check(inst, VertexSet(witness))) {
    bool extended = false;
    for (Vertex v = next; v < n && !extended; ++v) {
      chosen.set(v);
      if (search.coverable(chosen, k - witness.size() - 1, v + 1)) {
        witness.push_back(v);
        next = v + 1;
        extended = true;
      } else {
        chosen.reset(v);
      }
    }
    if (!extended) throw Error("minrep_exact: witness reconstruction failed");
  }
  return {k, VertexSet(std::move(witness))};
}

struct ProjectionCheck {
  bool ok = true;
  /// Right vertex with two left neighbours inside one superedge.
  std::optional<Vertex> violation;

  explicit operator bool() const noexcept { return ok; }
};

/// Every superedge's bipartite graph is a disjoint union of stars headed in
/// A_i, i.e. each right vertex has at most one neighbour in A_i.
inline ProjectionCheck check_projection_property(const MinRepInstance& inst) {
  for (std::size_t k = 0; k < inst.superedges().size(); ++k) {
    std::map<Vertex, std::size_t> left_degree;
    for (auto [a, b] : inst.superedge_edges(k))
      if (++left_degree[b] > 1) return {false, b};
  }
  return {};
}

enum class HalvesMode { per_edge, per_vertex };

struct MinRepSetCover {
  SetCoverInstance instance;
  /// Superedge k owns elements [element_ranges[k].first, element_ranges[k].second).
  std::vector<Superedge> superedges;
  std::vector<std::pair<std::size_t, std::size_t>> element_ranges;
};

/// Min-Rep -> SetCover with random halves. Set v belongs to Min-Rep vertex v.
/// Superedge k (in sorted order) owns a block M_k of `elements_per_superedge`
/// consecutive fresh elements. Per edge (a, b) of the superedge, M_k is
/// shuffled with a SplitMix64 stream seeded once by `seed`; the first half
/// goes to a and the rest to b. In per-vertex mode each left vertex draws one
/// half per superedge and its right neighbours receive the complement.
inline MinRepSetCover minrep_to_setcover(const MinRepInstance& inst, std::size_t elements_per_superedge,
                                         std::uint64_t seed, HalvesMode mode = HalvesMode::per_edge) {
  if (elements_per_superedge < 2 || elements_per_superedge % 2 != 0)
    throw InvalidArgument("elements per superedge must be even and >= 2");
  const auto blocks = inst.superedges().size();
  const auto half = elements_per_superedge / 2;
  std::vector<ElementSet> sets(inst.num_vertices());
  SplitMix64 rng(seed);
  MinRepSetCover out;
  for (std::size_t k = 0; k < blocks; ++k) {
    const auto base = k * elements_per_superedge;
    out.superedges.push_back(inst.superedges()[k]);
    out.element_ranges.emplace_back(base, base + elements_per_superedge);
    std::vector<std::size_t> block(elements_per_superedge);
    auto draw = [&] {
      for (std::size_t i = 0; i < block.size(); ++i) block[i] = base + i;
      rng.shuffle(block);
    };
    if (mode == HalvesMode::per_edge) {
      for (auto [a, b] : inst.superedge_edges(k)) {
        draw();
        sets[a].insert(sets[a].end(), block.begin(), block.begin() + half);
        sets[b].insert(sets[b].end(), block.begin() + half, block.end());
      }
    } else {
      std::map<Vertex, std::vector<std::size_t>> head_half;
      for (auto [a, b] : inst.superedge_edges(k)) {
        auto it = head_half.find(a);
        if (it == head_half.end()) {
          draw();
          sets[a].insert(sets[a].end(), block.begin(), block.begin() + half);
          it = head_half.emplace(a, std::vector<std::size_t>(block.begin() + half, block.end())).first;
        }
        sets[b].insert(sets[b].end(), it->second.begin(), it->second.end());
      }
    }
  }
  out.instance = SetCoverInstance(blocks * elements_per_superedge, std::move(sets));
  return out;
}

inline nlohmann::json element_map_to_json(const MinRepSetCover& reduced) {
  auto arr = nlohmann::json::array();
  for (std::size_t k = 0; k < reduced.superedges.size(); ++k)
    arr.push_back({{"superedge", {reduced.superedges[k].first, reduced.superedges[k].second}},
                   {"elements", {reduced.element_ranges[k].first, reduced.element_ranges[k].second}}});
  return arr;
}

}  // namespace gapred
