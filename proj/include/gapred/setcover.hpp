#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/functional/hash.hpp>

#include "gapred/error.hpp"
#include "gapred/limits.hpp"
#include "gapred/sat.hpp"

namespace gapred {

using ElementSet = std::vector<std::size_t>;

/// Universe {0..universeSize-1} plus an ordered family of subsets.
class SetCoverInstance {
 public:
  SetCoverInstance() = default;
  SetCoverInstance(std::size_t universe_size, std::vector<ElementSet> family)
      : universe_size_(universe_size) {
    for (auto& s : family) add_set(std::move(s));
  }

  std::size_t universe_size() const noexcept { return universe_size_; }
  std::size_t family_size() const noexcept { return family_.size(); }
  const std::vector<ElementSet>& family() const noexcept { return family_; }
  const ElementSet& set(std::size_t i) const { return family_.at(i); }

  /// Elements are stored sorted and deduplicated.
  std::size_t add_set(ElementSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= universe_size_)
      throw InvalidArgument("element " + std::to_string(s.back()) + " outside universe of size " +
                            std::to_string(universe_size_));
    family_.push_back(std::move(s));
    return family_.size() - 1;
  }

  /// Smallest element no set covers, if any.
  std::optional<std::size_t> first_uncovered() const {
    std::vector<bool> covered(universe_size_, false);
    for (const auto& s : family_)
      for (auto e : s) covered[e] = true;
    for (std::size_t e = 0; e < universe_size_; ++e)
      if (!covered[e]) return e;
    return std::nullopt;
  }

  bool is_feasible() const { return !first_uncovered(); }

  /// True iff the chosen indices cover the universe.
  bool is_cover(const std::vector<std::size_t>& indices) const {
    std::vector<bool> covered(universe_size_, false);
    for (auto i : indices)
      for (auto e : family_.at(i)) covered[e] = true;
    return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
  }

  friend bool operator==(const SetCoverInstance&, const SetCoverInstance&) = default;

 private:
  std::size_t universe_size_ = 0;
  std::vector<ElementSet> family_;
};

// Set-system text format: "universeSize familySize", then one line per set:
// the element count followed by that many 0-based elements.

inline SetCoverInstance parse_set_system(std::string_view text) {
  using detail::parse_int;
  std::optional<SetCoverInstance> inst;
  std::size_t declared = 0, line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;
    std::vector<std::size_t> values;
    for (auto tok : tokens) {
      auto v = parse_int<std::size_t>(tok);
      if (!v) throw ParseError(ParseErrorKind::non_integer_token, line_no, std::string(tok));
      values.push_back(*v);
    }
    if (!inst) {
      if (values.size() != 2) throw ParseError(ParseErrorKind::malformed_header, line_no, std::string(line));
      inst.emplace(values[0], std::vector<ElementSet>{});
      declared = values[1];
      continue;
    }
    if (values[0] + 1 != values.size())
      throw ParseError(ParseErrorKind::count_mismatch, line_no,
                       "set declares " + std::to_string(values[0]) + " elements, lists " +
                           std::to_string(values.size() - 1));
    ElementSet s(values.begin() + 1, values.end());
    for (auto e : s)
      if (e >= inst->universe_size())
        throw ParseError(ParseErrorKind::index_out_of_range, line_no, std::to_string(e));
    inst->add_set(std::move(s));
  }
  if (!inst) throw ParseError(ParseErrorKind::malformed_header, line_no, "missing header");
  if (inst->family_size() != declared)
    throw ParseError(ParseErrorKind::count_mismatch, line_no,
                     "declared " + std::to_string(declared) + " sets, found " +
                         std::to_string(inst->family_size()));
  return *inst;
}

inline void write_set_system(std::ostream& out, const SetCoverInstance& inst) {
  out << inst.universe_size() << ' ' << inst.family_size() << '\n';
  for (const auto& s : inst.family()) {
    out << s.size();
    for (auto e : s) out << ' ' << e;
    out << '\n';
  }
}

inline std::string to_set_system(const SetCoverInstance& inst) {
  std::ostringstream out;
  write_set_system(out, inst);
  return out.str();
}

struct SetCoverResult {
  std::size_t size = 0;
  std::vector<std::size_t> indices;
};

namespace detail {

/// Decision search "can `need` be covered by at most `budget` sets whose
/// index is >= min_index", branching on the uncovered element with the
/// fewest eligible sets.
class CoverSearch {
 public:
  using Bits = boost::dynamic_bitset<>;

  explicit CoverSearch(const SetCoverInstance& inst) : n_(inst.universe_size()) {
    for (const auto& s : inst.family()) {
      Bits b(n_);
      for (auto e : s) b.set(e);
      sets_.push_back(std::move(b));
    }
    containing_.resize(n_);
    for (std::size_t i = 0; i < sets_.size(); ++i)
      for (auto e : inst.family()[i]) containing_[e].push_back(i);
  }

  bool coverable(const Bits& need, std::size_t budget, std::size_t min_index) const {
    if (need.none()) return true;
    if (budget == 0) return false;
    std::size_t largest = 0;
    for (std::size_t i = min_index; i < sets_.size(); ++i)
      largest = std::max(largest, (sets_[i] & need).count());
    if (largest == 0 || largest * budget < need.count()) return false;

    std::size_t pivot = Bits::npos, fewest = Bits::npos;
    for (auto e = need.find_first(); e != Bits::npos; e = need.find_next(e)) {
      std::size_t options = 0;
      for (auto i : containing_[e]) options += i >= min_index;
      if (options < fewest) {
        fewest = options;
        pivot = e;
        if (options <= 1) break;
      }
    }
    if (fewest == 0) return false;
    for (auto i : containing_[pivot]) {
      if (i < min_index) continue;
      if (coverable(need - sets_[i], budget - 1, min_index)) return true;
    }
    return false;
  }

  const Bits& set_bits(std::size_t i) const { return sets_[i]; }
  std::size_t family_size() const noexcept { return sets_.size(); }
  Bits universe() const { return Bits(n_).set(); }

 private:
  std::size_t n_;
  std::vector<Bits> sets_;
  std::vector<std::vector<std::size_t>> containing_;
};

}  // namespace detail

/// Minimum set cover. Among all minimum covers the lexicographically least
/// sorted index list is returned.
inline SetCoverResult setcover_exact(const SetCoverInstance& inst, const SolverLimits& limits = {}) {
  if (inst.family_size() > limits.setcover_family)
    throw CapExceeded("setcover_exact", inst.family_size(), limits.setcover_family);
  if (auto e = inst.first_uncovered()) throw Infeasible(*e);
  detail::CoverSearch search(inst);
  auto need = search.universe();
  std::size_t k = 0;
  while (!search.coverable(need, k, 0)) ++k;

  SetCoverResult result{k, {}};
  std::size_t next = 0;
  while (need.any()) {
    const auto remaining = k - result.indices.size();
    bool extended = false;
    for (std::size_t i = next; i < search.family_size() && !extended; ++i) {
      auto rest = need - search.set_bits(i);
      if (search.coverable(rest, remaining - 1, i + 1)) {
        result.indices.push_back(i);
        need = std::move(rest);
        next = i + 1;
        extended = true;
      }
    }
    if (!extended) throw Error("setcover_exact: witness reconstruction failed");
  }
  return result;
}

/// Greedy: repeatedly take the set covering the most uncovered elements,
/// lowest index on ties.
inline std::vector<std::size_t> setcover_greedy(const SetCoverInstance& inst) {
  if (auto e = inst.first_uncovered()) throw Infeasible(*e);
  std::vector<bool> covered(inst.universe_size(), false);
  std::size_t remaining = inst.universe_size();
  std::vector<std::size_t> picked;
  while (remaining > 0) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t i = 0; i < inst.family_size(); ++i) {
      std::size_t gain = 0;
      for (auto e : inst.set(i)) gain += !covered[e];
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    picked.push_back(best);
    for (auto e : inst.set(best)) {
      if (!covered[e]) --remaining;
      covered[e] = true;
    }
  }
  return picked;
}

struct UnionClosure {
  SetCoverInstance instance;
  /// New set index -> constituent old indices (ascending).
  std::vector<std::vector<std::size_t>> provenance;
};

/// sum_{p=1}^{P} C(F, p), saturating at `cap + 1`.
inline std::size_t union_closure_size(std::size_t family, std::size_t max_parts, std::size_t cap) {
  std::size_t total = 0;
  long double binom = 1;
  for (std::size_t p = 1; p <= max_parts; ++p) {
    binom = binom * static_cast<long double>(family - p + 1) / static_cast<long double>(p);
    total += static_cast<std::size_t>(std::min<long double>(binom + 0.5L, static_cast<long double>(cap) + 1));
    if (total > cap) return cap + 1;
  }
  return total;
}

/// One set per subcollection of 1..P old sets (ordered by size, then
/// lexicographically), holding the union. Duplicate unions are kept unless
/// `dedup` is set, in which case the first occurrence wins.
inline UnionClosure union_closure_transform(const SetCoverInstance& inst, std::size_t max_parts,
                                            bool dedup = false, const SolverLimits& limits = {}) {
  const auto family = inst.family_size();
  if (max_parts == 0 || max_parts > family)
    throw InvalidArgument("union size P must be in 1..familySize");
  auto count = union_closure_size(family, max_parts, limits.union_family);
  if (count > limits.union_family) throw CapExceeded("union_closure_transform", count, limits.union_family);

  UnionClosure out;
  out.instance = SetCoverInstance(inst.universe_size(), {});
  std::unordered_set<ElementSet, boost::hash<ElementSet>> seen;
  std::vector<std::size_t> combo;
  for (std::size_t p = 1; p <= max_parts; ++p) {
    combo.resize(p);
    for (std::size_t i = 0; i < p; ++i) combo[i] = i;
    while (true) {
      ElementSet u;
      for (auto i : combo) u.insert(u.end(), inst.set(i).begin(), inst.set(i).end());
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      if (!dedup || seen.insert(u).second) {
        out.instance.add_set(std::move(u));
        out.provenance.push_back(combo);
      }
      // Next combination in lexicographic order.
      std::size_t i = p;
      while (i > 0 && combo[i - 1] == family - p + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < p; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return out;
}

/// Maps a cover of the union-closed instance back to old set indices.
inline std::vector<std::size_t> expand_union_cover(const UnionClosure& closure,
                                                   const std::vector<std::size_t>& cover) {
  std::vector<std::size_t> out;
  for (auto i : cover)
    out.insert(out.end(), closure.provenance.at(i).begin(), closure.provenance.at(i).end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gapred
