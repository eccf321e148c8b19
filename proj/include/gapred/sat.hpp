#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gapred/error.hpp"
#include "gapred/limits.hpp"

namespace gapred {

/// A literal over a 1-based variable index.
struct Literal {
  std::uint32_t variable = 1;
  bool negated = false;

  constexpr Literal() = default;
  constexpr Literal(std::uint32_t var, bool neg) : variable(var), negated(neg) {}

  /// From a DIMACS-style signed integer (nonzero).
  static Literal from_signed(long long value) {
    if (value == 0) throw InvalidArgument("literal 0 is not a variable");
    auto magnitude = value < 0 ? -value : value;
    return Literal(static_cast<std::uint32_t>(magnitude), value < 0);
  }

  constexpr long long to_signed() const noexcept {
    return negated ? -static_cast<long long>(variable) : static_cast<long long>(variable);
  }

  constexpr bool satisfied_by(bool value) const noexcept { return value != negated; }

  friend constexpr bool operator==(const Literal&, const Literal&) = default;
  friend constexpr auto operator<=>(const Literal&, const Literal&) = default;
};

/// Exactly three literals. A variable may repeat (the padding clauses carry
/// x and its complement side by side).
struct Clause {
  std::array<Literal, 3> literals{};

  constexpr Clause() = default;
  constexpr Clause(Literal a, Literal b, Literal c) : literals{a, b, c} {}

  /// Distinct variables in ascending order.
  std::vector<std::uint32_t> variables() const {
    std::vector<std::uint32_t> vars;
    for (const auto& lit : literals) vars.push_back(lit.variable);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
  }

  bool contains(Literal lit) const noexcept {
    return std::find(literals.begin(), literals.end(), lit) != literals.end();
  }

  bool is_tautology() const noexcept {
    for (const auto& lit : literals)
      if (contains(Literal(lit.variable, !lit.negated))) return true;
    return false;
  }

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Truth assignment over variables 1..q; entries may be unset.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_variables) : values_(num_variables) {}

  /// Total assignment from a bit vector where bits[i] is the value of x_{i+1}.
  static Assignment from_bits(const std::vector<bool>& bits) {
    Assignment a(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) a.values_[i] = bits[i];
    return a;
  }

  std::size_t num_variables() const noexcept { return values_.size(); }

  std::optional<bool> value(std::uint32_t variable) const {
    check(variable);
    return values_[variable - 1];
  }

  void set(std::uint32_t variable, bool v) {
    check(variable);
    values_[variable - 1] = v;
  }

  void unset(std::uint32_t variable) {
    check(variable);
    values_[variable - 1].reset();
  }

  bool is_total() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); });
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  void check(std::uint32_t variable) const {
    if (variable == 0 || variable > values_.size())
      throw InvalidArgument("variable " + std::to_string(variable) + " outside assignment domain");
  }

  std::vector<std::optional<bool>> values_;
};

/// A 3-CNF formula with q variables and an ordered clause list.
class CnfInstance {
 public:
  CnfInstance() = default;
  explicit CnfInstance(std::size_t num_variables, std::vector<Clause> clauses = {})
      : num_variables_(num_variables) {
    for (auto& c : clauses) add_clause(c);
  }

  std::size_t num_variables() const noexcept { return num_variables_; }
  std::size_t num_clauses() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  void add_clause(const Clause& clause) {
    for (const auto& lit : clause.literals) {
      if (lit.variable == 0 || lit.variable > num_variables_)
        throw InvalidArgument("literal variable " + std::to_string(lit.variable) +
                              " outside 1.." + std::to_string(num_variables_));
    }
    clauses_.push_back(clause);
  }

  /// Adds a fresh variable and returns its index.
  std::uint32_t add_variable() { return static_cast<std::uint32_t>(++num_variables_); }

  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;

 private:
  std::size_t num_variables_ = 0;
  std::vector<Clause> clauses_;
};

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view token) {
  Int value{};
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

inline std::string read_all(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace detail

/// Parses DIMACS CNF: comment lines start with 'c', a single "p cnf q m"
/// header, then one zero-terminated clause of exactly three literals per line.
inline CnfInstance parse_dimacs(std::string_view text) {
  using detail::parse_int;
  std::optional<CnfInstance> cnf;
  std::size_t declared_clauses = 0;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    auto tokens = detail::split_tokens(line);
    if (tokens.empty() || tokens.front().starts_with('c') || tokens.front() == "%") continue;
    if (tokens.front() == "p") {
      if (cnf || tokens.size() != 4 || tokens[1] != "cnf")
        throw ParseError(ParseErrorKind::malformed_header, line_no, std::string(line));
      auto q = parse_int<std::size_t>(tokens[2]);
      auto m = parse_int<std::size_t>(tokens[3]);
      if (!q || !m) throw ParseError(ParseErrorKind::malformed_header, line_no, std::string(line));
      cnf.emplace(*q);
      declared_clauses = *m;
      continue;
    }
    if (!cnf) throw ParseError(ParseErrorKind::malformed_header, line_no, "clause before header");
    std::vector<long long> values;
    for (auto tok : tokens) {
      auto v = parse_int<long long>(tok);
      if (!v) throw ParseError(ParseErrorKind::non_integer_token, line_no, std::string(tok));
      values.push_back(*v);
    }
    if (values.back() != 0)
      throw ParseError(ParseErrorKind::malformed_line, line_no, "clause not terminated by 0");
    values.pop_back();
    if (std::find(values.begin(), values.end(), 0LL) != values.end())
      throw ParseError(ParseErrorKind::malformed_line, line_no, "more than one clause on a line");
    if (values.size() != 3)
      throw ParseError(ParseErrorKind::clause_arity, line_no,
                       std::to_string(values.size()) + " literals");
    std::array<Literal, 3> lits;
    for (std::size_t i = 0; i < 3; ++i) {
      auto magnitude = values[i] < 0 ? -values[i] : values[i];
      if (static_cast<unsigned long long>(magnitude) > cnf->num_variables())
        throw ParseError(ParseErrorKind::variable_out_of_range, line_no,
                         std::to_string(values[i]));
      lits[i] = Literal::from_signed(values[i]);
    }
    cnf->add_clause(Clause(lits[0], lits[1], lits[2]));
  }
  if (!cnf) throw ParseError(ParseErrorKind::malformed_header, line_no, "missing 'p cnf' header");
  if (cnf->num_clauses() != declared_clauses)
    throw ParseError(ParseErrorKind::count_mismatch, line_no,
                     "declared " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(cnf->num_clauses()));
  return *cnf;
}

inline CnfInstance parse_dimacs(std::istream& in) { return parse_dimacs(detail::read_all(in)); }

inline void write_dimacs(std::ostream& out, const CnfInstance& cnf) {
  out << "p cnf " << cnf.num_variables() << ' ' << cnf.num_clauses() << '\n';
  for (const auto& clause : cnf.clauses()) {
    for (const auto& lit : clause.literals) out << lit.to_signed() << ' ';
    out << "0\n";
  }
}

inline std::string to_dimacs(const CnfInstance& cnf) {
  std::ostringstream out;
  write_dimacs(out, cnf);
  return out.str();
}

/// Appends tautologies (x1 v ~x1 v z_i), one fresh z_i each, until f divides m.
inline CnfInstance pad_clauses_to_divisible(const CnfInstance& cnf, std::size_t f) {
  if (f == 0) throw InvalidArgument("padding divisor must be positive");
  auto rem = cnf.num_clauses() % f;
  if (rem == 0) return cnf;
  if (cnf.num_variables() == 0)
    throw InvalidArgument("cannot pad a formula without variables: no x1 for (x1 v ~x1 v z)");
  CnfInstance out = cnf;
  for (std::size_t i = rem; i < f; ++i) {
    auto z = out.add_variable();
    out.add_clause(Clause(Literal(1, false), Literal(1, true), Literal(z, false)));
  }
  return out;
}

/// Introduces dummy variables through tautologies until f divides q.
inline CnfInstance pad_variables_to_divisible(const CnfInstance& cnf, std::size_t f) {
  if (f == 0) throw InvalidArgument("padding divisor must be positive");
  if (cnf.num_variables() == 0) throw InvalidArgument("variable padding needs q >= 1");
  auto rem = cnf.num_variables() % f;
  if (rem == 0) return cnf;
  CnfInstance out = cnf;
  for (std::size_t i = rem; i < f; ++i) {
    auto z = out.add_variable();
    out.add_clause(Clause(Literal(1, false), Literal(1, true), Literal(z, false)));
  }
  return out;
}

inline bool satisfies(const Clause& clause, const Assignment& a) {
  for (const auto& lit : clause.literals) {
    auto v = a.value(lit.variable);
    if (!v) throw InvalidArgument("assignment leaves x" + std::to_string(lit.variable) + " unset");
    if (lit.satisfied_by(*v)) return true;
  }
  return false;
}

/// Number of clauses satisfied by a total assignment.
inline std::size_t evaluate(const CnfInstance& cnf, const Assignment& a) {
  if (a.num_variables() != cnf.num_variables() || !a.is_total())
    throw InvalidArgument("evaluate needs a total assignment over 1.." +
                          std::to_string(cnf.num_variables()));
  return static_cast<std::size_t>(std::count_if(
      cnf.clauses().begin(), cnf.clauses().end(), [&](const Clause& c) { return satisfies(c, a); }));
}

struct MaxSatResult {
  std::size_t satisfied = 0;
  Assignment witness;
};

/// Exhaustive MaxSAT. Assignments are visited in lexicographic order of
/// (x1, ..., xq) with false < true, so the witness is the lexicographically
/// smallest optimal assignment.
inline MaxSatResult max_sat_bruteforce(const CnfInstance& cnf, const SolverLimits& limits = {}) {
  const auto q = cnf.num_variables();
  if (q > limits.maxsat_variables || q > 62)
    throw CapExceeded("max_sat_bruteforce", q, std::min<std::size_t>(limits.maxsat_variables, 62));
  // x_v lives at bit (q - v) so counting upward is lexicographic with x1 most significant.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
  masks.reserve(cnf.num_clauses());
  for (const auto& clause : cnf.clauses()) {
    std::uint64_t pos = 0, neg = 0;
    for (const auto& lit : clause.literals) {
      auto bit = std::uint64_t{1} << (q - lit.variable);
      (lit.negated ? neg : pos) |= bit;
    }
    masks.emplace_back(pos, neg);
  }
  const std::uint64_t total = std::uint64_t{1} << q;
  std::size_t best = 0;
  std::uint64_t best_bits = 0;
  bool first = true;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::size_t sat = 0;
    for (const auto& [pos, neg] : masks) sat += ((bits & pos) | (~bits & neg)) != 0;
    if (first || sat > best) {
      best = sat;
      best_bits = bits;
      first = false;
      if (best == masks.size()) break;
    }
  }
  Assignment witness(q);
  for (std::uint32_t v = 1; v <= q; ++v) witness.set(v, (best_bits >> (q - v)) & 1U);
  return {best, witness};
}

inline bool is_satisfiable(const CnfInstance& cnf, const SolverLimits& limits = {}) {
  return max_sat_bruteforce(cnf, limits).satisfied == cnf.num_clauses();
}

}  // namespace gapred
