#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gapred {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (bad parameter, out-of-range index).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exact solver or construction refused to run because its input exceeds
/// the configured cap. `requested` is the size that would have been needed.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string what_stage, std::size_t requested, std::size_t cap)
      : Error(what_stage + ": size " + std::to_string(requested) + " exceeds cap " +
              std::to_string(cap)),
        stage_(std::move(what_stage)),
        requested_(requested),
        cap_(cap) {}

  const std::string& stage() const noexcept { return stage_; }
  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::string stage_;
  std::size_t requested_;
  std::size_t cap_;
};

/// A set-cover instance whose family does not cover the universe.
class Infeasible : public Error {
 public:
  explicit Infeasible(std::size_t element)
      : Error("infeasible instance: element " + std::to_string(element) + " is not covered"),
        element_(element) {}

  std::size_t uncovered_element() const noexcept { return element_; }

 private:
  std::size_t element_;
};

enum class ParseErrorKind {
  malformed_header,
  clause_arity,
  variable_out_of_range,
  non_integer_token,
  count_mismatch,
  malformed_line,
  index_out_of_range,
};

inline const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::malformed_header: return "malformed header";
    case ParseErrorKind::clause_arity: return "clause arity is not 3";
    case ParseErrorKind::variable_out_of_range: return "variable index out of range";
    case ParseErrorKind::non_integer_token: return "non-integer token";
    case ParseErrorKind::count_mismatch: return "declared count mismatch";
    case ParseErrorKind::malformed_line: return "malformed line";
    case ParseErrorKind::index_out_of_range: return "index out of range";
  }
  return "parse error";
}

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
      : Error("line " + std::to_string(line) + ": " + to_string(kind) +
              (detail.empty() ? std::string{} : ": " + detail)),
        kind_(kind),
        line_(line) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  /// 1-based line number of the offending input line.
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

}  // namespace gapred
