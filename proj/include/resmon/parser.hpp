#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "resmon/formula.hpp"

namespace resmon {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ParseOptions {
  /// When set, interval bounds and R-atom bounds are read in seconds and
  /// divided by this step size; non-integral results are rejected.
  std::optional<double> seconds_per_step;
};

template <class Formula>
struct ParseResult {
  Formula formula;
  /// Non-fatal diagnostics, e.g. strict comparisons read as non-strict.
  std::vector<std::string> warnings;
};

// Surface grammar, loosest binding first:
//
//   formula := disj ('U' ival formula)?            right-associative
//   disj    := conj ('or' conj)*
//   conj    := unary ('and' unary)*
//   unary   := 'not' unary | ('G' | 'F') ival unary | primary
//   ival    := '[' num ',' num ']'                  ('G' also takes '[a,b)')
//
// STL primaries are '(' formula ')' or atoms `affine (>=|<=|>|<) number`;
// a bare channel name `p` reads as `p >= 0.5`. SRS primaries are
// '(' formula ')' or `R[alpha,beta](stl)`.

ParseResult<StlFormula> parse_stl_with_warnings(std::string_view text,
                                                const ParseOptions& options = {});
ParseResult<SrsFormula> parse_srs_with_warnings(std::string_view text,
                                                const ParseOptions& options = {});

StlFormula parse_stl(std::string_view text, const ParseOptions& options = {});
SrsFormula parse_srs(std::string_view text, const ParseOptions& options = {});

}  // namespace resmon
