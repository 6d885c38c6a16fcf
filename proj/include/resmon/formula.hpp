#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "resmon/trace.hpp"

namespace resmon {

/// Bounded interval [lo, hi] of integer steps.
struct Interval {
  Step lo = 0;
  Step hi = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Affine map over named channels: sum(coef * channel) + constant.
struct AffineExpr {
  struct Term {
    double coef = 1.0;
    std::string channel;
    friend bool operator==(const Term&, const Term&) = default;
  };
  std::vector<Term> terms;
  double constant = 0.0;

  friend bool operator==(const AffineExpr&, const AffineExpr&) = default;
};

enum class Relation { ge, le };

// ---------------------------------------------------------------------------
// STL

struct StlNode;
/// Immutable, shareable STL syntax tree. Never null once built.
using StlFormula = std::shared_ptr<const StlNode>;

namespace stl {

struct Atom {
  AffineExpr expr;
  Relation relation = Relation::ge;
  double threshold = 0.0;
};
struct Not {
  StlFormula arg;
};
struct And {
  StlFormula lhs, rhs;
};
struct Or {
  StlFormula lhs, rhs;
};
/// lhs U_[lo,hi] rhs.
struct Until {
  Interval interval;
  StlFormula lhs, rhs;
};
/// G_[lo,hi] arg when `closed`, G_[lo,hi) arg otherwise.
struct Always {
  Interval interval;
  bool closed = true;
  StlFormula arg;
};
struct Eventually {
  Interval interval;
  StlFormula arg;
};

}  // namespace stl

struct StlNode {
  std::variant<stl::Atom, stl::Not, stl::And, stl::Or, stl::Until, stl::Always, stl::Eventually> op;
};

namespace stl {

StlFormula atom(AffineExpr expr, Relation relation, double threshold);
/// Shorthand for `channel >= threshold`.
StlFormula atom(const std::string& channel, double threshold);
StlFormula negate(StlFormula arg);
StlFormula conj(StlFormula lhs, StlFormula rhs);
StlFormula disj(StlFormula lhs, StlFormula rhs);
StlFormula until(Interval interval, StlFormula lhs, StlFormula rhs);
StlFormula always(Interval interval, StlFormula arg, bool closed = true);
StlFormula eventually(Interval interval, StlFormula arg);

}  // namespace stl

// ---------------------------------------------------------------------------
// SRS

struct SrsNode;
using SrsFormula = std::shared_ptr<const SrsNode>;

namespace srs {

/// R_{alpha,beta}(body) == (not body) U_[0,alpha] G_[0,beta) body.
struct RAtom {
  Step alpha = 0;
  Step beta = 1;
  StlFormula body;
};
struct Not {
  SrsFormula arg;
};
struct And {
  SrsFormula lhs, rhs;
};
struct Or {
  SrsFormula lhs, rhs;
};
struct Until {
  Interval interval;
  SrsFormula lhs, rhs;
};
struct Always {
  Interval interval;
  SrsFormula arg;
};
struct Eventually {
  Interval interval;
  SrsFormula arg;
};

}  // namespace srs

struct SrsNode {
  std::variant<srs::RAtom, srs::Not, srs::And, srs::Or, srs::Until, srs::Always, srs::Eventually>
      op;
};

namespace srs {

SrsFormula resilience(Step alpha, Step beta, StlFormula body);
SrsFormula negate(SrsFormula arg);
SrsFormula conj(SrsFormula lhs, SrsFormula rhs);
SrsFormula disj(SrsFormula lhs, SrsFormula rhs);
SrsFormula until(Interval interval, SrsFormula lhs, SrsFormula rhs);
SrsFormula always(Interval interval, SrsFormula arg);
SrsFormula eventually(Interval interval, SrsFormula arg);

}  // namespace srs

class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Number of samples after t needed to decide the formula at t.
Step horizon(const StlFormula& formula);
Step horizon(const SrsFormula& formula);

/// Replaces every R atom by its STL expansion; everything else is copied.
StlFormula srs_to_stl(const SrsFormula& formula);

/// R atoms in pre-order (left to right). Indices into this list identify atoms
/// in evaluation reports.
std::vector<const srs::RAtom*> collect_atoms(const SrsFormula& formula);

/// Canonical, fully parenthesised text that parses back to the same tree.
std::string to_string(const StlFormula& formula);
std::string to_string(const SrsFormula& formula);
std::string to_string(const AffineExpr& expr);

bool structurally_equal(const StlFormula& a, const StlFormula& b);
bool structurally_equal(const SrsFormula& a, const SrsFormula& b);

/// Number of nodes in the tree.
std::size_t size(const StlFormula& formula);
std::size_t size(const SrsFormula& formula);

}  // namespace resmon
