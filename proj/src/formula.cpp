#include "resmon/formula.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "resmon/detail/overloaded.hpp"

namespace resmon {

namespace {

using detail::overloaded;

void check_interval(const Interval& interval) {
  if (interval.lo < 0 || interval.hi < interval.lo) {
    throw FormulaError(fmt::format("invalid interval [{},{}]", interval.lo, interval.hi));
  }
}

template <class Ptr>
const Ptr& require(const Ptr& p) {
  if (!p) throw FormulaError("null subformula");
  return p;
}

std::string number(double v) { return fmt::format("{}", v); }

std::string interval_text(const Interval& i, bool closed = true) {
  return fmt::format("[{},{}{}", i.lo, i.hi, closed ? ']' : ')');
}

}  // namespace

namespace stl {

StlFormula atom(AffineExpr expr, Relation relation, double threshold) {
  if (!std::isfinite(threshold)) throw FormulaError("atom threshold must be finite");
  return std::make_shared<const StlNode>(StlNode{Atom{std::move(expr), relation, threshold}});
}

StlFormula atom(const std::string& channel, double threshold) {
  return atom(AffineExpr{{{1.0, channel}}, 0.0}, Relation::ge, threshold);
}

StlFormula negate(StlFormula arg) {
  return std::make_shared<const StlNode>(StlNode{Not{std::move(require(arg))}});
}

StlFormula conj(StlFormula lhs, StlFormula rhs) {
  require(lhs), require(rhs);
  return std::make_shared<const StlNode>(StlNode{And{std::move(lhs), std::move(rhs)}});
}

StlFormula disj(StlFormula lhs, StlFormula rhs) {
  require(lhs), require(rhs);
  return std::make_shared<const StlNode>(StlNode{Or{std::move(lhs), std::move(rhs)}});
}

StlFormula until(Interval interval, StlFormula lhs, StlFormula rhs) {
  check_interval(interval);
  require(lhs), require(rhs);
  return std::make_shared<const StlNode>(StlNode{Until{interval, std::move(lhs), std::move(rhs)}});
}

StlFormula always(Interval interval, StlFormula arg, bool closed) {
  check_interval(interval);
  if (!closed && interval.hi == interval.lo) {
    throw FormulaError(fmt::format("empty half-open interval [{},{})", interval.lo, interval.hi));
  }
  require(arg);
  return std::make_shared<const StlNode>(StlNode{Always{interval, closed, std::move(arg)}});
}

StlFormula eventually(Interval interval, StlFormula arg) {
  check_interval(interval);
  require(arg);
  return std::make_shared<const StlNode>(StlNode{Eventually{interval, std::move(arg)}});
}

}  // namespace stl

namespace srs {

SrsFormula resilience(Step alpha, Step beta, StlFormula body) {
  if (alpha < 0) throw FormulaError(fmt::format("alpha must be non-negative, got {}", alpha));
  if (beta <= 0) throw FormulaError(fmt::format("beta must be positive, got {}", beta));
  require(body);
  return std::make_shared<const SrsNode>(SrsNode{RAtom{alpha, beta, std::move(body)}});
}

SrsFormula negate(SrsFormula arg) {
  return std::make_shared<const SrsNode>(SrsNode{Not{std::move(require(arg))}});
}

SrsFormula conj(SrsFormula lhs, SrsFormula rhs) {
  require(lhs), require(rhs);
  return std::make_shared<const SrsNode>(SrsNode{And{std::move(lhs), std::move(rhs)}});
}

SrsFormula disj(SrsFormula lhs, SrsFormula rhs) {
  require(lhs), require(rhs);
  return std::make_shared<const SrsNode>(SrsNode{Or{std::move(lhs), std::move(rhs)}});
}

SrsFormula until(Interval interval, SrsFormula lhs, SrsFormula rhs) {
  check_interval(interval);
  require(lhs), require(rhs);
  return std::make_shared<const SrsNode>(SrsNode{Until{interval, std::move(lhs), std::move(rhs)}});
}

SrsFormula always(Interval interval, SrsFormula arg) {
  check_interval(interval);
  require(arg);
  return std::make_shared<const SrsNode>(SrsNode{Always{interval, std::move(arg)}});
}

SrsFormula eventually(Interval interval, SrsFormula arg) {
  check_interval(interval);
  require(arg);
  return std::make_shared<const SrsNode>(SrsNode{Eventually{interval, std::move(arg)}});
}

}  // namespace srs

Step horizon(const StlFormula& formula) {
  return std::visit(
      overloaded{
          [](const stl::Atom&) -> Step { return 0; },
          [](const stl::Not& n) { return horizon(n.arg); },
          [](const stl::And& n) { return std::max(horizon(n.lhs), horizon(n.rhs)); },
          [](const stl::Or& n) { return std::max(horizon(n.lhs), horizon(n.rhs)); },
          [](const stl::Until& n) {
            return n.interval.hi + std::max(horizon(n.lhs), horizon(n.rhs));
          },
          [](const stl::Always& n) {
            return (n.closed ? n.interval.hi : n.interval.hi - 1) + horizon(n.arg);
          },
          [](const stl::Eventually& n) { return n.interval.hi + horizon(n.arg); },
      },
      formula->op);
}

Step horizon(const SrsFormula& formula) {
  return std::visit(
      overloaded{
          [](const srs::RAtom& a) { return a.alpha + (a.beta - 1) + horizon(a.body); },
          [](const srs::Not& n) { return horizon(n.arg); },
          [](const srs::And& n) { return std::max(horizon(n.lhs), horizon(n.rhs)); },
          [](const srs::Or& n) { return std::max(horizon(n.lhs), horizon(n.rhs)); },
          [](const srs::Until& n) {
            return n.interval.hi + std::max(horizon(n.lhs), horizon(n.rhs));
          },
          [](const srs::Always& n) { return n.interval.hi + horizon(n.arg); },
          [](const srs::Eventually& n) { return n.interval.hi + horizon(n.arg); },
      },
      formula->op);
}

StlFormula srs_to_stl(const SrsFormula& formula) {
  return std::visit(
      overloaded{
          [](const srs::RAtom& a) {
            return stl::until(Interval{0, a.alpha}, stl::negate(a.body),
                              stl::always(Interval{0, a.beta}, a.body, /*closed=*/false));
          },
          [](const srs::Not& n) { return stl::negate(srs_to_stl(n.arg)); },
          [](const srs::And& n) { return stl::conj(srs_to_stl(n.lhs), srs_to_stl(n.rhs)); },
          [](const srs::Or& n) { return stl::disj(srs_to_stl(n.lhs), srs_to_stl(n.rhs)); },
          [](const srs::Until& n) {
            return stl::until(n.interval, srs_to_stl(n.lhs), srs_to_stl(n.rhs));
          },
          [](const srs::Always& n) { return stl::always(n.interval, srs_to_stl(n.arg)); },
          [](const srs::Eventually& n) { return stl::eventually(n.interval, srs_to_stl(n.arg)); },
      },
      formula->op);
}

namespace {

void collect(const SrsFormula& f, std::vector<const srs::RAtom*>& out) {
  std::visit(overloaded{
                 [&](const srs::RAtom& a) { out.push_back(&a); },
                 [&](const srs::Not& n) { collect(n.arg, out); },
                 [&](const srs::And& n) { collect(n.lhs, out), collect(n.rhs, out); },
                 [&](const srs::Or& n) { collect(n.lhs, out), collect(n.rhs, out); },
                 [&](const srs::Until& n) { collect(n.lhs, out), collect(n.rhs, out); },
                 [&](const srs::Always& n) { collect(n.arg, out); },
                 [&](const srs::Eventually& n) { collect(n.arg, out); },
             },
             f->op);
}

}  // namespace

std::vector<const srs::RAtom*> collect_atoms(const SrsFormula& formula) {
  std::vector<const srs::RAtom*> atoms;
  collect(formula, atoms);
  return atoms;
}

std::string to_string(const AffineExpr& expr) {
  std::string out;
  bool first = true;
  for (const auto& term : expr.terms) {
    const bool negative = std::signbit(term.coef);
    const double magnitude = std::abs(term.coef);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    if (magnitude != 1.0) out += number(magnitude) + '*';
    out += term.channel;
    first = false;
  }
  if (first) {
    out += number(expr.constant);
  } else if (expr.constant != 0.0) {
    out += expr.constant < 0 ? " - " : " + ";
    out += number(std::abs(expr.constant));
  }
  return out;
}

std::string to_string(const StlFormula& formula) {
  return std::visit(
      overloaded{
          [](const stl::Atom& a) {
            return fmt::format("({} {} {})", to_string(a.expr),
                               a.relation == Relation::ge ? ">=" : "<=", number(a.threshold));
          },
          [](const stl::Not& n) { return fmt::format("(not {})", to_string(n.arg)); },
          [](const stl::And& n) {
            return fmt::format("({} and {})", to_string(n.lhs), to_string(n.rhs));
          },
          [](const stl::Or& n) {
            return fmt::format("({} or {})", to_string(n.lhs), to_string(n.rhs));
          },
          [](const stl::Until& n) {
            return fmt::format("({} U{} {})", to_string(n.lhs), interval_text(n.interval),
                               to_string(n.rhs));
          },
          [](const stl::Always& n) {
            return fmt::format("(G{} {})", interval_text(n.interval, n.closed), to_string(n.arg));
          },
          [](const stl::Eventually& n) {
            return fmt::format("(F{} {})", interval_text(n.interval), to_string(n.arg));
          },
      },
      formula->op);
}

std::string to_string(const SrsFormula& formula) {
  return std::visit(
      overloaded{
          [](const srs::RAtom& a) {
            return fmt::format("R[{},{}]({})", a.alpha, a.beta, to_string(a.body));
          },
          [](const srs::Not& n) { return fmt::format("(not {})", to_string(n.arg)); },
          [](const srs::And& n) {
            return fmt::format("({} and {})", to_string(n.lhs), to_string(n.rhs));
          },
          [](const srs::Or& n) {
            return fmt::format("({} or {})", to_string(n.lhs), to_string(n.rhs));
          },
          [](const srs::Until& n) {
            return fmt::format("({} U{} {})", to_string(n.lhs), interval_text(n.interval),
                               to_string(n.rhs));
          },
          [](const srs::Always& n) {
            return fmt::format("(G{} {})", interval_text(n.interval), to_string(n.arg));
          },
          [](const srs::Eventually& n) {
            return fmt::format("(F{} {})", interval_text(n.interval), to_string(n.arg));
          },
      },
      formula->op);
}

bool structurally_equal(const StlFormula& a, const StlFormula& b) {
  if (a == b) return true;
  if (!a || !b || a->op.index() != b->op.index()) return false;
  return std::visit(
      overloaded{
          [&](const stl::Atom& x) {
            const auto& y = std::get<stl::Atom>(b->op);
            return x.expr == y.expr && x.relation == y.relation && x.threshold == y.threshold;
          },
          [&](const stl::Not& x) {
            return structurally_equal(x.arg, std::get<stl::Not>(b->op).arg);
          },
          [&](const stl::And& x) {
            const auto& y = std::get<stl::And>(b->op);
            return structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
          },
          [&](const stl::Or& x) {
            const auto& y = std::get<stl::Or>(b->op);
            return structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
          },
          [&](const stl::Until& x) {
            const auto& y = std::get<stl::Until>(b->op);
            return x.interval == y.interval && structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs);
          },
          [&](const stl::Always& x) {
            const auto& y = std::get<stl::Always>(b->op);
            return x.interval == y.interval && x.closed == y.closed &&
                   structurally_equal(x.arg, y.arg);
          },
          [&](const stl::Eventually& x) {
            const auto& y = std::get<stl::Eventually>(b->op);
            return x.interval == y.interval && structurally_equal(x.arg, y.arg);
          },
      },
      a->op);
}

bool structurally_equal(const SrsFormula& a, const SrsFormula& b) {
  if (a == b) return true;
  if (!a || !b || a->op.index() != b->op.index()) return false;
  return std::visit(
      overloaded{
          [&](const srs::RAtom& x) {
            const auto& y = std::get<srs::RAtom>(b->op);
            return x.alpha == y.alpha && x.beta == y.beta && structurally_equal(x.body, y.body);
          },
          [&](const srs::Not& x) {
            return structurally_equal(x.arg, std::get<srs::Not>(b->op).arg);
          },
          [&](const srs::And& x) {
            const auto& y = std::get<srs::And>(b->op);
            return structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
          },
          [&](const srs::Or& x) {
            const auto& y = std::get<srs::Or>(b->op);
            return structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
          },
          [&](const srs::Until& x) {
            const auto& y = std::get<srs::Until>(b->op);
            return x.interval == y.interval && structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs);
          },
          [&](const srs::Always& x) {
            const auto& y = std::get<srs::Always>(b->op);
            return x.interval == y.interval && structurally_equal(x.arg, y.arg);
          },
          [&](const srs::Eventually& x) {
            const auto& y = std::get<srs::Eventually>(b->op);
            return x.interval == y.interval && structurally_equal(x.arg, y.arg);
          },
      },
      a->op);
}

std::size_t size(const StlFormula& formula) {
  return std::visit(overloaded{
                        [](const stl::Atom&) -> std::size_t { return 1; },
                        [](const stl::Not& n) { return 1 + size(n.arg); },
                        [](const stl::And& n) { return 1 + size(n.lhs) + size(n.rhs); },
                        [](const stl::Or& n) { return 1 + size(n.lhs) + size(n.rhs); },
                        [](const stl::Until& n) { return 1 + size(n.lhs) + size(n.rhs); },
                        [](const stl::Always& n) { return 1 + size(n.arg); },
                        [](const stl::Eventually& n) { return 1 + size(n.arg); },
                    },
                    formula->op);
}

std::size_t size(const SrsFormula& formula) {
  return std::visit(overloaded{
                        [](const srs::RAtom& a) { return 1 + size(a.body); },
                        [](const srs::Not& n) { return 1 + size(n.arg); },
                        [](const srs::And& n) { return 1 + size(n.lhs) + size(n.rhs); },
                        [](const srs::Or& n) { return 1 + size(n.lhs) + size(n.rhs); },
                        [](const srs::Until& n) { return 1 + size(n.lhs) + size(n.rhs); },
                        [](const srs::Always& n) { return 1 + size(n.arg); },
                        [](const srs::Eventually& n) { return 1 + size(n.arg); },
                    },
                    formula->op);
}

}  // namespace resmon
