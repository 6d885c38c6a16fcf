#include "resmon/stl.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include <fmt/core.h>

#include "resmon/detail/overloaded.hpp"

namespace resmon {

namespace {

using detail::overloaded;

template <class T>
T held(const std::vector<T>& v, Step k) {
  return v[static_cast<std::size_t>(std::min<Step>(k, static_cast<Step>(v.size()) - 1))];
}

/// out[t] = extreme of v over [t+lo, t+lo+width-1], v held past its end.
/// `better(a, b)` is true when a should replace b (e.g. std::less for min).
template <class T, class Better>
std::vector<T> sliding_extreme(const std::vector<T>& v, Step lo, Step width, Better better) {
  const Step n = static_cast<Step>(v.size());
  std::vector<T> out(v.size());
  std::deque<Step> window;  // indices into the held sequence, values monotone
  Step next = lo;
  for (Step t = 0; t < n; ++t) {
    const Step first = t + lo, last = t + lo + width - 1;
    for (; next <= last; ++next) {
      const T x = held(v, next);
      while (!window.empty() && !better(held(v, window.back()), x)) window.pop_back();
      window.push_back(next);
    }
    while (window.front() < first) window.pop_front();
    out[static_cast<std::size_t>(t)] = held(v, window.front());
  }
  return out;
}

struct BooleanTraits {
  using Value = char;
  static Value atom(double margin) { return margin >= 0.0; }
  static Value negate(Value v) { return !v; }
  static Value meet(Value a, Value b) { return a && b; }
  static Value join(Value a, Value b) { return a || b; }
  static constexpr Value top = 1;
  static constexpr Value bottom = 0;
};

struct RobustTraits {
  using Value = double;
  static Value atom(double margin) { return margin; }
  static Value negate(Value v) { return -v; }
  static Value meet(Value a, Value b) { return std::min(a, b); }
  static Value join(Value a, Value b) { return std::max(a, b); }
  static constexpr Value top = std::numeric_limits<double>::infinity();
  static constexpr Value bottom = -std::numeric_limits<double>::infinity();
};

template <class Traits>
class TraceEvaluator {
 public:
  using Value = typename Traits::Value;
  using Trace = std::vector<Value>;

  explicit TraceEvaluator(const Signal& signal) : signal_(signal) {}

  Trace eval(const StlFormula& f) {
    return std::visit(
        overloaded{
            [&](const stl::Atom& a) { return atom(a); },
            [&](const stl::Not& n) {
              Trace v = eval(n.arg);
              for (auto& x : v) x = Traits::negate(x);
              return v;
            },
            [&](const stl::And& n) { return combine(eval(n.lhs), eval(n.rhs), &Traits::meet); },
            [&](const stl::Or& n) { return combine(eval(n.lhs), eval(n.rhs), &Traits::join); },
            [&](const stl::Until& n) { return until(n.interval, eval(n.lhs), eval(n.rhs)); },
            [&](const stl::Always& n) {
              const Step width = n.interval.hi - n.interval.lo + (n.closed ? 1 : 0);
              return sliding_extreme(eval(n.arg), n.interval.lo, width,
                                     [](Value a, Value b) { return Traits::meet(a, b) == a && a != b; });
            },
            [&](const stl::Eventually& n) {
              const Step width = n.interval.hi - n.interval.lo + 1;
              return sliding_extreme(eval(n.arg), n.interval.lo, width,
                                     [](Value a, Value b) { return Traits::join(a, b) == a && a != b; });
            },
        },
        f->op);
  }

 private:
  Trace atom(const stl::Atom& a) {
    std::vector<std::pair<double, std::size_t>> terms;
    for (const auto& term : a.expr.terms) {
      terms.emplace_back(term.coef, signal_.channel_index(term.channel));
    }
    Trace out(signal_.rows());
    for (Step t = 0; t <= signal_.length(); ++t) {
      double mu = a.expr.constant;
      for (const auto& [coef, ch] : terms) mu += coef * signal_.held_value(ch, t);
      const double margin = a.relation == Relation::ge ? mu - a.threshold : a.threshold - mu;
      out[static_cast<std::size_t>(t)] = Traits::atom(margin);
    }
    return out;
  }

  static Trace combine(Trace lhs, const Trace& rhs, Value (*op)(Value, Value)) {
    for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] = op(lhs[i], rhs[i]);
    return lhs;
  }

  // value(t) = join over d in [lo,hi] of meet(rhs(t+d), meet over d' < d of lhs(t+d'))
  Trace until(const Interval& interval, const Trace& lhs, const Trace& rhs) {
    const Step n = signal_.length();
    Trace out(lhs.size());
    for (Step t = 0; t <= n; ++t) {
      Value best = Traits::bottom;
      Value prefix = Traits::top;  // meet of lhs over [t, t+d)
      for (Step d = 0; d <= interval.hi; ++d) {
        const Step k = t + d;
        if (k >= n) {
          // Both operands are constant from here on, so the earliest
          // admissible offset dominates all later ones.
          const Value l = held(lhs, n), r = held(rhs, n);
          const Value run = d >= interval.lo ? prefix : Traits::meet(prefix, l);
          best = Traits::join(best, Traits::meet(r, run));
          break;
        }
        if (d >= interval.lo) best = Traits::join(best, Traits::meet(held(rhs, k), prefix));
        prefix = Traits::meet(prefix, held(lhs, k));
        if (prefix == Traits::bottom) break;
      }
      out[static_cast<std::size_t>(t)] = best;
    }
    return out;
  }

  const Signal& signal_;
};

void check_time(const StlFormula& formula, const Signal& signal, Step t, const EvalOptions& options) {
  if (t < 0 || t > signal.length()) {
    throw EvaluationError(
        fmt::format("time {} outside signal domain [0, {}]", t, signal.length()));
  }
  if (options.extension == ExtensionPolicy::error && t + horizon(formula) > signal.length()) {
    throw EvaluationError(fmt::format(
        "formula needs samples up to step {} but the signal ends at step {}",
        t + horizon(formula), signal.length()));
  }
  check_channels(formula, signal);
}

}  // namespace

void check_channels(const StlFormula& formula, const Signal& signal) {
  std::visit(overloaded{
                 [&](const stl::Atom& a) {
                   for (const auto& term : a.expr.terms) {
                     if (!signal.has_channel(term.channel)) {
                       throw EvaluationError(fmt::format("formula refers to unknown channel '{}'",
                                                         term.channel));
                     }
                   }
                 },
                 [&](const stl::Not& n) { check_channels(n.arg, signal); },
                 [&](const stl::And& n) { check_channels(n.lhs, signal), check_channels(n.rhs, signal); },
                 [&](const stl::Or& n) { check_channels(n.lhs, signal), check_channels(n.rhs, signal); },
                 [&](const stl::Until& n) { check_channels(n.lhs, signal), check_channels(n.rhs, signal); },
                 [&](const stl::Always& n) { check_channels(n.arg, signal); },
                 [&](const stl::Eventually& n) { check_channels(n.arg, signal); },
             },
             formula->op);
}

std::vector<char> satisfaction_trace(const StlFormula& formula, const Signal& signal) {
  check_channels(formula, signal);
  return TraceEvaluator<BooleanTraits>(signal).eval(formula);
}

std::vector<double> robustness_trace(const StlFormula& formula, const Signal& signal) {
  check_channels(formula, signal);
  return TraceEvaluator<RobustTraits>(signal).eval(formula);
}

bool sat(const StlFormula& formula, const Signal& signal, Step t, const EvalOptions& options) {
  check_time(formula, signal, t, options);
  return TraceEvaluator<BooleanTraits>(signal).eval(formula)[static_cast<std::size_t>(t)] != 0;
}

double rho(const StlFormula& formula, const Signal& signal, Step t, const EvalOptions& options) {
  check_time(formula, signal, t, options);
  return TraceEvaluator<RobustTraits>(signal).eval(formula)[static_cast<std::size_t>(t)];
}

double affine_value(const AffineExpr& expr, const Signal& signal, Step t) {
  double mu = expr.constant;
  for (const auto& term : expr.terms) mu += term.coef * signal.value_at(term.channel, t);
  return mu;
}

Step theta_plus(const StlFormula& literal, const Signal& signal, Step t) {
  const stl::Atom* atom = std::get_if<stl::Atom>(&literal->op);
  bool negated = false;
  if (!atom) {
    if (const auto* n = std::get_if<stl::Not>(&literal->op)) {
      atom = std::get_if<stl::Atom>(&n->arg->op);
      negated = true;
    }
  }
  if (!atom) throw EvaluationError("time robustness is defined for atomic propositions only");
  if (t < 0 || t > signal.length()) {
    throw EvaluationError(
        fmt::format("time {} outside signal domain [0, {}]", t, signal.length()));
  }
  auto holds = [&](Step k) {
    const double mu = affine_value(atom->expr, signal, k);
    const bool v = atom->relation == Relation::ge ? mu >= atom->threshold : mu <= atom->threshold;
    return v != negated;
  };
  const bool initial = holds(t);
  Step d = 0;
  while (t + d + 1 <= signal.length() && holds(t + d + 1) == initial) ++d;
  return initial ? d : -d;
}

}  // namespace resmon
