#include "resmon/oracle.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "resmon/detail/overloaded.hpp"
#include "resmon/stl.hpp"

namespace resmon::oracle {

namespace {

using detail::overloaded;

double sample(const Signal& signal, const std::string& channel, Step t) {
  return signal.value_at(channel, std::min(t, signal.length()));
}

double margin(const stl::Atom& a, const Signal& signal, Step t) {
  double mu = a.expr.constant;
  for (const auto& term : a.expr.terms) mu += term.coef * sample(signal, term.channel, t);
  return a.relation == Relation::ge ? mu - a.threshold : a.threshold - mu;
}

}  // namespace

bool naive_sat(const StlFormula& f, const Signal& signal, Step t) {
  return std::visit(
      overloaded{
          [&](const stl::Atom& a) { return margin(a, signal, t) >= 0.0; },
          [&](const stl::Not& n) { return !naive_sat(n.arg, signal, t); },
          [&](const stl::And& n) { return naive_sat(n.lhs, signal, t) && naive_sat(n.rhs, signal, t); },
          [&](const stl::Or& n) { return naive_sat(n.lhs, signal, t) || naive_sat(n.rhs, signal, t); },
          [&](const stl::Until& n) {
            for (Step t2 = t + n.interval.lo; t2 <= t + n.interval.hi; ++t2) {
              if (!naive_sat(n.rhs, signal, t2)) continue;
              bool lhs_ok = true;
              for (Step k = t; k < t2 && lhs_ok; ++k) lhs_ok = naive_sat(n.lhs, signal, k);
              if (lhs_ok) return true;
            }
            return false;
          },
          [&](const stl::Always& n) {
            const Step last = n.closed ? t + n.interval.hi : t + n.interval.hi - 1;
            for (Step k = t + n.interval.lo; k <= last; ++k) {
              if (!naive_sat(n.arg, signal, k)) return false;
            }
            return true;
          },
          [&](const stl::Eventually& n) {
            for (Step k = t + n.interval.lo; k <= t + n.interval.hi; ++k) {
              if (naive_sat(n.arg, signal, k)) return true;
            }
            return false;
          },
      },
      f->op);
}

double naive_rho(const StlFormula& f, const Signal& signal, Step t) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      overloaded{
          [&](const stl::Atom& a) { return margin(a, signal, t); },
          [&](const stl::Not& n) { return -naive_rho(n.arg, signal, t); },
          [&](const stl::And& n) {
            return std::min(naive_rho(n.lhs, signal, t), naive_rho(n.rhs, signal, t));
          },
          [&](const stl::Or& n) {
            return std::max(naive_rho(n.lhs, signal, t), naive_rho(n.rhs, signal, t));
          },
          [&](const stl::Until& n) {
            double best = -inf;
            for (Step t2 = t + n.interval.lo; t2 <= t + n.interval.hi; ++t2) {
              double v = naive_rho(n.rhs, signal, t2);
              for (Step k = t; k < t2; ++k) v = std::min(v, naive_rho(n.lhs, signal, k));
              best = std::max(best, v);
            }
            return best;
          },
          [&](const stl::Always& n) {
            const Step last = n.closed ? t + n.interval.hi : t + n.interval.hi - 1;
            double v = inf;
            for (Step k = t + n.interval.lo; k <= last; ++k) v = std::min(v, naive_rho(n.arg, signal, k));
            return v;
          },
          [&](const stl::Eventually& n) {
            double v = -inf;
            for (Step k = t + n.interval.lo; k <= t + n.interval.hi; ++k) {
              v = std::max(v, naive_rho(n.arg, signal, k));
            }
            return v;
          },
      },
      f->op);
}

DomRelation naive_compare(const ResPair& x, const ResPair& y) {
  auto sgn = [](std::int64_t v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  const int sx = sgn(x.rec) + sgn(x.dur);
  const int sy = sgn(y.rec) + sgn(y.dur);
  auto beats = [](const ResPair& a, const ResPair& b) {
    return (a.rec > b.rec && a.dur >= b.dur) || (a.rec >= b.rec && a.dur > b.dur);
  };
  if (sx > sy || (sx == sy && beats(x, y))) return DomRelation::succ;
  if (sy > sx || (sx == sy && beats(y, x))) return DomRelation::prec;
  return DomRelation::non_dominated;
}

namespace {

std::vector<ResPair> filter(const std::vector<ResPair>& pairs, DomRelation loser) {
  std::vector<ResPair> out;
  for (const auto& x : pairs) {
    bool beaten = false;
    for (const auto& y : pairs) beaten = beaten || naive_compare(x, y) == loser;
    if (!beaten && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<ResPair> naive_max_re(const std::vector<ResPair>& pairs) {
  return filter(pairs, DomRelation::prec);
}

std::vector<ResPair> naive_min_re(const std::vector<ResPair>& pairs) {
  return filter(pairs, DomRelation::succ);
}

namespace {

std::vector<ResPair> naive_value(const SrsFormula& f, const Signal& signal, Step t, Step reference) {
  auto over = [&](const SrsFormula& g, Step lo, Step hi) {
    std::vector<ResPair> pool;
    for (Step k = lo; k <= hi; ++k) {
      const auto v = naive_value(g, signal, k, reference);
      pool.insert(pool.end(), v.begin(), v.end());
    }
    return pool;
  };
  return std::visit(
      overloaded{
          [&](const srs::RAtom& a) {
            Step rec = reference - t;
            for (Step d = 0; d < reference - t; ++d) {
              if (naive_sat(a.body, signal, t + d)) {
                rec = d;
                break;
              }
            }
            const Step t1 = t + rec;
            Step dur = reference - t1;
            for (Step d = 0; d < reference - t1; ++d) {
              if (!naive_sat(a.body, signal, t1 + d)) {
                dur = d;
                break;
              }
            }
            return std::vector<ResPair>{{a.alpha - rec, dur - a.beta}};
          },
          [&](const srs::Not& n) {
            auto v = naive_value(n.arg, signal, t, reference);
            for (auto& p : v) p = ResPair{-p.rec, -p.dur};
            return v;
          },
          [&](const srs::And& n) {
            auto pool = naive_value(n.lhs, signal, t, reference);
            const auto rhs = naive_value(n.rhs, signal, t, reference);
            pool.insert(pool.end(), rhs.begin(), rhs.end());
            return naive_min_re(pool);
          },
          [&](const srs::Or& n) {
            auto pool = naive_value(n.lhs, signal, t, reference);
            const auto rhs = naive_value(n.rhs, signal, t, reference);
            pool.insert(pool.end(), rhs.begin(), rhs.end());
            return naive_max_re(pool);
          },
          [&](const srs::Always& n) {
            return naive_min_re(over(n.arg, t + n.interval.lo, t + n.interval.hi));
          },
          [&](const srs::Eventually& n) {
            return naive_max_re(over(n.arg, t + n.interval.lo, t + n.interval.hi));
          },
          [&](const srs::Until& n) {
            std::vector<ResPair> outer;
            for (Step d = n.interval.lo; d <= n.interval.hi; ++d) {
              auto pool = naive_value(n.rhs, signal, t + d, reference);
              if (d > 0) {
                const auto inner = naive_min_re(over(n.lhs, t, t + d - 1));
                pool.insert(pool.end(), inner.begin(), inner.end());
              }
              const auto term = naive_min_re(pool);
              outer.insert(outer.end(), term.begin(), term.end());
            }
            return naive_max_re(outer);
          },
      },
      f->op);
}

}  // namespace

ResSet naive_resv(const SrsFormula& formula, const Signal& signal, Step t) {
  if (t < 0 || t > signal.length()) throw EvaluationError("time outside signal domain");
  const Step reference = std::max(signal.length(), t + horizon(formula) + 1);
  return ResSet(naive_value(formula, signal, t, reference));
}

Signal example3_signal() {
  const std::string pattern = "FFTTTTFTTTTTTFFFTTTTTFFFFF";
  std::vector<double> samples;
  for (const char c : pattern) samples.push_back(c == 'T' ? 1.0 : -1.0);
  return Signal({"x"}, std::move(samples), 1.0);
}

Signal random_signal(Step length, const std::vector<std::string>& channels, std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("random_signal: length must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(-3, 3);
  std::bernoulli_distribution keep(0.5);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(length + 1) * channels.size());
  std::vector<double> current(channels.size());
  for (auto& v : current) v = value(rng);
  for (Step t = 0; t <= length; ++t) {
    for (std::size_t c = 0; c < channels.size(); ++c) {
      if (t > 0 && !keep(rng)) current[c] = value(rng);
      samples.push_back(current[c]);
    }
  }
  return Signal(channels, std::move(samples), 1.0);
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Interval random_interval(std::mt19937_64& rng, Step max_lo, Step max_width, Step cap) {
  const Step lo = uniform(rng, 0, static_cast<int>(max_lo));
  const Step hi = std::min(cap, lo + uniform(rng, 0, static_cast<int>(max_width)));
  return {lo, hi};
}

StlFormula random_atom(const std::vector<std::string>& channels, std::mt19937_64& rng) {
  AffineExpr expr;
  const auto& first = channels[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(channels.size()) - 1))];
  expr.terms.push_back({uniform(rng, 0, 1) ? 1.0 : -1.0, first});
  if (channels.size() > 1 && uniform(rng, 0, 4) == 0) {
    const auto& second =
        channels[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(channels.size()) - 1))];
    if (second != first) expr.terms.push_back({uniform(rng, 0, 1) ? 1.0 : -1.0, second});
  }
  const Relation rel = uniform(rng, 0, 1) ? Relation::ge : Relation::le;
  return stl::atom(std::move(expr), rel, uniform(rng, -2, 2));
}

}  // namespace

StlFormula random_stl(int depth, const std::vector<std::string>& channels, std::mt19937_64& rng) {
  if (depth <= 1 || uniform(rng, 0, 9) < 3) return random_atom(channels, rng);
  switch (uniform(rng, 0, 5)) {
    case 0: return stl::negate(random_stl(depth - 1, channels, rng));
    case 1: {
      auto lhs = random_stl(depth - 1, channels, rng);
      return stl::conj(std::move(lhs), random_stl(depth - 1, channels, rng));
    }
    case 2: {
      auto lhs = random_stl(depth - 1, channels, rng);
      return stl::disj(std::move(lhs), random_stl(depth - 1, channels, rng));
    }
    case 3: {
      const auto iv = random_interval(rng, 2, 3, 5);
      auto lhs = random_stl(depth - 1, channels, rng);
      return stl::until(iv, std::move(lhs), random_stl(depth - 1, channels, rng));
    }
    case 4: {
      const bool closed = uniform(rng, 0, 2) != 0;
      auto iv = random_interval(rng, 2, 3, 5);
      if (!closed && iv.hi == iv.lo) ++iv.hi;
      return stl::always(iv, random_stl(depth - 1, channels, rng), closed);
    }
    default:
      return stl::eventually(random_interval(rng, 2, 3, 5), random_stl(depth - 1, channels, rng));
  }
}

SrsFormula random_srs(int depth, const std::vector<std::string>& channels, std::mt19937_64& rng) {
  if (depth <= 1 || uniform(rng, 0, 9) < 3) {
    const Step alpha = uniform(rng, 0, 4);
    const Step beta = uniform(rng, 1, 4);
    return srs::resilience(alpha, beta, random_stl(uniform(rng, 1, 2), channels, rng));
  }
  switch (uniform(rng, 0, 5)) {
    case 0: return srs::negate(random_srs(depth - 1, channels, rng));
    case 1: {
      auto lhs = random_srs(depth - 1, channels, rng);
      return srs::conj(std::move(lhs), random_srs(depth - 1, channels, rng));
    }
    case 2: {
      auto lhs = random_srs(depth - 1, channels, rng);
      return srs::disj(std::move(lhs), random_srs(depth - 1, channels, rng));
    }
    case 3: {
      const auto iv = random_interval(rng, 3, 3, 5);
      auto lhs = random_srs(depth - 1, channels, rng);
      return srs::until(iv, std::move(lhs), random_srs(depth - 1, channels, rng));
    }
    case 4: return srs::always(random_interval(rng, 3, 3, 5), random_srs(depth - 1, channels, rng));
    default:
      return srs::eventually(random_interval(rng, 3, 3, 5), random_srs(depth - 1, channels, rng));
  }
}

SrsFormula random_srs(int depth, const std::vector<std::string>& channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_srs(depth, channels, rng);
}

Instance random_instance(std::mt19937_64& rng, Step max_length, int max_depth) {
  static const std::vector<std::string> channels{"x", "y"};
  const Step length = uniform(rng, 1, static_cast<int>(max_length));
  const int depth = uniform(rng, 1, max_depth);
  auto formula = random_srs(depth, channels, rng);
  auto signal = random_signal(length, channels, rng());
  const Step t = uniform(rng, 0, static_cast<int>(length));
  return {std::move(formula), std::move(signal), t};
}

CaseResult check_case(const SrsFormula& formula, const Signal& signal, Step t,
                      const Evaluator& evaluator) {
  ResSet value = evaluator ? evaluator(formula, signal, t) : resv(formula, signal, t);
  const Verdict verdict = classify(value);
  const bool holds = sat(srs_to_stl(formula), signal, t);
  const bool consistent = verdict == Verdict::boundary || (verdict == Verdict::positive) == holds;
  return {std::move(value), verdict, holds, consistent};
}

SuiteReport theorem1_suite(std::size_t n_cases, std::uint64_t seed, const Evaluator& evaluator) {
  if (n_cases < 1) throw std::invalid_argument("theorem1_suite: need at least one case");
  SuiteReport report;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n_cases; ++i) {
    const Instance inst = random_instance(rng);
    const CaseResult r = check_case(inst.formula, inst.signal, inst.t, evaluator);
    ++report.cases;
    ++report.histogram[r.verdict];
    std::string reason;
    if (!mutually_non_dominated(r.resv.pairs())) {
      reason = "resilience set is not mutually non-dominated";
    } else if (!r.consistent) {
      reason = r.verdict == Verdict::positive ? "positive verdict but formula is violated"
                                              : "negative verdict but formula holds";
    }
    if (reason.empty()) continue;
    std::ostringstream csv;
    emit_trace(inst.signal, csv);
    report.violations.push_back(
        {i, to_string(inst.formula), csv.str(), inst.t, to_string(r.resv), r.verdict, r.sat, reason});
  }
  return report;
}

std::string to_json(const SuiteReport& report) {
  nlohmann::json j;
  j["cases"] = report.cases;
  j["seed"] = report.seed;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : report.violations) {
    j["violations"].push_back({{"case", v.case_index},
                               {"formula", v.formula},
                               {"t", v.t},
                               {"resv", v.resv},
                               {"verdict", to_string(v.verdict)},
                               {"sat", v.sat},
                               {"reason", v.reason},
                               {"signal_csv", v.signal_csv}});
  }
  nlohmann::json hist = nlohmann::json::object();
  for (const Verdict v : {Verdict::positive, Verdict::negative, Verdict::boundary}) {
    const auto it = report.histogram.find(v);
    hist[to_string(v)] = it == report.histogram.end() ? 0 : it->second;
  }
  j["histogram"] = hist;
  return j.dump(2);
}

}  // namespace resmon::oracle
