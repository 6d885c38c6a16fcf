#include "resmon/resilience.hpp"

#include <algorithm>
#include <utility>

#include <fmt/core.h>

#include "resmon/detail/overloaded.hpp"

namespace resmon {

namespace {

using detail::overloaded;

// next_true[k] / next_false[k]: first k' >= k where body holds / fails, or -1.
struct Tables {
  std::vector<Step> next_true;
  std::vector<Step> next_false;
};

Tables scan(const StlFormula& body, const Signal& signal) {
  const auto truth = satisfaction_trace(body, signal);
  const std::size_t n = truth.size();
  Tables out{std::vector<Step>(n, -1), std::vector<Step>(n, -1)};
  for (std::size_t i = n; i-- > 0;) {
    const Step k = static_cast<Step>(i);
    if (truth[i]) {
      out.next_true[i] = k;
      out.next_false[i] = i + 1 < n ? out.next_false[i + 1] : -1;
    } else {
      out.next_false[i] = k;
      out.next_true[i] = i + 1 < n ? out.next_true[i + 1] : -1;
    }
  }
  return out;
}

// First k' >= k where the tabulated property holds; the signal is held past
// its end, so so is the property.
std::optional<Step> first_from(const std::vector<Step>& next, Step k) {
  const Step last = static_cast<Step>(next.size()) - 1;
  const Step f = next[static_cast<std::size_t>(std::min(k, last))];
  if (f < 0) return std::nullopt;
  return std::max(f, k);
}

// (t_rec, t_dur) with both caps measured against `reference`.
std::pair<Step, Step> rec_dur(const std::vector<Step>& next_true,
                              const std::vector<Step>& next_false, Step t, Step reference) {
  const auto up = first_from(next_true, t);
  const Step rec = std::min(up ? *up - t : reference - t, reference - t);
  const Step t1 = t + rec;
  const auto down = first_from(next_false, t1);
  const Step dur = std::min(down ? *down - t1 : reference - t1, reference - t1);
  return {rec, dur};
}

void check_domain(const Signal& signal, Step t) {
  if (t < 0 || t > signal.length()) {
    throw EvaluationError(
        fmt::format("time {} outside signal domain [0, {}]", t, signal.length()));
  }
}

std::vector<Witness> extremum(const std::vector<Witness>& pool, Extremum which) {
  std::vector<ResPair> keys;
  keys.reserve(pool.size());
  for (const auto& w : pool) keys.push_back(w.pair);
  const auto idx = front_indices(keys, which, [&](std::size_t i) {
    return std::pair(pool[i].origin.time, pool[i].origin.atom_index);
  });
  std::vector<Witness> out;
  out.reserve(idx.size());
  for (const auto i : idx) out.push_back(pool[i]);
  return out;
}

void append(std::vector<Witness>& to, const std::vector<Witness>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

Step t_rec(const StlFormula& body, const Signal& signal, Step t) {
  check_domain(signal, t);
  const auto tab = scan(body, signal);
  return rec_dur(tab.next_true, tab.next_false, t, signal.length()).first;
}

Step t_dur(const StlFormula& body, const Signal& signal, Step t) {
  check_domain(signal, t);
  const auto tab = scan(body, signal);
  return rec_dur(tab.next_true, tab.next_false, t, signal.length()).second;
}

Monitor::Monitor(SrsFormula formula, Signal signal, EvalOptions options)
    : formula_(std::move(formula)), signal_(std::move(signal)), options_(options) {
  horizon_ = resmon::horizon(formula_);
  atoms_ = collect_atoms(formula_);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    atom_index_.emplace(atoms_[i], i);
    check_channels(atoms_[i]->body, signal_);
    auto tab = scan(atoms_[i]->body, signal_);
    tables_.push_back({std::move(tab.next_true), std::move(tab.next_false)});
  }
}

Step Monitor::reference_length(Step t) const {
  return std::max(signal_.length(), t + horizon_ + 1);
}

bool Monitor::needs_extension(Step t) const { return t + horizon_ + 1 > signal_.length(); }

void Monitor::prepare(Step origin) {
  check_domain(signal_, origin);
  if (options_.extension == ExtensionPolicy::error && needs_extension(origin)) {
    throw EvaluationError(fmt::format(
        "formula needs samples up to step {} but the signal ends at step {}",
        origin + horizon_ + 1, signal_.length()));
  }
  const Step reference = reference_length(origin);
  if (reference != reference_) {
    memo_.clear();
    reference_ = reference;
  }
}

const std::vector<Witness>& Monitor::evaluate(Step t) {
  prepare(t);
  return eval(formula_, t);
}

const std::vector<Witness>& Monitor::evaluate_subformula(const SrsFormula& node, Step at,
                                                         Step origin) {
  prepare(origin);
  if (at < 0 || at >= reference_) {
    throw EvaluationError(fmt::format("time {} outside the evaluation range [0, {})", at, reference_));
  }
  return eval(node, at);
}

ResSet Monitor::resv(Step t) {
  const auto& witnesses = evaluate(t);
  std::vector<ResPair> pairs;
  pairs.reserve(witnesses.size());
  for (const auto& w : witnesses) pairs.push_back(w.pair);
  return max_re(pairs);
}

std::vector<Witness> Monitor::atom_value(const srs::RAtom& atom, Step t) const {
  const std::size_t index = atom_index_.at(&atom);
  const auto& tab = tables_[index];
  const auto [rec, dur] = rec_dur(tab.next_true, tab.next_false, t, reference_);
  return {Witness{{atom.alpha - rec, dur - atom.beta}, {index, t}}};
}

const std::vector<Witness>& Monitor::eval(const SrsFormula& node, Step t) {
  auto& slots = memo_[node.get()];
  if (slots.empty()) slots.resize(static_cast<std::size_t>(reference_) + 1);
  auto& slot = slots[static_cast<std::size_t>(t)];
  if (slot) return *slot;

  std::vector<Witness> value = std::visit(
      overloaded{
          [&](const srs::RAtom& a) { return atom_value(a, t); },
          [&](const srs::Not& n) {
            std::vector<Witness> v = eval(n.arg, t);
            for (auto& w : v) w.pair = -w.pair;
            std::reverse(v.begin(), v.end());
            return v;
          },
          [&](const srs::And& n) {
            std::vector<Witness> pool = eval(n.lhs, t);
            append(pool, eval(n.rhs, t));
            return extremum(pool, Extremum::min);
          },
          [&](const srs::Or& n) {
            std::vector<Witness> pool = eval(n.lhs, t);
            append(pool, eval(n.rhs, t));
            return extremum(pool, Extremum::max);
          },
          [&](const srs::Always& n) {
            std::vector<Witness> pool;
            for (Step k = t + n.interval.lo; k <= t + n.interval.hi; ++k) append(pool, eval(n.arg, k));
            return extremum(pool, Extremum::min);
          },
          [&](const srs::Eventually& n) {
            std::vector<Witness> pool;
            for (Step k = t + n.interval.lo; k <= t + n.interval.hi; ++k) append(pool, eval(n.arg, k));
            return extremum(pool, Extremum::max);
          },
          [&](const srs::Until& n) {
            // running = min_re of lhs over [t, t+d); folding it into each
            // candidate gives the same set as the full inner union.
            std::vector<Witness> candidates, running;
            for (Step d = 0; d <= n.interval.hi; ++d) {
              if (d >= n.interval.lo) {
                std::vector<Witness> pool = eval(n.rhs, t + d);
                append(pool, running);
                append(candidates, extremum(pool, Extremum::min));
              }
              std::vector<Witness> pool = eval(n.lhs, t + d);
              append(pool, running);
              running = extremum(pool, Extremum::min);
            }
            return extremum(candidates, Extremum::max);
          },
      },
      node->op);
  // Map references survive rehashing and `slots` is never resized again.
  slot = std::move(value);
  return *slot;
}

ResSet resv(const SrsFormula& formula, const Signal& signal, Step t, const EvalOptions& options) {
  Monitor monitor(formula, signal, options);
  return monitor.resv(t);
}

Verdict classify(const ResSet& set) {
  const int s = sign_sum(set.pairs().front());
  if (s > 0) return Verdict::positive;
  if (s < 0) return Verdict::negative;
  return Verdict::boundary;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::positive: return "positive";
    case Verdict::negative: return "negative";
    case Verdict::boundary: return "boundary";
  }
  return "?";
}

}  // namespace resmon
