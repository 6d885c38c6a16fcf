#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "resmon/dominance.hpp"
#include "resmon/formula.hpp"
#include "resmon/stl.hpp"
#include "resmon/trace.hpp"

namespace resmon {

/// Steps from t until `body` first holds, capped at length()-t.
Step t_rec(const StlFormula& body, const Signal& signal, Step t);

/// Steps from t' = t + t_rec until `body` first fails again, capped at
/// length()-t'.
Step t_dur(const StlFormula& body, const Signal& signal, Step t);

/// Which R atom produced a pair, and at which time it was evaluated.
struct AtomOrigin {
  std::size_t atom_index = 0;  // position in collect_atoms(formula)
  Step time = 0;

  friend bool operator==(const AtomOrigin&, const AtomOrigin&) = default;
};

struct Witness {
  ResPair pair;
  AtomOrigin origin;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Bottom-up ReSV evaluator for one formula over one signal.
///
/// Caps in the atom pairs are taken against a reference length
/// L = max(length(), t + horizon + 1), so every atom sees at least one sample
/// beyond what its expansion depends on. Results are memoised per
/// (subformula, time) while L stays the same. Not thread-safe.
class Monitor {
 public:
  Monitor(SrsFormula formula, Signal signal, EvalOptions options = {});

  /// One witness per ReSV member, ascending by rec. A pair reached from
  /// several atoms/times keeps the earliest time, then the lowest atom index.
  const std::vector<Witness>& evaluate(Step t);
  ResSet resv(Step t);

  /// Value of `node`, a subtree of formula(), at time `at` under the
  /// reference length that evaluation from `origin` uses.
  const std::vector<Witness>& evaluate_subformula(const SrsFormula& node, Step at, Step origin);

  const SrsFormula& formula() const noexcept { return formula_; }
  const Signal& signal() const noexcept { return signal_; }
  const std::vector<const srs::RAtom*>& atoms() const noexcept { return atoms_; }
  Step horizon() const noexcept { return horizon_; }
  Step reference_length(Step t) const;
  /// True when evaluating at t reads past the last sample.
  bool needs_extension(Step t) const;

 private:
  struct AtomTables {
    std::vector<Step> next_true;   // first k >= t with body true, or -1
    std::vector<Step> next_false;  // first k >= t with body false, or -1
  };

  void prepare(Step origin);
  const std::vector<Witness>& eval(const SrsFormula& node, Step t);
  std::vector<Witness> atom_value(const srs::RAtom& atom, Step t) const;

  SrsFormula formula_;
  Signal signal_;
  EvalOptions options_;
  Step horizon_ = 0;
  Step reference_ = -1;
  std::vector<const srs::RAtom*> atoms_;
  std::unordered_map<const srs::RAtom*, std::size_t> atom_index_;
  std::vector<AtomTables> tables_;
  std::unordered_map<const SrsNode*, std::vector<std::optional<std::vector<Witness>>>> memo_;
};

/// ReSV of `formula` on `signal` at t.
ResSet resv(const SrsFormula& formula, const Signal& signal, Step t, const EvalOptions& options = {});

enum class Verdict { positive, negative, boundary };

/// Sign of a ReSV relative to (0,0). All members share one sign-sum, so the
/// first member decides.
Verdict classify(const ResSet& set);

const char* to_string(Verdict v);

}  // namespace resmon
