#pragma once

#include <stdexcept>
#include <vector>

#include "resmon/formula.hpp"
#include "resmon/trace.hpp"

namespace resmon {

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExtensionPolicy {
  /// Repeat the terminal sample when a formula looks past the end.
  extend,
  /// Throw EvaluationError instead.
  error,
};

struct EvalOptions {
  ExtensionPolicy extension = ExtensionPolicy::extend;
};

/// Boolean satisfaction at every step 0..signal.length().
///
/// Sub-results needed beyond the last sample are read at the last sample: on
/// a signal held constant after its end, every formula is constant there too,
/// so this is exactly evaluation on the extended signal.
std::vector<char> satisfaction_trace(const StlFormula& formula, const Signal& signal);

/// Robustness at every step 0..signal.length(), with the same extension rule.
std::vector<double> robustness_trace(const StlFormula& formula, const Signal& signal);

bool sat(const StlFormula& formula, const Signal& signal, Step t, const EvalOptions& options = {});
double rho(const StlFormula& formula, const Signal& signal, Step t, const EvalOptions& options = {});

/// Right time robustness of an atomic proposition (or its negation): the
/// number of further steps, up to length()-t, over which its truth value
/// stays as it is at t; positive if it holds at t, negative otherwise.
Step theta_plus(const StlFormula& literal, const Signal& signal, Step t);

/// Value of an affine expression on one sample.
double affine_value(const AffineExpr& expr, const Signal& signal, Step t);

/// Throws unless every channel the formula mentions exists in the signal.
void check_channels(const StlFormula& formula, const Signal& signal);

}  // namespace resmon
