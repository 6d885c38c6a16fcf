#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "resmon/dominance.hpp"
#include "resmon/formula.hpp"
#include "resmon/resilience.hpp"
#include "resmon/trace.hpp"

// Deliberately slow reference implementations. Nothing here shares code with
// the engine beyond the syntax trees and the Signal container.
namespace resmon::oracle {

/// Point-wise recursive satisfaction; samples past the end are held.
bool naive_sat(const StlFormula& formula, const Signal& signal, Step t);
double naive_rho(const StlFormula& formula, const Signal& signal, Step t);

DomRelation naive_compare(const ResPair& x, const ResPair& y);
/// Quadratic filters straight from the definition; duplicates removed.
std::vector<ResPair> naive_max_re(const std::vector<ResPair>& pairs);
std::vector<ResPair> naive_min_re(const std::vector<ResPair>& pairs);

/// ReSV by direct recursion: no memo, full unions, one filter per node.
/// Uses the same reference length rule as Monitor.
ResSet naive_resv(const SrsFormula& formula, const Signal& signal, Step t);

/// Single channel `x` on steps 0..25 with x > 0 exactly at
/// 2-5, 7-12 and 16-20 (values +1 / -1).
Signal example3_signal();

/// Integer-valued random walk in [-3, 3] per channel; each step keeps the
/// previous value with probability 1/2.
Signal random_signal(Step length, const std::vector<std::string>& channels, std::uint64_t seed);

/// Random STL formula of at most `depth` nested operators over `channels`.
StlFormula random_stl(int depth, const std::vector<std::string>& channels, std::mt19937_64& rng);

/// Random SRS formula: R-atom bounds alpha in [0,4], beta in [1,4], interval
/// bounds up to 5, atom thresholds in [-2,2], bodies of depth <= 2.
SrsFormula random_srs(int depth, const std::vector<std::string>& channels, std::mt19937_64& rng);
SrsFormula random_srs(int depth, const std::vector<std::string>& channels, std::uint64_t seed);

/// One random (formula, signal, time) instance.
struct Instance {
  SrsFormula formula;
  Signal signal;
  Step t = 0;
};

/// |signal| in [1, max_length], formula depth in [1, max_depth].
Instance random_instance(std::mt19937_64& rng, Step max_length = 30, int max_depth = 3);

struct CaseResult {
  ResSet resv;
  Verdict verdict;
  bool sat = false;
  /// Verdict agrees with sat (boundary agrees with both).
  bool consistent = false;
};

using Evaluator = std::function<ResSet(const SrsFormula&, const Signal&, Step)>;

/// Classifies the ReSV from `evaluator` (default: resv) and checks it against
/// Boolean satisfaction of the STL expansion.
CaseResult check_case(const SrsFormula& formula, const Signal& signal, Step t,
                      const Evaluator& evaluator = {});

struct Violation {
  std::size_t case_index = 0;
  std::string formula;
  std::string signal_csv;
  Step t = 0;
  std::string resv;
  Verdict verdict = Verdict::boundary;
  bool sat = false;
  std::string reason;
};

struct SuiteReport {
  std::size_t cases = 0;
  std::uint64_t seed = 0;
  std::vector<Violation> violations;
  std::map<Verdict, std::size_t> histogram;
};

/// Random soundness/completeness check: positive ReSV must mean the formula
/// holds, negative must mean it fails. Also flags invalid ReSVs and
/// disagreement between the engine's and the naive Boolean evaluator.
SuiteReport theorem1_suite(std::size_t n_cases, std::uint64_t seed, const Evaluator& evaluator = {});

/// {"cases": n, "seed": s, "violations": [...], "histogram": {...}}
std::string to_json(const SuiteReport& report);

}  // namespace resmon::oracle
