#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "resmon/flock.hpp"
#include "resmon/formula.hpp"
#include "resmon/resilience.hpp"
#include "resmon/trace.hpp"

namespace resmon::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_parse = 2,
  exit_trace = 3,
  exit_eval = 4,
  exit_violation = 5,
};

enum class Format { json, csv, text };

struct ReportPair {
  ResPair pair;
  double rec_seconds = 0.0;
  double dur_seconds = 0.0;
  std::size_t atom_index = 0;
  std::string atom;
  Step atom_time = 0;
};

struct MonitorReport {
  std::string formula;
  Step t = 0;
  double dt = 1.0;
  std::vector<ReportPair> pairs;
  Verdict verdict = Verdict::boundary;
  std::vector<std::string> warnings;
  double runtime_ms = 0.0;
};

/// Evaluates and annotates. `warnings` are carried into the report.
MonitorReport build_report(const SrsFormula& formula, const Signal& signal, Step t,
                           const EvalOptions& options, std::vector<std::string> warnings = {});

std::string format_report(const MonitorReport& report, Format format);
/// Inverse of the JSON form's "pairs" member.
std::vector<ResPair> pairs_from_json(const std::string& json);

struct ParetoRow {
  Step t = 0;
  ResPair pair;
  bool on_front = false;
};

/// The atom's pair at every t' in [lo, hi], flagging the rows that make up
/// min_re over the window (earliest time per distinct pair).
std::vector<ParetoRow> pareto_rows(const SrsFormula& atom, const Signal& signal, Step lo, Step hi,
                                   const EvalOptions& options = {});
void write_pareto_csv(const std::vector<ParetoRow>& rows, std::ostream& out);

struct MonitorArgs {
  std::string trace_path;
  std::optional<std::string> formula;
  std::optional<std::string> formula_file;
  Step t = 0;
  double dt = 1.0;
  Format format = Format::text;
  bool no_extend = false;
  bool seconds = false;
};

struct ParetoArgs {
  std::string trace_path;
  std::string atom;
  Step lo = 0;
  Step hi = 0;
  double dt = 1.0;
  bool no_extend = false;
  bool seconds = false;
  std::optional<std::string> out_path;
};

struct VerifyArgs {
  std::size_t cases = 1000;
  std::uint64_t seed = 0;
};

struct FlockArgs {
  FlockParams params;
  double duration = 500.0;
  std::optional<std::string> out_path;
};

// Each command writes results to `out`, diagnostics to `err`, and returns an
// ExitCode.
int cmd_monitor(const MonitorArgs& args, std::ostream& out, std::ostream& err);
int cmd_pareto(const ParetoArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_flock(const FlockArgs& args, std::ostream& out, std::ostream& err);

}  // namespace resmon::cli
