#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "resmon/cli.hpp"

using namespace resmon;

namespace {

// "LO,HI" -> pair of steps.
bool parse_window(const std::string& text, Step& lo, Step& hi) {
  std::istringstream in(text);
  char comma = 0;
  return static_cast<bool>(in >> lo >> comma >> hi) && comma == ',' && in.peek() == EOF;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resilience monitor for STL/SRS specifications over CSV traces"};
  app.require_subcommand(1);

  const std::map<std::string, cli::Format> formats{
      {"json", cli::Format::json}, {"csv", cli::Format::csv}, {"text", cli::Format::text}};

  cli::MonitorArgs monitor;
  auto* mon = app.add_subcommand("monitor", "Compute the resilience set of a formula at one time");
  mon->add_option("--trace", monitor.trace_path, "CSV trace (t,<channels>...)")->required();
  auto* formula_opt = mon->add_option("--formula", monitor.formula, "SRS formula text");
  auto* file_opt = mon->add_option("--formula-file", monitor.formula_file, "File holding the formula");
  formula_opt->excludes(file_opt);
  mon->add_option("--time,-t", monitor.t, "Time origin in steps")->capture_default_str();
  mon->add_option("--dt", monitor.dt, "Seconds per step")->capture_default_str()->check(CLI::PositiveNumber);
  mon->add_option("--format", monitor.format, "json | csv | text")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->capture_default_str();
  mon->add_flag("--no-extend", monitor.no_extend, "Fail instead of extending a short trace");
  mon->add_flag("--seconds", monitor.seconds, "Formula bounds are in seconds (divided by --dt)");

  cli::ParetoArgs pareto;
  std::string window = "0,0";
  auto* par = app.add_subcommand("pareto", "Per-time pairs of one atom with the min front flagged");
  par->add_option("--trace", pareto.trace_path, "CSV trace")->required();
  par->add_option("--atom", pareto.atom, "R[a,b](phi)")->required();
  par->add_option("--window", window, "LO,HI in steps")->required();
  par->add_option("--dt", pareto.dt, "Seconds per step")->capture_default_str()->check(CLI::PositiveNumber);
  par->add_option("--out", pareto.out_path, "Output CSV (default stdout)");
  par->add_flag("--no-extend", pareto.no_extend, "Fail instead of extending a short trace");
  par->add_flag("--seconds", pareto.seconds, "Atom bounds are in seconds (divided by --dt)");

  cli::VerifyArgs verify;
  auto* ver = app.add_subcommand("verify", "Random soundness/completeness check of the semantics");
  ver->add_option("--cases", verify.cases, "Number of random instances")->capture_default_str();
  ver->add_option("--seed", verify.seed, "RNG seed")->capture_default_str();

  cli::FlockArgs flock;
  auto& fp = flock.params;
  std::vector<std::pair<double, double>> windows;
  auto* flo = app.add_subcommand("flock", "Simulate a disturbed boids flock and emit J/CC trace");
  flo->add_option("--n", fp.n, "Boids")->capture_default_str();
  flo->add_option("--dims", fp.dims, "Spatial dimension")->capture_default_str();
  flo->add_option("--dt", fp.dt, "Seconds per step")->capture_default_str();
  flo->add_option("--duration", flock.duration, "Seconds to simulate")->capture_default_str();
  flo->add_option("--rc", fp.r_c, "Interaction radius")->capture_default_str();
  flo->add_option("--omega", fp.omega, "Separation weight in J")->capture_default_str();
  flo->add_option("--magnitude", fp.magnitude_max, "Max displacement per step")->capture_default_str();
  flo->add_option("--affected", fp.affected, "Boids displaced per window")->capture_default_str();
  flo->add_option("--window", windows, "Disturbance window START END (seconds); repeatable");
  flo->add_flag("--no-disturbance", [&](std::int64_t) { fp.windows.clear(); }, "Disable displacement");
  flo->add_flag("--resample-each-step", fp.resample_each_step, "New affected subset every step");
  flo->add_option("--separation", fp.separation)->capture_default_str();
  flo->add_option("--cohesion", fp.cohesion)->capture_default_str();
  flo->add_option("--alignment", fp.alignment)->capture_default_str();
  flo->add_option("--centering", fp.centering)->capture_default_str();
  flo->add_option("--damping", fp.damping)->capture_default_str();
  flo->add_option("--max-speed", fp.max_speed)->capture_default_str();
  flo->add_option("--max-accel", fp.max_accel)->capture_default_str();
  flo->add_option("--seed", fp.seed)->capture_default_str();
  flo->add_flag("--positions", fp.record_positions, "Also emit per-boid coordinates");
  flo->add_option("--out", flock.out_path, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::exit_usage;
  }

  if (*mon) return cli::cmd_monitor(monitor, std::cout, std::cerr);
  if (*par) {
    if (!parse_window(window, pareto.lo, pareto.hi)) {
      std::cerr << "--window expects LO,HI\n";
      return cli::exit_usage;
    }
    return cli::cmd_pareto(pareto, std::cout, std::cerr);
  }
  if (*ver) return cli::cmd_verify(verify, std::cout, std::cerr);
  if (*flo) {
    if (!windows.empty()) {
      fp.windows.clear();
      for (const auto& [start, end] : windows) fp.windows.push_back({start, end});
    }
    return cli::cmd_flock(flock, std::cout, std::cerr);
  }
  return cli::exit_usage;
}
