#include "resmon/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

#include "resmon/oracle.hpp"
#include "resmon/parser.hpp"

namespace resmon::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TraceError(TraceErrorKind::bad_argument, fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string atom_text(const srs::RAtom& a) {
  return to_string(srs::resilience(a.alpha, a.beta, a.body));
}

std::string extension_warning(const Monitor& m, Step t) {
  return fmt::format("signal extended from step {} to step {} by repeating its last sample",
                     m.signal().length(), m.reference_length(t));
}

// Runs `body`, turning library exceptions into exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_parse;
  } catch (const FormulaError& e) {
    err << "formula error: " << e.what() << '\n';
    return exit_parse;
  } catch (const TraceError& e) {
    err << "trace error: " << e.what() << '\n';
    return exit_trace;
  } catch (const EvaluationError& e) {
    err << "evaluation error: " << e.what() << '\n';
    return exit_eval;
  } catch (const FlockError& e) {
    err << "simulation error: " << e.what() << '\n';
    return exit_eval;
  }
}

ParseOptions parse_options(bool seconds, double dt) {
  ParseOptions opts;
  if (seconds) opts.seconds_per_step = dt;
  return opts;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

MonitorReport build_report(const SrsFormula& formula, const Signal& signal, Step t,
                           const EvalOptions& options, std::vector<std::string> warnings) {
  const auto start = std::chrono::steady_clock::now();
  Monitor monitor(formula, signal, options);
  const auto& witnesses = monitor.evaluate(t);
  const auto stop = std::chrono::steady_clock::now();

  MonitorReport report;
  report.formula = to_string(formula);
  report.t = t;
  report.dt = signal.dt();
  std::vector<ResPair> pairs;
  for (const auto& w : witnesses) {
    pairs.push_back(w.pair);
    report.pairs.push_back({w.pair, static_cast<double>(w.pair.rec) * signal.dt(),
                            static_cast<double>(w.pair.dur) * signal.dt(), w.origin.atom_index,
                            atom_text(*monitor.atoms()[w.origin.atom_index]), w.origin.time});
  }
  report.verdict = classify(ResSet(pairs));
  report.warnings = std::move(warnings);
  if (monitor.needs_extension(t)) report.warnings.push_back(extension_warning(monitor, t));
  report.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

std::string format_report(const MonitorReport& r, Format format) {
  switch (format) {
    case Format::json: {
      json j;
      j["formula"] = r.formula;
      j["t"] = r.t;
      j["dt"] = r.dt;
      j["verdict"] = to_string(r.verdict);
      j["pairs"] = json::array();
      for (const auto& p : r.pairs) {
        j["pairs"].push_back({{"rec", p.pair.rec},
                              {"dur", p.pair.dur},
                              {"rec_seconds", p.rec_seconds},
                              {"dur_seconds", p.dur_seconds},
                              {"atom_index", p.atom_index},
                              {"atom", p.atom},
                              {"atom_time", p.atom_time}});
      }
      j["warnings"] = r.warnings;
      j["runtime_ms"] = r.runtime_ms;
      return j.dump(2) + "\n";
    }
    case Format::csv: {
      std::string out = "rec,dur,rec_seconds,dur_seconds,atom_index,atom_time,atom\n";
      for (const auto& p : r.pairs) {
        out += fmt::format("{},{},{},{},{},{},{}\n", p.pair.rec, p.pair.dur, p.rec_seconds,
                           p.dur_seconds, p.atom_index, p.atom_time, csv_field(p.atom));
      }
      return out;
    }
    case Format::text: {
      std::string out = fmt::format("formula: {}\nt: {}\nverdict: {}\n", r.formula, r.t,
                                    to_string(r.verdict));
      for (const auto& p : r.pairs) {
        out += fmt::format("  ({}, {}) steps = ({}, {}) s   from {} at t'={}\n", p.pair.rec,
                           p.pair.dur, p.rec_seconds, p.dur_seconds, p.atom, p.atom_time);
      }
      for (const auto& w : r.warnings) out += "warning: " + w + "\n";
      out += fmt::format("runtime: {:.3f} ms\n", r.runtime_ms);
      return out;
    }
  }
  return {};
}

std::vector<ResPair> pairs_from_json(const std::string& text) {
  const json j = json::parse(text);
  std::vector<ResPair> out;
  for (const auto& p : j.at("pairs")) out.push_back({p.at("rec").get<std::int64_t>(), p.at("dur").get<std::int64_t>()});
  return out;
}

std::vector<ParetoRow> pareto_rows(const SrsFormula& atom, const Signal& signal, Step lo, Step hi,
                                   const EvalOptions& options) {
  if (!std::holds_alternative<srs::RAtom>(atom->op)) {
    throw EvaluationError("the Pareto view needs a single R[a,b](...) atom");
  }
  if (lo < 0 || hi < lo) throw EvaluationError(fmt::format("bad window [{}, {}]", lo, hi));
  Monitor monitor(srs::always({lo, hi}, atom), signal, options);
  const std::vector<Witness> front = monitor.evaluate(0);
  std::vector<ParetoRow> rows;
  for (Step t = lo; t <= hi; ++t) {
    const Witness w = monitor.evaluate_subformula(atom, t, 0).front();
    const bool on_front = std::any_of(front.begin(), front.end(), [&](const Witness& f) {
      return f.pair == w.pair && f.origin.time == t;
    });
    rows.push_back({t, w.pair, on_front});
  }
  return rows;
}

void write_pareto_csv(const std::vector<ParetoRow>& rows, std::ostream& out) {
  out << "t,rec,dur,on_front\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{}\n", r.t, r.pair.rec, r.pair.dur, r.on_front ? 1 : 0);
  }
}

int cmd_monitor(const MonitorArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.formula.has_value() == args.formula_file.has_value()) {
      err << "give exactly one of --formula and --formula-file\n";
      return static_cast<int>(exit_usage);
    }
    const std::string text = args.formula ? *args.formula : read_file(*args.formula_file);
    auto parsed = parse_srs_with_warnings(text, parse_options(args.seconds, args.dt));
    const Signal signal = load_trace_file(args.trace_path, args.dt);
    EvalOptions opts;
    if (args.no_extend) opts.extension = ExtensionPolicy::error;
    const auto report = build_report(parsed.formula, signal, args.t, opts, std::move(parsed.warnings));
    if (args.format != Format::text) {
      for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    }
    out << format_report(report, args.format);
    return static_cast<int>(exit_ok);
  });
}

int cmd_pareto(const ParetoArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto parsed = parse_srs_with_warnings(args.atom, parse_options(args.seconds, args.dt));
    for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
    const Signal signal = load_trace_file(args.trace_path, args.dt);
    EvalOptions opts;
    if (args.no_extend) opts.extension = ExtensionPolicy::error;
    const auto rows = pareto_rows(parsed.formula, signal, args.lo, args.hi, opts);
    if (args.out_path) {
      std::ofstream file(*args.out_path);
      if (!file) throw TraceError(TraceErrorKind::bad_argument, fmt::format("cannot write '{}'", *args.out_path));
      write_pareto_csv(rows, file);
    } else {
      write_pareto_csv(rows, out);
    }
    return static_cast<int>(exit_ok);
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.cases < 1) {
      err << "--cases must be at least 1\n";
      return static_cast<int>(exit_usage);
    }
    const auto report = oracle::theorem1_suite(args.cases, args.seed);
    out << oracle::to_json(report) << '\n';
    if (!report.violations.empty()) {
      err << report.violations.size() << " violation(s)\n";
      return static_cast<int>(exit_violation);
    }
    return static_cast<int>(exit_ok);
  });
}

int cmd_flock(const FlockArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Signal signal = simulate(args.params, args.duration);
    if (args.out_path) {
      std::ofstream file(*args.out_path);
      if (!file) throw TraceError(TraceErrorKind::bad_argument, fmt::format("cannot write '{}'", *args.out_path));
      emit_trace(signal, file);
    } else {
      emit_trace(signal, out);
    }
    return static_cast<int>(exit_ok);
  });
}

}  // namespace resmon::cli
