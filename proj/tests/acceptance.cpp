// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include <fmt/core.h>

#include "resmon/flock.hpp"
#include "resmon/oracle.hpp"
#include "resmon/parser.hpp"
#include "resmon/resilience.hpp"
#include "resmon/stl.hpp"

using namespace resmon;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Runs `body`, which returns (ok, detail); exceptions count as failure.
void criterion(int id, const std::string& what, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    report(id, ok, what, detail);
  } catch (const std::exception& e) {
    report(id, false, what, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  criterion(1, "max_re/min_re of {(-1,2),(1,-2),(2,-1)}", [] {
    const std::vector<ResPair> p{{-1, 2}, {1, -2}, {2, -1}};
    const auto start = Clock::now();
    const ResSet mx = max_re(p);
    const ResSet mn = min_re(p);
    const double ms = ms_since(start);
    const bool ok = mx == ResSet{{-1, 2}, {2, -1}} && mn == ResSet{{-1, 2}, {1, -2}} && ms < 1.0;
    return std::pair{ok, fmt::format("max={} min={} in {:.4f} ms, limit 1 ms", to_string(mx),
                                     to_string(mn), ms)};
  });

  criterion(2, "resilience sets on the reconstructed episode signal", [] {
    const Signal s = oracle::example3_signal();
    const auto start = Clock::now();
    const ResSet r1 = resv(parse_srs("G[0,20] R[1,2](x > 0)"), s, 0);
    const ResSet r2 = resv(parse_srs("R[1,2](G[0,20] x > 0)"), s, 0);
    const double ms = ms_since(start);
    const bool ok = r1 == ResSet{{-1, 2}, {1, -1}, {-2, 3}} && r2 == ResSet{{-24, -2}} && ms < 100.0;
    return std::pair{ok, fmt::format("psi1={} psi2={} in {:.3f} ms, limit 100 ms", to_string(r1),
                                     to_string(r2), ms)};
  });

  criterion(3, "horizon of (p1 U[0,5] G[1,2] p2) and F[0,10] G[1,6] p2", [] {
    const Step h = horizon(parse_stl("(p1 U[0,5] G[1,2] p2) and F[0,10] G[1,6] p2"));
    return std::pair{h == 16, fmt::format("got {}, expected 16", h)};
  });

  criterion(4, "time robustness ties broken by recovery time", [] {
    const auto p = parse_stl("x >= 0");
    const Signal xi1({"x"}, {1.0, -1.0});
    const Signal xi2({"x"}, {-1.0, 1.0});
    const Step th1 = theta_plus(p, xi1, 0), th2 = theta_plus(p, xi2, 0);
    const Step r1 = t_rec(p, xi1, 0), r2 = t_rec(p, xi2, 0);
    const bool ok = th1 == 0 && th2 == 0 && r1 == 0 && r2 == 1;
    return std::pair{ok, fmt::format("theta+ = {}, {}; t_rec = {}, {}", th1, th2, r1, r2)};
  });

  criterion(5, "soundness/completeness on 1000 random instances", [] {
    const auto start = Clock::now();
    const auto rep = oracle::theorem1_suite(1000, 0);
    const double s = ms_since(start) / 1000.0;
    const auto count = [&](Verdict v) {
      const auto it = rep.histogram.find(v);
      return it == rep.histogram.end() ? std::size_t{0} : it->second;
    };
    const bool ok = rep.cases == 1000 && rep.violations.empty() && s < 60.0;
    return std::pair{ok, fmt::format("{} violations; positive {}, negative {}, boundary {}; {:.2f} s, limit 60 s",
                                     rep.violations.size(), count(Verdict::positive),
                                     count(Verdict::negative), count(Verdict::boundary), s)};
  });

  criterion(6, "dominance structure and set validity", [] {
    std::size_t bad_partition = 0, bad_order = 0, bad_front = 0, bad_resv = 0;
    std::size_t triples = 0, subsets = 0, instances = 0;

    for (int a = -5; a <= 5; ++a)
      for (int b = -5; b <= 5; ++b)
        for (int c = -5; c <= 5; ++c)
          for (int d = -5; d <= 5; ++d) {
            const ResPair x{a, b}, y{c, d};
            const auto r = compare(x, y), back = compare(y, x);
            const int holds = (r == DomRelation::succ) + (back == DomRelation::succ) +
                              (r == DomRelation::non_dominated && back == DomRelation::non_dominated);
            if (holds != 1 || r != oracle::naive_compare(x, y)) ++bad_partition;
          }

    std::mt19937_64 rng(0);
    std::uniform_int_distribution<int> v(-5, 5);
    auto draw = [&] { return ResPair{v(rng), v(rng)}; };
    for (; triples < 20000; ++triples) {
      const auto x = draw(), y = draw(), z = draw();
      if (compare(x, x) == DomRelation::succ) ++bad_order;
      if (compare(x, y) == DomRelation::succ && compare(y, z) == DomRelation::succ &&
          compare(x, z) != DomRelation::succ) {
        ++bad_order;
      }
    }

    for (int sample = 0; sample < 200; ++sample) {
      std::vector<ResPair> pts(6);
      for (auto& p : pts) p = draw();
      for (unsigned mask = 1; mask < 64; ++mask, ++subsets) {
        std::vector<ResPair> sub;
        for (unsigned i = 0; i < 6; ++i)
          if (mask & (1u << i)) sub.push_back(pts[i]);
        const auto mx = max_re(sub), mn = min_re(sub);
        if (mx.size() == 0 || mn.size() == 0 || !mutually_non_dominated(mx.pairs()) ||
            !mutually_non_dominated(mn.pairs())) {
          ++bad_front;
        }
      }
    }

    for (; instances < 1000; ++instances) {
      const auto inst = oracle::random_instance(rng, 30, 3);
      Monitor m(inst.formula, inst.signal);
      std::vector<ResPair> pairs;
      for (const auto& w : m.evaluate(inst.t)) pairs.push_back(w.pair);
      if (pairs.empty() || !mutually_non_dominated(pairs)) ++bad_resv;
    }

    const bool ok = bad_partition + bad_order + bad_front + bad_resv == 0;
    return std::pair{ok, fmt::format("partition 0/{} bad={}, order triples {} bad={}, subsets {} bad={}, "
                                     "random sets {} bad={}",
                                     11 * 11 * 11 * 11, bad_partition, triples, bad_order, subsets,
                                     bad_front, instances, bad_resv)};
  });

  criterion(7, "naive and memoised evaluators agree on 500 instances", [] {
    std::mt19937_64 rng(7);
    std::size_t mismatches = 0;
    for (int i = 0; i < 500; ++i) {
      const auto inst = oracle::random_instance(rng, 20, 3);
      if (!(oracle::naive_resv(inst.formula, inst.signal, inst.t) == resv(inst.formula, inst.signal, inst.t))) {
        ++mismatches;
      }
    }
    return std::pair{mismatches == 0, fmt::format("{} mismatches", mismatches)};
  });

  criterion(8, "flocking run at default parameters, monitored end to end", [] {
    const auto start = Clock::now();
    FlockParams params;
    const Signal trace = simulate(params, 500.0);
    const auto psi = parse_srs("G[0,5000](F[0,600] R[300,300](J <= 500))");
    const ResSet r = resv(psi, trace, 0);
    const bool shape_ok = trace.rows() == 5001 && r.size() > 0 && mutually_non_dominated(r.pairs());

    FlockParams calm;
    calm.windows.clear();
    const Signal quiet = simulate(calm, 500.0);
    Step formed = -1;
    for (Step k = quiet.length(); k >= 0; --k) {
      if (quiet.value_at("J", k) <= 500.0 && quiet.value_at("CC", k) == 1.0) {
        formed = k;
      } else {
        break;
      }
    }
    const double s = ms_since(start) / 1000.0;
    const bool ok = shape_ok && formed >= 0 && s < 300.0;
    return std::pair{ok, fmt::format("{} rows, resv={} verdict {}; undisturbed flock holds CC=1, J<=500 "
                                     "from step {}; {:.2f} s, limit 300 s",
                                     trace.rows(), to_string(r), to_string(classify(r)), formed, s)};
  });

  criterion(9, "negated conjunction equals disjunction of negations on 200 instances", [] {
    std::mt19937_64 rng(9);
    std::size_t mismatches = 0;
    for (int i = 0; i < 200; ++i) {
      const auto inst = oracle::random_instance(rng, 30, 3);
      const auto other = oracle::random_srs(3, {"x", "y"}, rng);
      const auto lhs = srs::negate(srs::conj(inst.formula, other));
      const auto rhs = srs::disj(srs::negate(inst.formula), srs::negate(other));
      if (!(resv(lhs, inst.signal, inst.t) == resv(rhs, inst.signal, inst.t))) ++mismatches;
    }
    return std::pair{mismatches == 0, fmt::format("{} mismatches", mismatches)};
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
