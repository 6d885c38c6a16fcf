#include <doctest.h>

#include <random>

#include "resmon/oracle.hpp"
#include "resmon/parser.hpp"
#include "resmon/resilience.hpp"
#include "resmon/stl.hpp"

using namespace resmon;

namespace {

Signal xs(std::vector<double> v) { return Signal({"x"}, std::move(v)); }

Signal bits(unsigned pattern, int rows) {
  std::vector<double> v;
  for (int i = 0; i < rows; ++i) v.push_back((pattern >> i) & 1u);
  return Signal({"p"}, v);
}

// Every formula up to three levels over one Boolean channel, with a few
// interval shapes per operator.
std::vector<StlFormula> small_formulas() {
  const std::vector<Interval> ivs{{0, 0}, {0, 1}, {1, 2}};
  auto unary = [&](const std::vector<StlFormula>& in) {
    std::vector<StlFormula> out;
    for (const auto& f : in) {
      out.push_back(stl::negate(f));
      for (const auto& iv : ivs) {
        out.push_back(stl::always(iv, f));
        out.push_back(stl::eventually(iv, f));
        if (iv.hi > iv.lo) out.push_back(stl::always(iv, f, false));
      }
    }
    return out;
  };
  auto binary = [&](const std::vector<StlFormula>& a, const std::vector<StlFormula>& b) {
    std::vector<StlFormula> out;
    for (const auto& f : a) {
      for (const auto& g : b) {
        out.push_back(stl::conj(f, g));
        out.push_back(stl::disj(f, g));
        for (const auto& iv : ivs) out.push_back(stl::until(iv, f, g));
      }
    }
    return out;
  };
  const std::vector<StlFormula> s1{stl::atom("p", 0.5), stl::negate(stl::atom("p", 0.5))};
  std::vector<StlFormula> s2 = s1;
  for (auto& f : unary(s1)) s2.push_back(f);
  for (auto& f : binary(s1, s1)) s2.push_back(f);
  std::vector<StlFormula> all = s2;
  for (auto& f : unary(s2)) all.push_back(f);
  for (auto& f : binary(s2, s1)) all.push_back(f);
  for (auto& f : binary(s1, s2)) all.push_back(f);
  return all;
}

}  // namespace

TEST_CASE("atom satisfaction and robustness") {
  const Signal s = xs({3, -1, 2});
  const auto f = parse_stl("x >= 2");
  CHECK(sat(f, s, 0));
  CHECK_FALSE(sat(f, s, 1));
  CHECK(rho(f, s, 0) == 1.0);
  CHECK(rho(parse_stl("x <= 2"), s, 0) == -1.0);
  CHECK(rho(parse_stl("x <= 2"), s, 1) == 3.0);
}

TEST_CASE("half-open always skips its upper end") {
  const Signal s = xs({1, 1, -1});
  const auto half = parse_stl("G[0,2) (x > 0)");
  CHECK(sat(half, s, 0));
  CHECK_FALSE(sat(parse_stl("G[0,2] (x > 0)"), s, 0));
}

TEST_CASE("R-atom expansion on the episode signal at 13") {
  const Signal s = oracle::example3_signal();
  const auto f = parse_stl("(not (x > 0)) U[0,4] G[0,4) (x > 0)");
  // Brute force: some t' in [13,17] starts four positive steps with no
  // positive step before it... x > 0 first holds at 16 and stays so to 20.
  bool expected = false;
  for (Step t2 = 13; t2 <= 17; ++t2) {
    bool rhs = true, lhs = true;
    for (Step k = t2; k < t2 + 4; ++k) rhs = rhs && s.value_at("x", k) > 0;
    for (Step k = 13; k < t2; ++k) lhs = lhs && s.value_at("x", k) <= 0;
    expected = expected || (rhs && lhs);
  }
  CHECK(expected);
  CHECK(sat(f, s, 13) == expected);
}

TEST_CASE("until allows t' = t") {
  const Signal s = xs({1, -1});
  CHECK(sat(parse_stl("(x >= 5) U[0,1] (x >= 1)"), s, 0));
  CHECK_FALSE(sat(parse_stl("(x >= 5) U[1,1] (x >= 1)"), s, 0));
}

TEST_CASE("time and length checks") {
  const Signal s = xs({1, 2, 3});
  const auto f = parse_stl("F[0,4] x >= 3");
  CHECK_THROWS_AS(sat(f, s, 3), EvaluationError);
  CHECK_THROWS_AS(sat(f, s, -1), EvaluationError);
  CHECK(sat(f, s, 0));
  EvalOptions strict;
  strict.extension = ExtensionPolicy::error;
  CHECK_THROWS_AS(sat(f, s, 0, strict), EvaluationError);
  CHECK_NOTHROW(sat(parse_stl("F[0,2] x >= 3"), s, 0, strict));
  CHECK_THROWS_AS(sat(parse_stl("y >= 0"), s, 0), EvaluationError);
}

TEST_CASE("exhaustive small-scope agreement with the naive evaluator") {
  const auto formulas = small_formulas();
  REQUIRE(formulas.size() > 500);
  std::size_t checked = 0;
  for (int rows = 2; rows <= 8; ++rows) {
    for (unsigned pattern = 0; pattern < (1u << rows); ++pattern) {
      const Signal s = bits(pattern, rows);
      for (const auto& f : formulas) {
        const auto trace = satisfaction_trace(f, s);
        for (Step t = 0; t < rows; ++t) {
          if ((trace[static_cast<std::size_t>(t)] != 0) != oracle::naive_sat(f, s, t)) {
            FAIL_CHECK(to_string(f) << " at " << t << " pattern " << pattern << " rows " << rows);
          }
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 1000000);
}

TEST_CASE("robustness agrees with brute force and is sound") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1500; ++i) {
    const auto f = oracle::random_stl(3, {"x", "y"}, rng);
    const Signal s = oracle::random_signal(10, {"x", "y"}, rng());
    const auto r = robustness_trace(f, s);
    const auto b = satisfaction_trace(f, s);
    for (Step t = 0; t <= s.length(); ++t) {
      const double v = r[static_cast<std::size_t>(t)];
      CAPTURE(to_string(f));
      CAPTURE(t);
      CHECK(v == oracle::naive_rho(f, s, t));
      if (v > 0) CHECK(b[static_cast<std::size_t>(t)]);
      if (v < 0) CHECK_FALSE(b[static_cast<std::size_t>(t)]);
      CHECK(rho(stl::negate(f), s, t) == -v);
    }
  }
}

TEST_CASE("until robustness is the max-min over (t', t'')") {
  std::mt19937_64 rng(8);
  const auto f = parse_stl("(x >= 0) U[1,4] (y <= 1)");
  for (int i = 0; i < 200; ++i) {
    const Signal s = oracle::random_signal(10, {"x", "y"}, rng());
    for (Step t = 0; t <= 10; ++t) {
      double best = -1e300;
      for (Step t2 = t + 1; t2 <= t + 4; ++t2) {
        double v = 1 - s.value_at("y", std::min<Step>(t2, 10));
        for (Step k = t; k < t2; ++k) v = std::min(v, s.value_at("x", std::min<Step>(k, 10)));
        best = std::max(best, v);
      }
      CHECK(rho(f, s, t) == best);
    }
  }
}

TEST_CASE("verdict does not depend on samples past t + horizon") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto f = oracle::random_stl(3, {"x", "y"}, rng);
    const Step h = horizon(f);
    const Signal base = oracle::random_signal(h + 3, {"x", "y"}, rng());
    // Splice arbitrary samples after step h + t.
    const Signal noise = oracle::random_signal(h + 3, {"x", "y"}, rng());
    for (Step t = 0; t <= 2; ++t) {
      std::vector<double> v = base.samples();
      for (Step k = t + h + 1; k <= base.length(); ++k) {
        v[static_cast<std::size_t>(2 * k)] = noise.value_at("x", k);
        v[static_cast<std::size_t>(2 * k + 1)] = noise.value_at("y", k);
      }
      const Signal spliced({"x", "y"}, v);
      CHECK(sat(f, base, t) == sat(f, spliced, t));
      CHECK(sat(f, base, t) == sat(f, extend(base, base.length() + 7), t));
    }
  }
}

TEST_CASE("time robustness corner case") {
  const auto p = parse_stl("x >= 0");
  const Signal xi1 = xs({1, -1});  // true then false
  const Signal xi2 = xs({-1, 1});  // false then true
  CHECK(theta_plus(p, xi1, 0) == 0);
  CHECK(theta_plus(p, xi2, 0) == 0);
  CHECK(t_rec(p, xi1, 0) == 0);
  CHECK(t_rec(p, xi2, 0) == 1);
}

TEST_CASE("time robustness counts the run length") {
  const auto p = parse_stl("x >= 0");
  CHECK(theta_plus(p, xs({1, 1, 1, 1, -1}), 0) == 3);
  CHECK(theta_plus(p, xs({-1, -1, -1, 1}), 0) == -2);
  CHECK(theta_plus(stl::negate(p), xs({-1, -1, -1, 1}), 0) == 2);
  CHECK(theta_plus(p, xs({1, 1, 1}), 0) == 2);
  CHECK_THROWS_AS(theta_plus(parse_stl("G[0,1] x >= 0"), xs({1, 1}), 0), EvaluationError);
}
