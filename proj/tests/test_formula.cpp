#include <doctest.h>

#include <random>

#include "resmon/formula.hpp"
#include "resmon/oracle.hpp"
#include "resmon/parser.hpp"

using namespace resmon;

namespace {

template <class T>
const T& as(const auto& f) {
  const T* p = std::get_if<T>(&f->op);
  REQUIRE(p != nullptr);
  return *p;
}

// Boolean signal over channel p from a bit pattern, bit i = value at step i.
Signal bits(unsigned pattern, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back((pattern >> i) & 1u);
  return Signal({"p"}, v);
}

// Smallest N such that the verdict at 0 is fixed by samples 0..N whatever
// follows; checked over every continuation of `tail` further steps.
Step brute_force_horizon(const StlFormula& f, int max_n, int tail) {
  for (int n = 0; n <= max_n; ++n) {
    bool stable = true;
    for (unsigned prefix = 0; prefix < (1u << (n + 1)) && stable; ++prefix) {
      bool first = true, verdict = false;
      for (unsigned suffix = 0; suffix < (1u << tail) && stable; ++suffix) {
        const bool v = oracle::naive_sat(f, bits(prefix | (suffix << (n + 1)), n + 1 + tail), 0);
        if (first) verdict = v, first = false;
        stable = v == verdict;
      }
    }
    if (stable) return n;
  }
  return -1;
}

}  // namespace

TEST_CASE("parse closed always over an atom") {
  const auto f = parse_stl("G[0,10] (x >= 2)");
  const auto& g = as<stl::Always>(f);
  CHECK(g.interval == Interval{0, 10});
  CHECK(g.closed);
  const auto& a = as<stl::Atom>(g.arg);
  CHECK(a.relation == Relation::ge);
  CHECK(a.threshold == 2.0);
  REQUIRE(a.expr.terms.size() == 1);
  CHECK(a.expr.terms[0].channel == "x");
  CHECK(a.expr.terms[0].coef == 1.0);
}

TEST_CASE("whitespace does not matter") {
  CHECK(structurally_equal(parse_stl("G[0,10](x>=2)"), parse_stl("  G [ 0 , 10 ]\n( x >= 2 ) ")));
}

TEST_CASE("affine atoms") {
  const auto f = parse_stl("2*x - y + 1.5 <= -3");
  const auto& a = as<stl::Atom>(f);
  CHECK(a.relation == Relation::le);
  CHECK(a.threshold == -3.0);
  REQUIRE(a.expr.terms.size() == 2);
  CHECK(a.expr.terms[0].coef == 2.0);
  CHECK(a.expr.terms[1].coef == -1.0);
  CHECK(a.expr.terms[1].channel == "y");
  CHECK(a.expr.constant == 1.5);
}

TEST_CASE("strict comparisons warn and become non-strict") {
  const auto r = parse_stl_with_warnings("x > 0 and y < 1");
  CHECK(r.warnings.size() == 2);
  const auto& c = as<stl::And>(r.formula);
  CHECK(as<stl::Atom>(c.lhs).relation == Relation::ge);
  CHECK(as<stl::Atom>(c.rhs).relation == Relation::le);
}

TEST_CASE("precedence: not > and > or > U, prefixes bind tight") {
  CHECK(structurally_equal(parse_stl("not p and q or r"),
                           parse_stl("((not p) and q) or r")));
  CHECK(structurally_equal(parse_stl("p or q U[0,2] r and s"),
                           parse_stl("(p or q) U[0,2] (r and s)")));
  CHECK(structurally_equal(parse_stl("G[0,1] p and q"), parse_stl("(G[0,1] p) and q")));
  CHECK(structurally_equal(parse_stl("p U[0,1] q U[0,2] r"), parse_stl("p U[0,1] (q U[0,2] r)")));
}

TEST_CASE("bare channel name reads as >= 0.5") {
  const auto& a = as<stl::Atom>(parse_stl("p"));
  CHECK(a.relation == Relation::ge);
  CHECK(a.threshold == 0.5);
}

TEST_CASE("syntax errors") {
  CHECK_THROWS_AS(parse_stl("G[0,inf] p"), ParseError);
  CHECK_THROWS_AS(parse_stl("G[3,1] p"), ParseError);
  CHECK_THROWS_AS(parse_stl("x >="), ParseError);
  CHECK_THROWS_AS(parse_stl("(x >= 1"), ParseError);
  CHECK_THROWS_AS(parse_stl("x >= 1 y"), ParseError);
  CHECK_THROWS_AS(parse_stl("F[0,2) p"), ParseError);
  CHECK_THROWS_AS(parse_srs("R[4,0](p)"), ParseError);
  CHECK_THROWS_AS(parse_srs("x >= 1"), ParseError);
  try {
    parse_stl("p and\n  >= 2");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("SRS parsing") {
  const auto psi1 = parse_srs("G[0,20] R[1,2](x > 0)");
  const auto& g = as<srs::Always>(psi1);
  CHECK(g.interval == Interval{0, 20});
  const auto& r = as<srs::RAtom>(g.arg);
  CHECK(r.alpha == 1);
  CHECK(r.beta == 2);
  CHECK(as<stl::Atom>(r.body).threshold == 0.0);

  const auto r01 = parse_srs("R[0,1](x >= 2)");
  CHECK(as<srs::RAtom>(r01).alpha == 0);
  CHECK(as<srs::RAtom>(r01).beta == 1);

  CHECK_THROWS_AS(srs::resilience(1, 0, parse_stl("p")), FormulaError);
  CHECK_THROWS_AS(srs::resilience(-1, 1, parse_stl("p")), FormulaError);
}

TEST_CASE("seconds mode divides bounds by dt") {
  ParseOptions opts;
  opts.seconds_per_step = 0.1;
  const auto f = parse_srs("G[0,500] R[30,30](J <= 500)", opts);
  const auto& g = as<srs::Always>(f);
  CHECK(g.interval == Interval{0, 5000});
  CHECK(as<srs::RAtom>(g.arg).alpha == 300);
  CHECK_THROWS_AS(parse_srs("R[0.05,1](p)", opts), ParseError);
}

TEST_CASE("horizon") {
  CHECK(horizon(parse_stl("(p1 U[0,5] G[1,2] p2) and F[0,10] G[1,6] p2")) == 16);
  CHECK(horizon(parse_stl("x >= 1")) == 0);
  CHECK(horizon(parse_srs("R[4,4](p)")) == 7);
  CHECK(horizon(stl::always({2, 5}, parse_stl("p"), false)) == 4);
  CHECK(horizon(parse_srs("G[0,20] R[1,2](x > 0)")) == 22);
}

TEST_CASE("horizon matches the shortest deciding prefix") {
  const auto r44 = srs_to_stl(parse_srs("R[4,4](p)"));
  CHECK(brute_force_horizon(r44, 10, 6) == 7);
  CHECK(brute_force_horizon(parse_stl("G[1,2] F[0,3] p"), 8, 4) == 5);
  CHECK(brute_force_horizon(stl::always({2, 5}, parse_stl("p"), false), 8, 4) == 4);
  CHECK(brute_force_horizon(parse_stl("(not p) U[1,3] p"), 8, 4) == 3);
}

TEST_CASE("srs_to_stl expansion") {
  const auto e = srs_to_stl(parse_srs("R[4,4](p)"));
  CHECK(structurally_equal(e, parse_stl("(not p) U[0,4] G[0,4) p")));
  CHECK(to_string(e) == to_string(parse_stl("(not p) U[0,4] G[0,4) p")));

  const auto n = srs_to_stl(parse_srs("not R[0,1](p)"));
  CHECK(structurally_equal(n, parse_stl("not ((not p) U[0,0] G[0,1) p)")));
}

TEST_CASE("printer round-trips and horizons agree on random formulas") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto psi = oracle::random_srs(3, {"x", "y"}, rng);
    const auto text = to_string(psi);
    CAPTURE(text);
    CHECK(structurally_equal(parse_srs(text), psi));
    const auto phi = srs_to_stl(psi);
    CHECK(structurally_equal(parse_stl(to_string(phi)), phi));
    CHECK(horizon(phi) == horizon(psi));
    CHECK(collect_atoms(psi).size() >= 1);
  }
}
