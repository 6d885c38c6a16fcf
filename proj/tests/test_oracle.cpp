#include <doctest.h>

#include <json.hpp>
#include <random>

#include "resmon/oracle.hpp"
#include "resmon/parser.hpp"

using namespace resmon;
using namespace resmon::oracle;

TEST_CASE("episode signal pattern") {
  const Signal s = example3_signal();
  CHECK(s.length() == 25);
  const std::string expected = "FFTTTTFTTTTTTFFFTTTTTFFFFF";
  for (Step t = 0; t <= 25; ++t) {
    CHECK((s.value_at("x", t) > 0) == (expected[static_cast<std::size_t>(t)] == 'T'));
  }
}

TEST_CASE("naive and engine agree on the episode signal") {
  const Signal s = example3_signal();
  const auto psi1 = parse_srs("G[0,20] R[1,2](x > 0)");
  const auto psi2 = parse_srs("R[1,2](G[0,20] x > 0)");
  CHECK(naive_resv(psi1, s, 0) == ResSet{{-1, 2}, {1, -1}, {-2, 3}});
  CHECK(naive_resv(psi2, s, 0) == ResSet{{-24, -2}});
  CHECK(naive_resv(psi1, s, 0) == resv(psi1, s, 0));
  CHECK(naive_resv(psi2, s, 0) == resv(psi2, s, 0));
}

TEST_CASE("naive and engine agree on constant signals") {
  const Signal on({"x", "y"}, std::vector<double>(2 * 11, 1.0));
  const Signal off({"x", "y"}, std::vector<double>(2 * 11, -1.0));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto psi = random_srs(3, {"x", "y"}, rng);
    for (const Signal* s : {&on, &off}) {
      for (Step t : {0, 5, 10}) CHECK(naive_resv(psi, *s, t) == resv(psi, *s, t));
    }
  }
}

TEST_CASE("generators are deterministic and respect their ranges") {
  CHECK(random_signal(20, {"x"}, 4) == random_signal(20, {"x"}, 4));
  CHECK_FALSE(random_signal(20, {"x"}, 4) == random_signal(20, {"x"}, 5));
  CHECK(to_string(random_srs(3, {"x", "y"}, std::uint64_t{7})) ==
        to_string(random_srs(3, {"x", "y"}, std::uint64_t{7})));
  CHECK_THROWS_AS(random_signal(0, {"x"}, 1), std::invalid_argument);

  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    const auto psi = random_srs(3, {"x", "y"}, rng);
    for (const auto* a : collect_atoms(psi)) {
      CHECK(a->beta > 0);
      CHECK(a->beta <= 4);
      CHECK(a->alpha >= 0);
      CHECK(a->alpha <= 4);
    }
    const Signal s = random_signal(5, {"x", "y"}, rng());
    for (const double v : s.samples()) CHECK((v >= -3 && v <= 3));
    // Extension to the horizon is always possible.
    const Signal e = extend(s, std::max<Step>(s.length(), horizon(psi)));
    CHECK(horizon(psi) <= e.length());
  }
}

TEST_CASE("suite report shape") {
  const auto r = theorem1_suite(200, 0);
  CHECK(r.cases == 200);
  CHECK(r.violations.empty());
  std::size_t total = 0;
  for (const auto& [v, n] : r.histogram) total += n;
  CHECK(total == 200);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["cases"] == 200);
  CHECK(j["violations"].empty());
  CHECK(j["histogram"]["boundary"].get<int>() > 0);
  CHECK(j["histogram"]["positive"].get<int>() > 0);
  CHECK(j["histogram"]["negative"].get<int>() > 0);
  CHECK_THROWS(theorem1_suite(0, 0));
}

TEST_CASE("episode negative case is consistent") {
  const auto r = check_case(parse_srs("R[1,2](G[0,20] x > 0)"), example3_signal(), 0);
  CHECK(r.verdict == Verdict::negative);
  CHECK_FALSE(r.sat);
  CHECK(r.consistent);
}

TEST_CASE("the suite catches a broken evaluator") {
  // Flip the sign of every pair: positive and negative swap.
  const Evaluator broken = [](const SrsFormula& f, const Signal& s, Step t) {
    return resv(f, s, t).negated();
  };
  const auto r = theorem1_suite(200, 0, broken);
  CHECK_FALSE(r.violations.empty());
  // Dropping durability information is caught as well.
  const Evaluator lossy = [](const SrsFormula& f, const Signal& s, Step t) {
    std::vector<ResPair> p;
    for (const auto& x : resv(f, s, t)) p.push_back({x.rec, 1});
    return max_re(p);
  };
  CHECK_FALSE(theorem1_suite(300, 1, lossy).violations.empty());
}
