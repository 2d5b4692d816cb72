#include <doctest.h>

#include <cmath>

#include "wcalc/conditions.hpp"
#include "wcalc/errors.hpp"

using namespace wcalc;

namespace {
Status run(const WeightSequence& M, const char* c, std::size_t H = 512,
           std::optional<double> Q = std::nullopt) {
  return check_condition(M, ConditionId::parse(c, Q), H).status;
}
}  // namespace

TEST_CASE("Gevrey sequences satisfy the standard conditions") {
  const WeightSequence g2 = WeightSequence::gevrey(2.0);
  for (const char* c : {"lc", "slc", "normalized", "mg", "dc", "nq", "nq-carleman", "gamma1"})
    CHECK_MESSAGE(run(g2, c) == Status::Holds, c);
  CHECK(run(g2, "beta1", 512, 2.0) == Status::Holds);
  CHECK(run(g2, "beta3", 512, 2.0) == Status::Holds);
}

TEST_CASE("lc failure carries the first violating index") {
  // log terms 0, 0, 2, 3, 7: quotients 0, 2, 1, 4; the drop is at j = 3.
  const WeightSequence t = WeightSequence::table_log({0.0, 0.0, 2.0, 3.0, 7.0, 12.0, 18.0, 25.0, 33.0});
  const Verdict v = check_condition(t, ConditionId::parse("lc"), 8);
  REQUIRE(v.is_fails());
  CHECK(v.witness->first == 3);
}

TEST_CASE("normalized fails when M_1 < M_0") {
  const WeightSequence t = WeightSequence::table_log({0.0, -1.0, 0.0, 2.0, 5.0, 9.0, 14.0, 20.0, 27.0});
  const Verdict v = check_condition(t, ConditionId::parse("normalized"), 8);
  CHECK(v.is_fails());
}

TEST_CASE("ptt is strongly log-convex with divergent roots") {
  const WeightSequence p = WeightSequence::ptt(1.0, 2.0);
  CHECK(run(p, "lc") == Status::Holds);
  CHECK(run(p, "slc") == Status::Holds);
  CHECK(roots_divergent(p, 512));
}

TEST_CASE("condition ids") {
  CHECK(ConditionId::parse("nq-carleman").tag == ConditionTag::nq_carleman);
  CHECK(ConditionId::parse("nq_carleman").name() == ConditionId::parse("nq-carleman").name());
  CHECK_THROWS_AS(ConditionId::parse("beta1"), InvalidParameter);
  CHECK_THROWS_AS(ConditionId::parse("beta1", 2.5), InvalidParameter);
  CHECK_THROWS_AS(ConditionId::parse("zzz"), InvalidParameter);
}

TEST_CASE("horizon below the minimum is rejected") {
  CHECK_THROWS_AS(check_condition(WeightSequence::gevrey(1.0), ConditionId::parse("lc"), 4), HorizonTooSmall);
}

TEST_CASE("gamma lower bound on Gevrey") {
  for (double s : {1.0, 2.0}) {
    const auto res = gamma_lower_bound(WeightSequence::gevrey(s), {s - 0.5, s, s + 0.5}, 512);
    REQUIRE(res.size() == 3);
    CHECK(res[0].second.is_holds());
    CHECK(res[1].second.is_holds());
    CHECK(res[2].second.is_fails());
  }
}

TEST_CASE("root growth profile brackets the quotient") {
  const Json p = root_growth_profile(WeightSequence::gevrey(1.0), 512);
  CHECK(p.contains("roots_divergent"));
  CHECK(p["roots_divergent"].get<bool>());
}

TEST_CASE("power-law tail fit") {
  std::vector<double> x(513);
  for (std::size_t j = 1; j <= 512; ++j) x[j] = 2.0 * std::log(double(j)) + 0.5;
  const TailFit f = fit_tail(x, 512);
  CHECK(f.exponent == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(0.5));
  CHECK(std::isfinite(f.tail_bound));
}
