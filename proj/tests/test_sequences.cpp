#include <doctest.h>

#include <cmath>

#include "wcalc/errors.hpp"
#include "wcalc/sequences.hpp"

using namespace wcalc;

namespace {
double sum_logs(std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 2; k <= j; ++k) s += std::log(static_cast<double>(k));
  return s;
}
}  // namespace

TEST_CASE("gevrey terms are s log j!") {
  const WeightSequence g = WeightSequence::gevrey(1.5);
  for (std::size_t j = 0; j <= 300; j += 7) CHECK(g.log_term(j) == doctest::Approx(1.5 * sum_logs(j)).epsilon(1e-12));
  CHECK(g.quotient_log(0) == 0.0);
  CHECK(g.quotient_log(10) == doctest::Approx(1.5 * std::log(10.0)));
  CHECK(g.reduced_log(20) == doctest::Approx(0.5 * sum_logs(20)).epsilon(1e-12));
  CHECK(g.known_log_convex());
  CHECK_THROWS_AS(WeightSequence::gevrey(0.0), InvalidParameter);
}

TEST_CASE("ptt terms") {
  const WeightSequence p = WeightSequence::ptt(1.0, 2.0);
  CHECK(p.log_term(0) == 0.0);
  CHECK(p.log_term(1) == 0.0);
  for (std::size_t j = 2; j <= 50; ++j) {
    const double jd = static_cast<double>(j);
    CHECK(p.log_term(j) == doctest::Approx(jd * jd * std::log(jd)).epsilon(1e-13));
  }
  // far index bypasses the memo but agrees with the formula
  const double far = 1e6;
  CHECK(p.log_term(1000000) == doctest::Approx(far * far * std::log(far)).epsilon(1e-12));
}

TEST_CASE("scaled sequence multiplies by c^Phi") {
  const WeightSequence base = WeightSequence::gevrey(1.0);
  const WeightSequence s = WeightSequence::scaled(base, ExponentSequence::power(2.0), 3.0);
  for (std::size_t j = 0; j <= 40; ++j)
    CHECK(s.log_term(j) == doctest::Approx(base.log_term(j) + double(j * j) * std::log(3.0)));
}

TEST_CASE("tables") {
  const WeightSequence t = WeightSequence::table({1.0, 1.0, 2.0, 6.0});
  CHECK(t.log_term(3) == doctest::Approx(std::log(6.0)));
  CHECK(t.length() == 4);
  CHECK_THROWS_AS(t.log_term(4), TableExhausted);
  CHECK_THROWS_AS(WeightSequence::table({1.0, -1.0}), InvalidParameter);
  const WeightSequence tl = WeightSequence::table_log({0.0, 0.5});
  CHECK(tl.log_term(1) == 0.5);
  CHECK_FALSE(tl.known_log_convex());
}

TEST_CASE("exponent sequences") {
  CHECK(ExponentSequence::linear()(7) == 7.0);
  CHECK(ExponentSequence::power(1.5)(4) == doctest::Approx(8.0));
  const ExponentSequence t = ExponentSequence::table({0.0, 1.0, 4.0});
  CHECK(t(2) == 4.0);
  CHECK_THROWS(t(3));
}

TEST_CASE("make_sequence round-trips describe") {
  for (const WeightSequence& m : {WeightSequence::gevrey(2.0), WeightSequence::ptt(1.0, 2.0)}) {
    const WeightSequence back = make_sequence(m.describe());
    for (std::size_t j = 0; j <= 30; ++j) CHECK(back.log_term(j) == m.log_term(j));
  }
  CHECK_THROWS_AS(make_sequence(Json{{"family", "nope"}, {"params", Json::object()}}), InvalidParameter);
}

TEST_CASE("regularize_slc leaves good sequences alone and patches the start otherwise") {
  const WeightSequence g = WeightSequence::gevrey(2.0);
  const WeightSequence same = regularize_slc(g, 256);
  CHECK(same.patch_index() == 0);
  CHECK(same.log_term(17) == g.log_term(17));

  // c^{j^2} j^{j^2} with small c has reduced quotients below 1 at the start.
  const WeightSequence m = WeightSequence::scaled(WeightSequence::ptt(1.0, 2.0), ExponentSequence::power(2.0), 0.1);
  const WeightSequence r = regularize_slc(m, 256);
  const std::size_t p = r.patch_index();
  CHECK(p > 1);
  CHECK(p <= 128);
  for (std::size_t j = 1; j < p; ++j) CHECK(r.reduced_log(j) == doctest::Approx(0.0).epsilon(1e-12));
  // beyond the patch the quotients are those of m
  for (std::size_t j = p + 1; j <= p + 20; ++j) CHECK(r.quotient_log(j) == doctest::Approx(m.quotient_log(j)));
  // reduced quotients are non-decreasing
  for (std::size_t j = 2; j <= 200; ++j)
    CHECK(r.reduced_log(j) - r.reduced_log(j - 1) >= r.reduced_log(j - 1) - r.reduced_log(j - 2) - 1e-9);
}
