#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "wcalc/associated.hpp"
#include "wcalc/errors.hpp"

using namespace wcalc;

namespace {
// Brute-force sup over j <= J with terms built from summed logs.
double brute_omega(double s, double t, std::size_t J) {
  double best = 0.0, lf = 0.0;
  for (std::size_t j = 1; j <= J; ++j) {
    lf += std::log(static_cast<double>(j));
    best = std::max(best, static_cast<double>(j) * std::log(t) - s * lf);
  }
  return best;
}
std::vector<double> factorials(std::size_t n) {
  std::vector<double> v(n + 1);
  for (std::size_t j = 0; j <= n; ++j) v[j] = std::lgamma(j + 1.0);
  return v;
}
}  // namespace

TEST_CASE("omega of Gevrey sequences matches brute force") {
  for (double s : {1.0, 2.0}) {
    const OmegaFunction w = OmegaFunction::from_sequence(WeightSequence::gevrey(s));
    for (double t : {0.5, 1.0, 2.718281828459045, 10.0, 1e3, 1e6}) {
      CHECK(w(t) == doctest::Approx(brute_omega(s, t, 3000000)).epsilon(1e-12));
      CHECK(omega_exhaustive(WeightSequence::gevrey(s), std::log(t), 3000000).value ==
            doctest::Approx(w(t)).epsilon(1e-12));
    }
  }
  CHECK(OmegaFunction::from_sequence(WeightSequence::gevrey(1.0))(std::exp(1.0)) ==
        doctest::Approx(1.3069).epsilon(1e-4));
}

TEST_CASE("omega vanishes on [0, 1] for normalized sequences") {
  const OmegaFunction w = OmegaFunction::from_sequence(WeightSequence::ptt(1.0, 2.0));
  CHECK(w(0.0) == 0.0);
  CHECK(w(1.0) == doctest::Approx(0.0));
}

TEST_CASE("sup not attained on a short table") {
  const OmegaFunction w = OmegaFunction::from_sequence(WeightSequence::table_log(factorials(20)));
  CHECK_THROWS_AS(w(1e6), SupNotAttained);
}

TEST_CASE("recover_term inverts omega for Gevrey") {
  const OmegaFunction w = OmegaFunction::from_sequence(WeightSequence::gevrey(1.0));
  const LogGrid g{0.0, std::log(40.0), 400};
  for (std::size_t j = 1; j <= 20; ++j) CHECK(std::abs(recover_term(w, j, g) - std::lgamma(j + 1.0)) < 1e-2);
}

TEST_CASE("Young conjugate of t^a") {
  const double a = 2.0;
  const OmegaFunction w = OmegaFunction::from_function([a](double t) { return std::pow(t, a); }, "tpow");
  for (double s : {1.0, 4.0, 10.0}) {
    const double exact = (s / a) * (std::log(s / a) - 1.0);
    const ConjugateResult r = young_conjugate(w, s, LogGrid{-5.0, 5.0, 400});
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-6));
  }
  CHECK_THROWS_AS(young_conjugate(w, 1e6, LogGrid{-5.0, 1.0, 50}), MaximizerOnBoundary);
}

TEST_CASE("associated-function relations") {
  const WeightSequence g1 = WeightSequence::gevrey(1.0), g2 = WeightSequence::gevrey(2.0);
  const Verdict big = assoc_relation_check(g2, g1, AssocMode::bigO, 4, 256);
  CHECK(big.is_holds());
  const Verdict small = assoc_relation_check(g1, g2, AssocMode::smallO, 4, 256);
  CHECK(small.is_fails());
  const Verdict ratio = assoc_relation_check(g2, g1, AssocMode::numeric_ratio, 1, 256, LogGrid::over(10, 1e6, 200));
  CHECK(ratio.evidence["tail_max"].get<double>() < 1.0);
  CHECK_THROWS_AS(parse_assoc_mode("zzz"), InvalidParameter);
}

TEST_CASE("omega table is monotone and convex in log t") {
  const auto rows = omega_table(OmegaFunction::from_sequence(WeightSequence::gevrey(1.0)), LogGrid::over(1, 1e4, 50));
  REQUIRE(rows.size() == 50);
  const std::string csv = omega_csv(rows);
  CHECK(csv.rfind("t,omega,j\n", 0) == 0);
}

TEST_CASE("from_omega reproduces the sequence") {
  const OmegaFunction w = OmegaFunction::from_sequence(WeightSequence::gevrey(1.0));
  const WeightSequence back = from_omega(w, 1.0, LogGrid{0.0, std::log(40.0), 400});
  for (std::size_t j = 1; j <= 10; ++j) CHECK(std::abs(back.log_term(j) - std::lgamma(j + 1.0)) < 1e-2);
}
