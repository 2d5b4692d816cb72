#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "wcalc/errors.hpp"
#include "wcalc/matrices.hpp"

using namespace wcalc;

namespace {

// Random normalized log-convex reduced sequence: log m_0 = log m_1 = 0 and
// non-decreasing, non-negative increments.
WeightSequence random_reduced(std::mt19937_64& rng, std::size_t K) {
  std::uniform_real_distribution<double> u(0.0, 0.6);
  std::vector<double> lm(K + 1, 0.0);
  double step = 0.0;
  for (std::size_t j = 2; j <= K; ++j) {
    step += u(rng);
    lm[j] = lm[j - 1] + step;
  }
  return WeightSequence::table_log(lm);
}

// max over l and k_1 + ... + k_l = k (k_i >= 1, unordered) of
// log m_l + sum log m_{k_i}, by explicit partition enumeration.
double brute_composition(const WeightSequence& m, std::size_t k) {
  if (k == 0) return 0.0;
  double best = -INFINITY;
  std::vector<std::size_t> parts;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t rest, std::size_t maxpart) {
    if (rest == 0) {
      double s = m.log_term(parts.size());
      for (std::size_t p : parts) s += m.log_term(p);
      best = std::max(best, s);
      return;
    }
    for (std::size_t p = std::min(rest, maxpart); p >= 1; --p) {
      parts.push_back(p);
      rec(rest - p, p);
      parts.pop_back();
    }
  };
  rec(k, k);
  return best;
}

}  // namespace

TEST_CASE("composition DP equals partition enumeration") {
  std::mt19937_64 rng(20240601);
  for (int rep = 0; rep < 50; ++rep) {
    const WeightSequence m = random_reduced(rng, 12);
    const auto dp = composition_sequence(m, 12);
    for (std::size_t k = 0; k <= 12; ++k) CHECK(std::abs(dp[k] - brute_composition(m, k)) <= 1e-9);
  }
}

TEST_CASE("ptt matrix exact law") {
  const WeightMatrix M = WeightMatrix::ptt(1.0, 2.0);
  for (auto [c1, c2] : {std::pair{1.0, 2.0}, std::pair{0.5, 4.0}})
    for (std::size_t j = 1; j <= 256; ++j) {
      const double jd = static_cast<double>(j);
      const double lhs = (M.term(c2, j) - M.term(c1, j)) / jd;
      CHECK(std::abs(lhs - jd * (std::log(c2) - std::log(c1))) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("build_matrix rejects decreasing families") {
  const WeightMatrix g = WeightMatrix::generic({{1.0, WeightSequence::gevrey(2.0)}, {2.0, WeightSequence::gevrey(1.0)}});
  CHECK_THROWS_AS(build_matrix(g, {1.0, 2.0}), OrderViolation);
  CHECK_THROWS_AS(build_matrix(WeightMatrix::ptt(1.0, 2.0), {2.0, 1.0}), InvalidParameter);
  CHECK_NOTHROW(build_matrix(WeightMatrix::ptt(1.0, 2.0), {0.5, 1.0, 2.0}));
}

TEST_CASE("matrix condition plumbing") {
  const WeightMatrix M = WeightMatrix::ptt(1.0, 2.0);
  CHECK_THROWS_AS(check_matrix_condition(M, MatrixConditionId::parse("mg"), {1.0, 2.0}, 64), GridTooSmall);
  CHECK_THROWS_AS(check_matrix_condition(M, MatrixConditionId::parse("mg"), {1.0, 2.0, 4.0}, 8), HorizonTooSmall);
  CHECK_THROWS_AS(MatrixConditionId::parse("mg", "x"), InvalidParameter);
  const MatrixReport r = check_matrix_condition(M, MatrixConditionId::parse("constant"), {1.0, 2.0, 4.0}, 64);
  CHECK(r.per_index.size() == 3);
  const Json j = to_json(r);
  CHECK(j["per_index"].size() == 3);
}

TEST_CASE("L condition on scale families follows the exponent test") {
  const WeightSequence g = WeightSequence::gevrey(1.0);
  const std::vector<double> grid = {0.5, 1.0, 2.0, 4.0};
  const WeightMatrix lin = WeightMatrix::scale_family(g, ExponentSequence::linear());
  CHECK(check_matrix_condition(lin, MatrixConditionId::parse("L"), grid, 256).overall() == Status::Holds);
}

TEST_CASE("reduced sequence divides by j!") {
  const WeightSequence r = reduced_sequence(WeightSequence::gevrey(2.0));
  CHECK(r.log_term(10) == doctest::Approx(std::lgamma(11.0)));
}

TEST_CASE("exponent family absorption") {
  const ExponentFamily lin = ExponentFamily::constant(ExponentSequence::linear());
  CHECK(check_exponent_family_absorption(lin, Flavor::Roumieu, {1.0, 2.0, 4.0}, 256).is_holds());
}
