#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <vector>

#include "wcalc/errors.hpp"
#include "wcalc/numerics.hpp"
#include "wcalc/tail.hpp"

using namespace wcalc;

namespace {
// Direct summation of logs; independent of lgamma.
double naive_log_factorial(int j) {
  double s = 0.0;
  for (int k = 2; k <= j; ++k) s += std::log(static_cast<double>(k));
  return s;
}
}  // namespace

TEST_CASE("log_factorial agrees with summed logs") {
  for (int j = 0; j <= 400; ++j)
    CHECK(log_factorial(j) == doctest::Approx(naive_log_factorial(j)).epsilon(1e-12));
}

TEST_CASE("log_add and log_sub") {
  CHECK(log_add(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)));
  // far apart magnitudes must not overflow
  CHECK(log_add(1000.0, 0.0) == doctest::Approx(1000.0));
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(log_add(ninf, 3.0) == 3.0);
  CHECK(log_sub(LogReal::from_log(std::log(5.0)), LogReal::from_log(std::log(3.0))).log() ==
        doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(log_sub(LogReal::from_log(0.0), LogReal::from_log(1.0)), DomainError);
  CHECK(log_sub(LogReal::from_log(2.0), LogReal::from_log(2.0)).is_zero());
}

TEST_CASE("log_sum_exp matches direct sum and never falls below the max") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> xs(1 + rep * 7);
    double direct = 0.0, mx = -1e300;
    for (auto& x : xs) {
      x = u(rng);
      direct += std::exp(x);
      mx = std::max(mx, x);
    }
    const double l = log_sum_exp(xs);
    CHECK(l == doctest::Approx(std::log(direct)).epsilon(1e-12));
    CHECK(l >= mx);
  }
  std::vector<double> big = {800.0, 800.0};
  CHECK(log_sum_exp(big) == doctest::Approx(800.0 + std::log(2.0)));
}

TEST_CASE("LogReal arithmetic") {
  const LogReal a = LogReal::from_linear(6.0), b = LogReal::from_linear(3.0);
  CHECK((a * b).linear() == doctest::Approx(18.0));
  CHECK((a / b).linear() == doctest::Approx(2.0));
  CHECK(a.pow(0.5).linear() == doctest::Approx(std::sqrt(6.0)));
  CHECK(LogReal::zero().is_zero());
  CHECK(b < a);
}

TEST_CASE("shortest round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5, 5e-324}) CHECK(std::strtod(shortest(x).c_str(), nullptr) == x);
  CHECK(shortest(1.0) == "1");
  CHECK(shortest(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("running sup analysis") {
  Thresholds th;
  std::vector<double> conv(512), div(512);
  for (std::size_t i = 0; i < conv.size(); ++i) {
    conv[i] = 1.0 - 1.0 / static_cast<double>(i + 1);
    div[i] = static_cast<double>(i);
  }
  const SupAnalysis a = analyze_running_sup(conv, th);
  CHECK(a.stable);
  CHECK_FALSE(a.diverging);
  const SupAnalysis b = analyze_running_sup(div, th);
  CHECK(b.diverging);
  CHECK(b.argmax == 511);
  CHECK(empirically_divergent(div, th));
  CHECK_FALSE(empirically_divergent(conv, th));
}

TEST_CASE("line fit and decrease search") {
  std::vector<double> x = {0, 1, 2, 3}, y = {1, 3, 5, 7};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  std::vector<double> z = {0, 1, 0.5, 2, 1.5, 3};
  CHECK(first_decrease(z, 1e-9) == 2);
  CHECK(last_decrease(z, 1e-9) == 4);
  CHECK_FALSE(last_decrease(x, 1e-9).has_value());
}
