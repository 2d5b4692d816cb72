#include "wcalc/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "wcalc/errors.hpp"

namespace wcalc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sum of e^{x_i - shift}, pairwise.
double shifted_pairwise(std::span<const double> xs, double shift) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += std::exp(x - shift);
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return shifted_pairwise(xs.first(half), shift) +
         shifted_pairwise(xs.subspan(half), shift);
}

}  // namespace

LogReal LogReal::from_linear(double x) {
  if (!(x >= 0.0)) throw DomainError("LogReal from negative or NaN value");
  return from_log(std::log(x));
}

LogReal log_add(LogReal a, LogReal b) {
  const double hi = std::max(a.log(), b.log());
  const double lo = std::min(a.log(), b.log());
  if (lo == kNegInf) return LogReal::from_log(hi);
  return LogReal::from_log(hi + std::log1p(std::exp(lo - hi)));
}

LogReal log_sub(LogReal a, LogReal b) {
  if (b.log() > a.log()) {
    throw DomainError("log_sub: subtrahend exceeds minuend (" +
                      std::to_string(b.log()) + " > " +
                      std::to_string(a.log()) + ")");
  }
  if (b.is_zero()) return a;
  if (a.log() == b.log()) return LogReal::zero();
  // log(e^a - e^b) = a + log(1 - e^{b-a})
  return LogReal::from_log(a.log() + std::log(-std::expm1(b.log() - a.log())));
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return kNegInf;
  const double m = *std::max_element(xs.begin(), xs.end());
  if (m == kNegInf) return kNegInf;
  if (m == std::numeric_limits<double>::infinity()) return m;
  return m + std::log(shifted_pairwise(xs, m));
}

std::string shortest(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double log_factorial(double j) { return std::lgamma(j + 1.0); }

}  // namespace wcalc
