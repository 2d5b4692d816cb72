#ifndef WCALC_NUMERICS_HPP
#define WCALC_NUMERICS_HPP

#include <cmath>
#include <compare>
#include <limits>
#include <span>
#include <string>

namespace wcalc {

// A nonnegative quantity stored as its natural logarithm. Negative infinity
// is the (unique) encoding of zero. Multiplication and division are exact
// additions in log space; addition goes through log_add.
class LogReal {
 public:
  constexpr LogReal() : log_(-std::numeric_limits<double>::infinity()) {}

  static constexpr LogReal from_log(double log_value) {
    LogReal r;
    r.log_ = log_value;
    return r;
  }
  static LogReal from_linear(double x);
  static constexpr LogReal zero() { return LogReal{}; }
  static constexpr LogReal one() { return from_log(0.0); }

  constexpr double log() const { return log_; }
  double linear() const { return std::exp(log_); }
  constexpr bool is_zero() const {
    return log_ == -std::numeric_limits<double>::infinity();
  }

  constexpr LogReal& operator*=(LogReal o) {
    log_ += o.log_;
    return *this;
  }
  constexpr LogReal& operator/=(LogReal o) {
    log_ -= o.log_;
    return *this;
  }
  // x^p for real p
  constexpr LogReal pow(double p) const { return from_log(log_ * p); }

  friend constexpr LogReal operator*(LogReal a, LogReal b) { return a *= b; }
  friend constexpr LogReal operator/(LogReal a, LogReal b) { return a /= b; }
  friend constexpr bool operator==(LogReal a, LogReal b) = default;
  friend constexpr auto operator<=>(LogReal a, LogReal b) {
    return a.log_ <=> b.log_;
  }

 private:
  double log_;
};

// log(e^a + e^b) by the shift-by-max scheme.
LogReal log_add(LogReal a, LogReal b);

// log(e^a - e^b); throws DomainError when b > a.
LogReal log_sub(LogReal a, LogReal b);

// log(sum_i e^{x_i}) over raw log values. Pairwise reduction relative to the
// global maximum so rounding error grows like O(log n). The result is never
// below the maximum input.
double log_sum_exp(std::span<const double> xs);

inline double log_add(double a, double b) {
  return log_add(LogReal::from_log(a), LogReal::from_log(b)).log();
}

// Shortest decimal text that parses back to exactly x.
std::string shortest(double x);

// ln(j!) for j >= 0.
double log_factorial(double j);

}  // namespace wcalc

#endif
