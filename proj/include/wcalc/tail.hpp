#ifndef WCALC_TAIL_HPP
#define WCALC_TAIL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wcalc/config.hpp"

namespace wcalc {

// Summary of the running supremum S_n = max_{i<=n} x_i of a finite series.
// "stable" and "diverging" are mutually exclusive; neither means the data
// cannot tell.
struct SupAnalysis {
  double sup = 0.0;
  std::size_t argmax = 0;
  double quarter_sup = 0.0;  // S at n = N/4
  double mid_sup = 0.0;      // S at n = N/2
  double tail_change = 0.0;  // S_end - S_mid
  double decay_ratio = 0.0;  // (S_end - S_mid) / (S_mid - S_quarter)
  bool stable = false;
  bool diverging = false;
  std::vector<double> checkpoints;  // S at N/8, N/4, N/2, N
};

SupAnalysis analyze_running_sup(std::span<const double> x, const Thresholds& th);

// Tail statistics of a series over its first and last quarter.
struct QuarterStats {
  double first_min = 0.0, first_max = 0.0;
  double last_min = 0.0, last_max = 0.0;
};
QuarterStats quarter_stats(std::span<const double> y);

// True when y grows without bound on the evidence available: either the
// last-quarter minimum exceeds the first-quarter maximum by `margin`, or the
// series is increasing across the last two doublings with non-shrinking
// increments.
bool empirically_divergent(std::span<const double> y, const Thresholds& th);

// Least-squares line y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Largest position i >= 1 with y[i] < y[i-1] - tol * max(1, |y[i-1]|), or
// nullopt when y is non-decreasing up to tolerance.
std::optional<std::size_t> last_decrease(std::span<const double> y, double tol);
std::optional<std::size_t> first_decrease(std::span<const double> y, double tol);

}  // namespace wcalc

#endif
