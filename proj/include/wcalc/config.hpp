#ifndef WCALC_CONFIG_HPP
#define WCALC_CONFIG_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace wcalc {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

inline constexpr std::size_t kDefaultHorizon = 512;
inline constexpr std::size_t kMinHorizon = 8;
inline constexpr std::size_t kDefaultFdbHorizon = 60;

// Limit-detection thresholds shared by conditions, relations, matrices and
// membership classification. A finite horizon can never prove an asymptotic
// statement; these constants are where "looks settled" is decided.
struct Thresholds {
  // Running sup counts as stabilized when the change from mid horizon to the
  // end is below this, relative to max(1, |sup|).
  double rel_stability = 1e-3;
  // ... or when the doubling increments of the running sup decay at least
  // geometrically with this ratio and the last increment is below
  // `decay_rel_cap` relative.
  double decay_ratio = 0.7;
  double decay_rel_cap = 0.05;
  // Doubling increments that do not shrink below this ratio signal divergence.
  double divergence_ratio = 0.9;
  // Power-law fit margin for series convergence (exponent > 1 + margin).
  double powerfit_margin = 0.1;
  // Margin (log scale) for the quarter-versus-quarter divergence rule.
  double divergence_margin = std::log(10.0);
  // Absolute tolerance for exact monotonicity/ordering checks in log scale,
  // scaled by max(1, |value|).
  double mono_tol = 1e-9;
  // Off-diagonal (j, k) pairs sampled in moderate-growth checks.
  std::size_t mg_random_pairs = 64;
  std::uint64_t seed = 0x5eedULL;
};

// Log-spaced t-grid: n points with log t evenly spaced on [log_lo, log_hi].
struct LogGrid {
  double log_lo = 0.0;
  double log_hi = std::log(1e8);
  std::size_t n = 200;

  static LogGrid over(double t_lo, double t_hi, std::size_t n) {
    return LogGrid{std::log(t_lo), std::log(t_hi), n};
  }
  double at(std::size_t i) const {
    if (n <= 1) return log_lo;
    return log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                        static_cast<double>(n - 1);
  }
  std::vector<double> points() const {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = at(i);
    return u;
  }
};

inline constexpr int kGoldenIterations = 40;

// Geometric default index grid {2^-4, ..., 2^8}.
inline std::vector<double> default_index_grid() {
  std::vector<double> g;
  for (int e = -4; e <= 8; ++e) g.push_back(std::ldexp(1.0, e));
  return g;
}

}  // namespace wcalc

#endif
