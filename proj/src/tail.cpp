#include "wcalc/tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wcalc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool decreased(double prev, double cur, double tol) {
  return cur < prev - tol * std::max(1.0, std::abs(prev));
}

}  // namespace

SupAnalysis analyze_running_sup(std::span<const double> x,
                                const Thresholds& th) {
  SupAnalysis a;
  const std::size_t n = x.size();
  if (n == 0) {
    a.sup = kNegInf;
    return a;
  }
  std::vector<double> run(n);
  double best = kNegInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > best) {
      best = x[i];
      a.argmax = i;
    }
    run[i] = best;
  }
  a.sup = best;
  auto at = [&](std::size_t k) { return run[std::min(n - 1, k)]; };
  const std::size_t last = n - 1;
  a.quarter_sup = at(last / 4);
  a.mid_sup = at(last / 2);
  a.checkpoints = {at(last / 8), at(last / 4), at(last / 2), at(last)};

  if (!std::isfinite(a.sup)) {
    a.diverging = a.sup > 0;
    return a;
  }
  const double d1 = a.mid_sup - a.quarter_sup;
  const double d2 = a.sup - a.mid_sup;
  a.tail_change = d2;
  a.decay_ratio = d1 > 0 ? d2 / d1 : (d2 > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  const double scale = std::max(1.0, std::abs(a.sup));
  if (!std::isfinite(a.mid_sup) || !std::isfinite(a.quarter_sup)) {
    // The sup only became finite late; nothing to compare against.
    a.stable = false;
    return a;
  }
  if (d2 <= th.rel_stability * scale) {
    a.stable = true;
  } else if (d1 > 0 && d2 <= th.decay_ratio * d1 &&
             d2 <= th.decay_rel_cap * scale) {
    a.stable = true;
  } else if (d2 >= th.divergence_ratio * d1) {
    a.diverging = true;
  }
  return a;
}

QuarterStats quarter_stats(std::span<const double> y) {
  QuarterStats q;
  const std::size_t n = y.size();
  if (n == 0) return q;
  const std::size_t qn = std::max<std::size_t>(1, n / 4);
  auto first = y.first(qn);
  auto lastq = y.last(qn);
  q.first_min = *std::min_element(first.begin(), first.end());
  q.first_max = *std::max_element(first.begin(), first.end());
  q.last_min = *std::min_element(lastq.begin(), lastq.end());
  q.last_max = *std::max_element(lastq.begin(), lastq.end());
  return q;
}

bool empirically_divergent(std::span<const double> y, const Thresholds& th) {
  const std::size_t n = y.size();
  if (n < 8) return false;
  const QuarterStats q = quarter_stats(y);
  if (q.last_min - q.first_max >= th.divergence_margin) return true;
  const double a = y[(n - 1) / 4];
  const double b = y[(n - 1) / 2];
  const double c = y[n - 1];
  const double d1 = b - a;
  const double d2 = c - b;
  return q.last_min > q.first_max && d1 > 0 && d2 > 0 &&
         d2 >= th.divergence_ratio * d1;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  LineFit f;
  if (n == 0) return f;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  return f;
}

std::optional<std::size_t> last_decrease(std::span<const double> y,
                                         double tol) {
  for (std::size_t i = y.size(); i-- > 1;) {
    if (decreased(y[i - 1], y[i], tol)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_decrease(std::span<const double> y,
                                          double tol) {
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (decreased(y[i - 1], y[i], tol)) return i;
  }
  return std::nullopt;
}

}  // namespace wcalc
