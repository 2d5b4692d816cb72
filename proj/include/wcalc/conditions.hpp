#ifndef WCALC_CONDITIONS_HPP
#define WCALC_CONDITIONS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcalc/config.hpp"
#include "wcalc/json.hpp"
#include "wcalc/sequences.hpp"
#include "wcalc/verdict.hpp"

namespace wcalc {

enum class ConditionTag { lc, slc, normalized, mg, dc, nq, nq_carleman, gamma1, beta1, beta3 };

struct ConditionId {
  ConditionTag tag = ConditionTag::lc;
  std::optional<double> Q;  // beta1 / beta3 only

  // Accepts "lc", "nq-carleman" / "nq_carleman", "beta1", ...
  static ConditionId parse(const std::string& name, std::optional<double> Q = std::nullopt);
  std::string name() const;
};

Verdict check_condition(const WeightSequence& M, const ConditionId& cond,
                        std::size_t horizon, const Thresholds& th = {});

// Tail estimates of liminf/limsup of log mu_j and log M_j / j over the last
// quarter of [1, horizon], the sandwich check between them, and the
// divergence flag for the roots.
Json root_growth_profile(const WeightSequence& M, std::size_t horizon,
                         const Thresholds& th = {});

bool roots_divergent(const WeightSequence& M, std::size_t horizon,
                     const Thresholds& th = {});

// For each alpha: Holds iff log mu_j - alpha log j is non-decreasing from an
// onset j* <= horizon/2 on and (M_j / j!^alpha)^{1/j} does not decay.
std::vector<std::pair<double, Verdict>> gamma_lower_bound(
    const WeightSequence& M, const std::vector<double>& alphas,
    std::size_t horizon, const Thresholds& th = {});

// Power-law fit log mu_j ~ p log j + b over the last quarter of [1, horizon],
// shared by nq and gamma1.
struct TailFit {
  double exponent = 0.0;
  double intercept = 0.0;
  // Integral bound on sum_{j > horizon} e^{-b} j^{-p}; +inf when p <= 1.
  double tail_bound = 0.0;
};
TailFit fit_tail(const std::vector<double>& log_values, std::size_t horizon);

}  // namespace wcalc

#endif
