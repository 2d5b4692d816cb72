#include "wcalc/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "wcalc/errors.hpp"
#include "wcalc/numerics.hpp"
#include "wcalc/tail.hpp"

namespace wcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double slack(double tol, double x) { return tol * std::max(1.0, std::abs(x)); }

void require_horizon(std::size_t h) {
  if (h < kMinHorizon) throw HorizonTooSmall(h, kMinHorizon);
}

std::vector<double> quotients(const WeightSequence& M, std::size_t H) {
  std::vector<double> q(H + 1);
  for (std::size_t j = 0; j <= H; ++j) q[j] = M.quotient_log(j);
  return q;
}

// Non-decreasing check of y[from..]; Fails with the first violating index.
Verdict monotone_verdict(const std::string& name, const std::vector<double>& y,
                         std::size_t from, std::size_t H, double tol) {
  double min_step = kInf;
  for (std::size_t j = from + 1; j < y.size(); ++j) {
    const double step = y[j] - y[j - 1];
    min_step = std::min(min_step, step);
    if (y[j] < y[j - 1] - slack(tol, y[j - 1])) {
      Verdict v = Verdict::fails(name, H, Witness{j, std::nullopt});
      v.evidence["previous"] = y[j - 1];
      v.evidence["value"] = y[j];
      return v;
    }
  }
  Verdict v = Verdict::holds(name, H);
  v.evidence["min_increment"] = min_step;
  return v;
}

Verdict check_normalized(const WeightSequence& M, std::size_t H, double tol) {
  const double m0 = M.log_term(0);
  const double m1 = M.log_term(1);
  Verdict v;
  if (std::abs(m0) > tol) {
    v = Verdict::fails("normalized", H, Witness{0, std::nullopt});
  } else if (m1 < m0 - tol) {
    v = Verdict::fails("normalized", H, Witness{1, std::nullopt});
  } else {
    v = Verdict::holds("normalized", H);
  }
  v.evidence["log_M0"] = m0;
  v.evidence["log_M1"] = m1;
  return v;
}

Json sup_evidence(const SupAnalysis& a) {
  return Json{{"sup", a.sup},
              {"argmax", a.argmax},
              {"checkpoints", a.checkpoints},
              {"tail_change", a.tail_change},
              {"stable", a.stable},
              {"diverging", a.diverging}};
}

Verdict check_mg(const WeightSequence& M, std::size_t H, const Thresholds& th) {
  const auto L = M.log_terms(H);
  std::vector<double> traj(H + 1, -kInf);
  auto defect = [&](std::size_t j, std::size_t k) {
    return (L[j + k] - L[j] - L[k]) / static_cast<double>(j + k + 1);
  };
  std::vector<std::size_t> diag_at;  // n for diagonal entries
  std::vector<double> diag;
  for (std::size_t j = 1; 2 * j <= H; ++j) {
    const double d = defect(j, j);
    traj[2 * j] = std::max(traj[2 * j], d);
    diag.push_back(d);
  }
  std::mt19937_64 rng(th.seed);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < th.mg_random_pairs; ++i) {
    const std::size_t j = 1 + static_cast<std::size_t>(rng() % (H - 1));
    const std::size_t k = 1 + static_cast<std::size_t>(rng() % (H - j));
    pairs.emplace_back(j, k);
    traj[j + k] = std::max(traj[j + k], defect(j, k));
  }
  const SupAnalysis a = analyze_running_sup(traj, th);

  // Monotone growth of the diagonal defect over its last quarter.
  const std::size_t q = std::max<std::size_t>(2, diag.size() / 4);
  bool diag_monotone = diag.size() >= 2;
  for (std::size_t i = diag.size() - q + 1; i < diag.size(); ++i)
    if (diag[i] < diag[i - 1]) diag_monotone = false;

  Verdict v;
  if (a.stable) {
    v = Verdict::holds("mg", H);
    const double logC = std::max(0.0, a.sup);
    v.evidence["log_C"] = logC;
    v.evidence["C"] = std::exp(logC);
  } else {
    v = Verdict::undetermined("mg", H);
    v.evidence["diverging"] = a.diverging && diag_monotone;
  }
  v.evidence["defect"] = sup_evidence(a);
  v.evidence["diagonal_defect_tail"] = std::vector<double>(diag.end() - q, diag.end());
  v.evidence["diagonal_monotone_last_quarter"] = diag_monotone;
  v.evidence["random_pairs"] = th.mg_random_pairs;
  v.evidence["seed"] = th.seed;
  return v;
}

Verdict check_dc(const WeightSequence& M, std::size_t H, const Thresholds& th) {
  std::vector<double> d(H);
  for (std::size_t j = 0; j < H; ++j)
    d[j] = M.quotient_log(j + 1) / static_cast<double>(j + 1);
  const SupAnalysis a = analyze_running_sup(d, th);
  Verdict v;
  if (a.stable) {
    v = Verdict::holds("dc", H);
    const double logA = std::max(0.0, a.sup);
    v.evidence["log_A"] = logA;
    v.evidence["A"] = std::exp(logA);
  } else {
    v = Verdict::undetermined("dc", H);
    v.evidence["diverging"] = a.diverging;
  }
  v.evidence["defect"] = sup_evidence(a);
  return v;
}

// Series sum_{j=1..H} e^{-x_j} with a power-law tail model for x.
Verdict series_verdict(const std::string& name, const std::vector<double>& x,
                       std::size_t H, const Thresholds& th) {
  std::vector<double> neg(H);
  for (std::size_t j = 1; j <= H; ++j) neg[j - 1] = -x[j];
  const double log_partial = log_sum_exp(neg);
  const TailFit f = fit_tail(x, H);
  Verdict v;
  if (f.exponent > 1.0 + th.powerfit_margin) {
    v = Verdict::holds(name, H);
    v.evidence["series_bound"] = std::exp(log_partial) + f.tail_bound;
  } else {
    v = Verdict::undetermined(name, H);
  }
  v.evidence["partial_sum"] = std::exp(log_partial);
  v.evidence["fitted_exponent"] = f.exponent;
  v.evidence["fitted_intercept"] = f.intercept;
  v.evidence["tail_bound"] = f.tail_bound;
  return v;
}

Verdict check_gamma1(const WeightSequence& M, std::size_t H, const Thresholds& th) {
  const auto q = quotients(M, H);
  const TailFit f = fit_tail(q, H);
  if (!(f.exponent > 1.0 + th.powerfit_margin)) {
    Verdict v = Verdict::undetermined("gamma1", H);
    v.evidence["fitted_exponent"] = f.exponent;
    v.evidence["reason"] = "series of 1/mu_j not shown convergent";
    return v;
  }
  // suffix[j] = log sum_{k=j..H} 1/mu_k, then add the fitted tail.
  std::vector<double> suffix(H + 2, -kInf);
  for (std::size_t j = H; j >= 1; --j) suffix[j] = log_add(suffix[j + 1], -q[j]);
  const double log_tail = std::log(f.tail_bound);
  std::vector<double> val(H / 2);
  for (std::size_t j = 1; j <= H / 2; ++j)
    val[j - 1] = q[j] - std::log(static_cast<double>(j)) + log_add(suffix[j], log_tail);
  const SupAnalysis a = analyze_running_sup(val, th);
  Verdict v;
  if (a.stable) {
    v = Verdict::holds("gamma1", H);
    v.evidence["constant"] = std::exp(a.sup);
  } else {
    v = Verdict::undetermined("gamma1", H);
    v.evidence["diverging"] = a.diverging;
  }
  v.evidence["log_sup"] = sup_evidence(a);
  v.evidence["fitted_exponent"] = f.exponent;
  return v;
}

Verdict check_beta(const std::string& name, const WeightSequence& M, double Q,
                   bool strong, std::size_t H, const Thresholds& th) {
  if (!(Q >= 2.0) || std::floor(Q) != Q)
    throw InvalidParameter("Q", "must be an integer >= 2");
  const std::size_t iq = static_cast<std::size_t>(Q);
  const std::size_t lo = std::max<std::size_t>(1, H / (2 * iq));
  const std::size_t hi = H / iq;
  if (hi < lo + 1) throw HorizonTooSmall(H, 4 * iq);
  double tail_min = kInf;
  std::size_t arg = lo;
  for (std::size_t j = lo; j <= hi; ++j) {
    const double r = M.quotient_log(iq * j) - M.quotient_log(j);
    if (r < tail_min) {
      tail_min = r;
      arg = j;
    }
  }
  const double thr = strong ? std::log(Q) : 0.0;
  const double tol = slack(th.mono_tol, thr) + th.mono_tol;
  Verdict v;
  if (tail_min > thr + tol) {
    v = Verdict::holds(name, H);
  } else if (tail_min < thr - tol) {
    v = Verdict::fails(name, H, Witness{arg, iq * arg});
  } else {
    v = Verdict::undetermined(name, H);
    v.evidence["reason"] = "tail minimum equals the threshold";
  }
  v.evidence["Q"] = Q;
  v.evidence["log_ratio_tail_min"] = tail_min;
  v.evidence["threshold"] = thr;
  v.evidence["window"] = Json::array({lo, hi});
  return v;
}

}  // namespace

ConditionId ConditionId::parse(const std::string& raw, std::optional<double> Q) {
  std::string n = raw;
  std::replace(n.begin(), n.end(), '-', '_');
  ConditionId c;
  if (n == "lc") c.tag = ConditionTag::lc;
  else if (n == "slc") c.tag = ConditionTag::slc;
  else if (n == "normalized") c.tag = ConditionTag::normalized;
  else if (n == "mg") c.tag = ConditionTag::mg;
  else if (n == "dc") c.tag = ConditionTag::dc;
  else if (n == "nq") c.tag = ConditionTag::nq;
  else if (n == "nq_carleman") c.tag = ConditionTag::nq_carleman;
  else if (n == "gamma1") c.tag = ConditionTag::gamma1;
  else if (n == "beta1") c.tag = ConditionTag::beta1;
  else if (n == "beta3") c.tag = ConditionTag::beta3;
  else throw InvalidParameter("condition", "unknown condition '" + raw + "'");
  const bool needs_q = c.tag == ConditionTag::beta1 || c.tag == ConditionTag::beta3;
  if (needs_q && !Q) throw InvalidParameter("Q", "required for " + n);
  if (!needs_q && Q) throw InvalidParameter("Q", "not accepted by " + n);
  if (Q && (!(*Q >= 2.0) || std::floor(*Q) != *Q)) throw InvalidParameter("Q", "must be an integer >= 2");
  c.Q = Q;
  return c;
}

std::string ConditionId::name() const {
  switch (tag) {
    case ConditionTag::lc: return "lc";
    case ConditionTag::slc: return "slc";
    case ConditionTag::normalized: return "normalized";
    case ConditionTag::mg: return "mg";
    case ConditionTag::dc: return "dc";
    case ConditionTag::nq: return "nq";
    case ConditionTag::nq_carleman: return "nq_carleman";
    case ConditionTag::gamma1: return "gamma1";
    case ConditionTag::beta1: return "beta1";
    case ConditionTag::beta3: return "beta3";
  }
  return "";
}

TailFit fit_tail(const std::vector<double>& x, std::size_t H) {
  const std::size_t lo = std::max<std::size_t>(2, (3 * H) / 4);
  std::vector<double> lx, ly;
  for (std::size_t j = lo; j <= H; ++j) {
    lx.push_back(std::log(static_cast<double>(j)));
    ly.push_back(x[j]);
  }
  const LineFit lf = fit_line(lx, ly);
  TailFit f;
  f.exponent = lf.slope;
  f.intercept = lf.intercept;
  const double p = f.exponent;
  f.tail_bound = p > 1.0 ? std::exp(-lf.intercept + (1.0 - p) * std::log(static_cast<double>(H))) / (p - 1.0)
                         : kInf;
  return f;
}

Verdict check_condition(const WeightSequence& M, const ConditionId& cond,
                        std::size_t H, const Thresholds& th) {
  require_horizon(H);
  const std::string name = cond.name();
  switch (cond.tag) {
    case ConditionTag::lc:
      return monotone_verdict(name, quotients(M, H), 1, H, th.mono_tol);
    case ConditionTag::slc: {
      auto q = quotients(M, H);
      for (std::size_t j = 1; j <= H; ++j) q[j] -= std::log(static_cast<double>(j));
      return monotone_verdict(name, q, 1, H, th.mono_tol);
    }
    case ConditionTag::normalized:
      return check_normalized(M, H, th.mono_tol);
    case ConditionTag::mg:
      return check_mg(M, H, th);
    case ConditionTag::dc:
      return check_dc(M, H, th);
    case ConditionTag::nq:
      return series_verdict(name, quotients(M, H), H, th);
    case ConditionTag::nq_carleman: {
      std::vector<double> r(H + 1, 0.0);
      for (std::size_t j = 1; j <= H; ++j) r[j] = M.log_term(j) / static_cast<double>(j);
      return series_verdict(name, r, H, th);
    }
    case ConditionTag::gamma1:
      return check_gamma1(M, H, th);
    case ConditionTag::beta1:
      return check_beta(name, M, cond.Q.value_or(2.0), true, H, th);
    case ConditionTag::beta3:
      return check_beta(name, M, cond.Q.value_or(2.0), false, H, th);
  }
  throw InvalidParameter("condition", "unhandled");
}

bool roots_divergent(const WeightSequence& M, std::size_t H, const Thresholds& th) {
  require_horizon(H);
  std::vector<double> y(H);
  for (std::size_t j = 1; j <= H; ++j) y[j - 1] = M.log_term(j) / static_cast<double>(j);
  return empirically_divergent(y, th);
}

Json root_growth_profile(const WeightSequence& M, std::size_t H, const Thresholds& th) {
  require_horizon(H);
  std::vector<double> mu(H), root(H);
  for (std::size_t j = 1; j <= H; ++j) {
    mu[j - 1] = M.quotient_log(j);
    root[j - 1] = M.log_term(j) / static_cast<double>(j);
  }
  const QuarterStats qm = quarter_stats(mu);
  const QuarterStats qr = quarter_stats(root);
  const bool mu_div = empirically_divergent(mu, th);
  const bool root_div = empirically_divergent(root, th);
  const double lim_mu_inf = mu_div ? kInf : qm.last_min;
  const double lim_mu_sup = mu_div ? kInf : qm.last_max;
  const double lim_r_inf = root_div ? kInf : qr.last_min;
  const double lim_r_sup = root_div ? kInf : qr.last_max;
  const double tol = std::max(qm.last_max - qm.last_min, qr.last_max - qr.last_min) + th.mono_tol;
  auto le = [&](double a, double b) { return a == b || a <= b + tol; };
  const bool sandwich = le(lim_mu_inf, lim_r_inf) && le(lim_r_inf, lim_r_sup) &&
                        le(lim_r_sup, lim_mu_sup);
  Json e = Json::object();
  e["horizon"] = H;
  e["liminf_log_mu"] = lim_mu_inf;
  e["liminf_log_root"] = lim_r_inf;
  e["limsup_log_root"] = lim_r_sup;
  e["limsup_log_mu"] = lim_mu_sup;
  e["sandwich"] = sandwich;
  e["log_root_at_horizon"] = root.back();
  e["log_mu_at_horizon"] = mu.back();
  e["root_first_quarter_max"] = qr.first_max;
  e["root_last_quarter_min"] = qr.last_min;
  e["mu_divergent"] = mu_div;
  e["roots_divergent"] = root_div;
  return e;
}

std::vector<std::pair<double, Verdict>> gamma_lower_bound(
    const WeightSequence& M, const std::vector<double>& alphas, std::size_t H,
    const Thresholds& th) {
  require_horizon(H);
  if (alphas.empty()) throw InvalidParameter("alphas", "must be nonempty");
  const auto q = quotients(M, H);
  const auto L = M.log_terms(H);
  std::vector<std::pair<double, Verdict>> out;
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) throw InvalidParameter("alphas", "entries must be > 0");
    const std::string name = "gamma_lb";
    // g[0] duplicates g[1] so positions coincide with j.
    std::vector<double> g(H + 1), y(H);
    for (std::size_t j = 1; j <= H; ++j) {
      g[j] = q[j] - alpha * std::log(static_cast<double>(j));
      y[j - 1] = (L[j] - alpha * log_factorial(static_cast<double>(j))) / static_cast<double>(j);
    }
    g[0] = g[1];
    const auto viol = last_decrease(g, th.mono_tol);
    const std::size_t onset = viol ? *viol : 1;
    const QuarterStats qs = quarter_stats(y);
    const bool non_vanishing = qs.last_min >= qs.first_min - slack(th.mono_tol, qs.first_min);
    Verdict v;
    if (onset > H / 2) {
      v = Verdict::fails(name, H, Witness{onset, std::nullopt});
    } else if (non_vanishing) {
      v = Verdict::holds(name, H);
    } else {
      v = Verdict::undetermined(name, H);
      v.evidence["reason"] = "alpha-divided roots decay over the horizon";
    }
    v.evidence["alpha"] = alpha;
    v.evidence["onset"] = onset;
    v.evidence["divided_root_first_quarter_min"] = qs.first_min;
    v.evidence["divided_root_last_quarter_min"] = qs.last_min;
    v.evidence["divided_roots_divergent"] = empirically_divergent(y, th);
    out.emplace_back(alpha, std::move(v));
  }
  return out;
}

}  // namespace wcalc
