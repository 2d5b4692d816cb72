#include "wcalc/associated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wcalc/conditions.hpp"
#include "wcalc/errors.hpp"
#include "wcalc/numerics.hpp"
#include "wcalc/tail.hpp"

namespace wcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

OmegaValue bisect_max(const WeightSequence& M, double u, std::size_t H) {
  // j u - log M_j has increments u - log mu_j, non-increasing for log-convex
  // M, so the maximizer is the largest j with log mu_j <= u.
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t step = 1;
  for (;;) {
    const std::size_t cand = std::min(H, lo + step);
    if (M.quotient_log(cand) <= u) {
      lo = cand;
      if (cand == H)
        throw SupNotAttained("maximizing index reaches horizon " + std::to_string(H) +
                             " at log t = " + shortest(u));
      step *= 2;
    } else {
      hi = cand;
      break;
    }
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (M.quotient_log(mid) <= u) lo = mid;
    else hi = mid;
  }
  const double jd = static_cast<double>(lo);
  return {jd * u - M.log_term(lo), lo};
}

}  // namespace

OmegaFunction OmegaFunction::from_sequence(WeightSequence M, std::size_t horizon) {
  OmegaFunction w;
  w.bisect_ = M.known_log_convex();
  std::size_t H = horizon;
  if (H == 0) {
    if (w.bisect_) H = kClosedFormOmegaHorizon;
    else H = M.length() ? *M.length() - 1 : kDefaultHorizon;
  }
  if (M.length()) H = std::min(H, *M.length() - 1);
  if (H < kMinHorizon) throw HorizonTooSmall(H, kMinHorizon);
  const std::size_t probe = std::min<std::size_t>(H, kDefaultHorizon);
  if (!roots_divergent(M, probe))
    throw PreconditionFailed("roots (M_j)^{1/j} not empirically divergent up to " +
                             std::to_string(probe) + "; sup may not be attained");
  w.seq_ = std::move(M);
  w.horizon_ = H;
  w.label_ = "assoc";
  return w;
}

OmegaFunction OmegaFunction::from_function(std::function<double(double)> f,
                                           std::string label, Json params) {
  OmegaFunction w;
  w.fn_ = std::move(f);
  w.label_ = std::move(label);
  w.params_ = std::move(params);
  return w;
}

OmegaValue OmegaFunction::at_log(double u) const {
  if (!seq_) return {u == -kInf ? 0.0 : fn_(std::exp(u)), std::nullopt};
  if (u == -kInf) return {0.0 - seq_->log_term(0), 0};
  if (bisect_) return bisect_max(*seq_, u, horizon_);
  OmegaValue best = omega_exhaustive(*seq_, u, horizon_);
  if (best.index && *best.index == horizon_)
    throw SupNotAttained("maximizing index reaches horizon " + std::to_string(horizon_) +
                         " at log t = " + shortest(u));
  return best;
}

OmegaValue OmegaFunction::eval(double t) const {
  if (!(t >= 0.0)) throw DomainError("omega evaluated at negative t");
  return at_log(t == 0.0 ? -kInf : std::log(t));
}

Json OmegaFunction::describe() const {
  Json j = Json::object();
  j["family"] = label_;
  if (seq_) j["params"] = Json{{"sequence", seq_->describe()}, {"horizon", horizon_}};
  else j["params"] = params_;
  return j;
}

OmegaValue omega_eval(const OmegaFunction& w, double t, std::optional<std::size_t> horizon) {
  if (!horizon || !w.sequence()) return w.eval(t);
  if (t == 0.0) return w.eval(t);
  OmegaFunction local = OmegaFunction::from_sequence(*w.sequence(), *horizon);
  return local.eval(t);
}

OmegaValue omega_exhaustive(const WeightSequence& M, double u, std::size_t H) {
  OmegaValue best{-kInf, 0};
  for (std::size_t j = 0; j <= H; ++j) {
    const double v = static_cast<double>(j) * u - M.log_term(j);
    if (v > best.value) best = {v, j};
  }
  return best;
}

ConjugateResult young_conjugate(const OmegaFunction& w, double s, const LogGrid& grid) {
  if (!(s >= 0.0)) throw DomainError("conjugate argument must be >= 0");
  if (grid.n < 3) throw GridTooSmall("t-grid needs at least 3 points");
  auto g = [&](double u) { return s * u - w.at_log(u).value; };
  std::size_t best = 0;
  double best_v = -kInf;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double v = g(grid.at(i));
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  if (best == grid.n - 1)
    throw MaximizerOnBoundary("maximizer at upper grid end t = " +
                              shortest(std::exp(grid.at(best))) + " for s = " + shortest(s));
  double a = grid.at(best == 0 ? 0 : best - 1);
  double b = grid.at(best + 1);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = g(x1), f2 = g(x2);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = g(x1);
    }
  }
  ConjugateResult out{best_v, grid.at(best)};
  if (f1 > out.value) out = {f1, x1};
  if (f2 > out.value) out = {f2, x2};
  return out;
}

double assoc_matrix_term(const OmegaFunction& w, double ell, std::size_t j, const LogGrid& grid) {
  if (!(ell > 0.0)) throw InvalidParameter("ell", "must be > 0");
  return young_conjugate(w, ell * static_cast<double>(j), grid).value / ell;
}

double recover_term(const OmegaFunction& w, std::size_t j, const LogGrid& grid) {
  return young_conjugate(w, static_cast<double>(j), grid).value;
}

WeightSequence from_omega(const OmegaFunction& w, double ell, const LogGrid& grid) {
  if (!(ell > 0.0)) throw InvalidParameter("ell", "must be > 0");
  Json params = {{"omega", w.describe()},
                 {"ell", ell},
                 {"grid", {{"t_lo", std::exp(grid.log_lo)}, {"t_hi", std::exp(grid.log_hi)}, {"n", grid.n}}}};
  return WeightSequence::custom("from_omega", std::move(params), [w, ell, grid](std::size_t j) {
    return assoc_matrix_term(w, ell, j, grid);
  });
}

AssocMode parse_assoc_mode(const std::string& s) {
  if (s == "bigO" || s == "assoc_bigO" || s == "bigo") return AssocMode::bigO;
  if (s == "smallO" || s == "assoc_smallO" || s == "smallo") return AssocMode::smallO;
  if (s == "numeric_ratio" || s == "assoc_ratio" || s == "ratio") return AssocMode::numeric_ratio;
  throw InvalidParameter("mode", "unknown mode '" + s + "'");
}

std::string to_string(AssocMode m) {
  switch (m) {
    case AssocMode::bigO: return "assoc_bigO";
    case AssocMode::smallO: return "assoc_smallO";
    case AssocMode::numeric_ratio: return "assoc_ratio";
  }
  return "";
}

namespace {

Verdict numeric_ratio(const WeightSequence& M, const WeightSequence& N, std::size_t H,
                      const LogGrid& grid) {
  const OmegaFunction wm = OmegaFunction::from_sequence(M);
  const OmegaFunction wn = OmegaFunction::from_sequence(N);
  std::vector<double> ts, ratios;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double u = grid.at(i);
    const double a = wm.at_log(u).value;
    const double b = wn.at_log(u).value;
    if (b <= 0.0) continue;
    ts.push_back(std::exp(u));
    ratios.push_back(a / b);
  }
  Verdict v = Verdict::undetermined("assoc_ratio", H);
  if (ratios.empty()) {
    v.evidence["reason"] = "omega_N vanishes on the whole grid";
    return v;
  }
  const std::size_t q = std::max<std::size_t>(1, ratios.size() / 4);
  const auto [lo, hi] = std::minmax_element(ratios.end() - q, ratios.end());
  const auto [glo, ghi] = std::minmax_element(ratios.begin(), ratios.end());
  v.evidence["tail_min"] = *lo;
  v.evidence["tail_max"] = *hi;
  v.evidence["min"] = *glo;
  v.evidence["max"] = *ghi;
  v.evidence["t"] = ts;
  v.evidence["ratio"] = ratios;
  return v;
}

}  // namespace

Verdict assoc_relation_check(const WeightSequence& M, const WeightSequence& N, AssocMode mode,
                             std::size_t c_max, std::size_t H, const LogGrid& grid,
                             const Thresholds& th) {
  if (H < kMinHorizon) throw HorizonTooSmall(H, kMinHorizon);
  if (c_max < 1) throw InvalidParameter("c_max", "must be >= 1");
  for (const WeightSequence* S : {&M, &N}) {
    if (!check_condition(*S, ConditionId::parse("lc"), H, th).is_holds() ||
        !check_condition(*S, ConditionId::parse("normalized"), H, th).is_holds())
      throw PreconditionFailed(S->family() + " sequence is not log-convex and normalized");
  }
  if (mode == AssocMode::numeric_ratio) return numeric_ratio(M, N, H, grid);
  if (H / c_max < kMinHorizon) throw HorizonTooSmall(H, c_max * kMinHorizon);

  const bool big = mode == AssocMode::bigO;
  const std::string name = to_string(mode);
  Json per_c = Json::array();
  std::optional<std::size_t> holds_at;
  std::optional<Witness> fail_witness;
  std::size_t fail_c = 0;
  bool all_hold = true;
  for (std::size_t c = 1; c <= c_max; ++c) {
    const std::size_t jmax = H / c;
    const double cd = static_cast<double>(c);
    std::vector<double> d(jmax);
    for (std::size_t j = 1; j <= jmax; ++j) {
      d[j - 1] = big ? N.log_term(j) - M.log_term(c * j) / cd
                     : N.log_term(c * j) / cd - M.log_term(j);
    }
    const SupAnalysis a = analyze_running_sup(d, th);
    Json e = Json::object();
    e["c"] = c;
    e["status"] = a.stable ? "Holds" : (a.diverging && !big ? "Fails" : "Undetermined");
    e["log_A"] = std::max(0.0, a.sup);
    e["A"] = std::exp(std::max(0.0, a.sup));
    e["argmax"] = a.argmax + 1;
    e["sup_trajectory"] = a.checkpoints;
    e["diverging"] = a.diverging;
    per_c.push_back(e);
    if (a.stable && !holds_at) holds_at = c;
    if (!a.stable) all_hold = false;
    if (!big && a.diverging && !fail_witness) {
      fail_witness = Witness{a.argmax + 1, c * (a.argmax + 1)};
      fail_c = c;
    }
  }
  Verdict v;
  if (big) {
    v = holds_at ? Verdict::holds(name, H) : Verdict::undetermined(name, H);
    if (holds_at) v.evidence["c"] = *holds_at;
  } else if (fail_witness) {
    v = Verdict::fails(name, H, *fail_witness);
    v.evidence["c"] = fail_c;
  } else {
    v = all_hold ? Verdict::holds(name, H) : Verdict::undetermined(name, H);
  }
  v.evidence["c_max"] = c_max;
  v.evidence["per_c"] = per_c;
  return v;
}

std::vector<OmegaRow> omega_table(const OmegaFunction& w, const LogGrid& grid) {
  std::vector<OmegaRow> rows;
  rows.reserve(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double u = grid.at(i);
    const OmegaValue v = w.at_log(u);
    rows.push_back({std::exp(u), v.value, v.index});
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double tol = 1e-9 * std::max(1.0, std::abs(rows[i].omega));
    if (rows[i].omega < rows[i - 1].omega - tol)
      throw DomainError("omega decreases at t = " + shortest(rows[i].t));
    if (i + 1 < rows.size() &&
        rows[i - 1].omega + rows[i + 1].omega - 2.0 * rows[i].omega < -tol)
      throw DomainError("omega not convex in log t at t = " + shortest(rows[i].t));
  }
  return rows;
}

std::string omega_csv(const std::vector<OmegaRow>& rows) {
  std::ostringstream os;
  os << "t,omega,j\n";
  for (const auto& r : rows) {
    os << shortest(r.t) << ',' << shortest(r.omega) << ',';
    if (r.index) os << *r.index;
    os << '\n';
  }
  return os.str();
}

}  // namespace wcalc
