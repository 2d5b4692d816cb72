#include "wcalc/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <random>

#include "wcalc/conditions.hpp"
#include "wcalc/errors.hpp"
#include "wcalc/numerics.hpp"
#include "wcalc/relations.hpp"
#include "wcalc/tail.hpp"

namespace wcalc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

struct WeightMatrix::Impl {
  MatrixKind kind = MatrixKind::Generic;
  Json desc;
  std::function<WeightSequence(double)> make;
  std::optional<ExponentSequence> phi;
  std::optional<WeightSequence> base;
  std::optional<ExponentFamily> family;
  std::vector<double> indices;

  mutable std::mutex mu;
  mutable std::map<double, WeightSequence> cache;
};

namespace {

std::shared_ptr<WeightMatrix::Impl> new_matrix(MatrixKind kind, Json desc,
                                               std::function<WeightSequence(double)> make) {
  auto p = std::make_shared<WeightMatrix::Impl>();
  p->kind = kind;
  p->desc = std::move(desc);
  p->make = std::move(make);
  return p;
}

}  // namespace

WeightMatrix WeightMatrix::scale_family(WeightSequence M, ExponentSequence phi) {
  Json d = {{"construction", "scale_family"}, {"base", M.describe()}, {"phi", phi.describe()}};
  auto p = new_matrix(MatrixKind::ScaleFamily, std::move(d),
                      [M, phi](double c) { return WeightSequence::scaled(M, phi, c); });
  p->phi = phi;
  p->base = M;
  return WeightMatrix(p);
}

WeightMatrix WeightMatrix::ptt(double tau, double sigma) {
  const WeightSequence base = WeightSequence::ptt(tau, sigma);
  const ExponentSequence phi = ExponentSequence::power(sigma);
  Json d = {{"construction", "ptt_matrix"}, {"tau", tau}, {"sigma", sigma}};
  auto p = new_matrix(MatrixKind::PTTMatrix, std::move(d),
                      [base, phi](double c) { return WeightSequence::scaled(base, phi, c); });
  p->phi = phi;
  p->base = base;
  return WeightMatrix(p);
}

WeightMatrix WeightMatrix::sigma(double sigma) {
  const ExponentSequence phi = ExponentSequence::power(sigma);
  Json d = {{"construction", "sigma_matrix"}, {"sigma", sigma}};
  auto p = new_matrix(MatrixKind::SigmaMatrix, std::move(d), [sigma, phi](double tau) {
    return WeightSequence::scaled(WeightSequence::ptt(tau, sigma), phi, tau);
  });
  p->phi = phi;
  return WeightMatrix(p);
}

WeightMatrix WeightMatrix::matrix_scale(WeightMatrix N, ExponentSequence phi) {
  Json d = {{"construction", "matrix_scale"}, {"inner", N.describe()}, {"phi", phi.describe()}};
  auto p = new_matrix(MatrixKind::MatrixScale, std::move(d), [N, phi](double c) {
    return WeightSequence::scaled(N.element(c), phi, c);
  });
  return WeightMatrix(p);
}

WeightMatrix WeightMatrix::exponent_family_scale(WeightSequence M, ExponentFamily F) {
  Json d = {{"construction", "family_scale"}, {"base", M.describe()}, {"family", F.describe()}};
  auto p = new_matrix(MatrixKind::ExponentFamilyScale, std::move(d), [M, F](double c) {
    return WeightSequence::scaled(M, F.at(c), c);
  });
  p->base = M;
  p->family = F;
  return WeightMatrix(p);
}

WeightMatrix WeightMatrix::generic(std::vector<std::pair<double, WeightSequence>> elements) {
  if (elements.empty()) throw InvalidParameter("elements", "must be nonempty");
  std::sort(elements.begin(), elements.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Json list = Json::array();
  for (const auto& [c, s] : elements) list.push_back({{"index", c}, {"sequence", s.describe()}});
  auto table = std::make_shared<std::vector<std::pair<double, WeightSequence>>>(elements);
  auto p = new_matrix(MatrixKind::Generic, {{"construction", "generic"}, {"elements", list}},
                      [table](double c) {
                        for (const auto& [idx, s] : *table)
                          if (std::abs(idx - c) <= 1e-12 * std::max(1.0, std::abs(c))) return s;
                        throw InvalidParameter("index", "no element with index " + shortest(c));
                      });
  for (const auto& e : elements) p->indices.push_back(e.first);
  return WeightMatrix(p);
}

WeightSequence WeightMatrix::element(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidParameter("index", "must be > 0");
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->cache.find(c);
    if (it != impl_->cache.end()) return it->second;
  }
  WeightSequence s = impl_->make(c);
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->cache.emplace(c, s).first->second;
}

MatrixKind WeightMatrix::kind() const { return impl_->kind; }
Json WeightMatrix::describe() const { return impl_->desc; }
std::optional<ExponentSequence> WeightMatrix::phi() const { return impl_->phi; }
std::optional<WeightSequence> WeightMatrix::base() const { return impl_->base; }
std::vector<double> WeightMatrix::indices() const { return impl_->indices; }

WeightMatrix build_matrix(WeightMatrix MM, const std::vector<double>& grid_in, std::size_t H) {
  std::vector<double> grid = grid_in.empty() ? MM.indices() : grid_in;
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw InvalidParameter("index_grid", "must be sorted ascending");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = grid[i - 1], b = grid[i];
    const WeightSequence A = MM.element(a), B = MM.element(b);
    for (std::size_t j = 0; j <= H; ++j) {
      const double la = A.log_term(j), lb = B.log_term(j);
      if (la > lb + 1e-9 * std::max(1.0, std::abs(lb))) throw OrderViolation(a, b, j);
    }
  }
  if (MM.kind() == MatrixKind::ExponentFamilyScale) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double a = grid[i - 1], b = grid[i];
      // Recover Phi^a_j log a from the element and base terms.
      const WeightSequence A = MM.element(a), B = MM.element(b), M = *MM.base();
      for (std::size_t j = 0; j <= H; ++j) {
        const double pa = A.log_term(j) - M.log_term(j);
        const double pb = B.log_term(j) - M.log_term(j);
        if (pa > pb + 1e-9 * std::max(1.0, std::abs(pb))) throw FamilyOrderViolation(a, b, j);
      }
    }
  }
  return MM;
}

Json phi_growth_diagnostics(const WeightSequence& M, const ExponentSequence& phi, std::size_t H) {
  Json d = Json::object();
  std::optional<std::size_t> convex_fail, ratio_fail, quotient_fail;
  for (std::size_t j = 1; j < H; ++j) {
    const double tol = 1e-9 * std::max(1.0, phi(j));
    if (2.0 * phi(j) > phi(j - 1) + phi(j + 1) + tol && !convex_fail) convex_fail = j;
  }
  for (std::size_t j = 2; j <= H; ++j) {
    const double a = phi(j - 1) / static_cast<double>(j - 1);
    const double b = phi(j) / static_cast<double>(j);
    if (b < a - 1e-9 * std::max(1.0, a) && !ratio_fail) ratio_fail = j;
  }
  for (std::size_t j = 2; j <= H; ++j) {
    if (M.quotient_log(j) < M.quotient_log(j - 1) - 1e-9 && !quotient_fail) quotient_fail = j;
  }
  auto put = [&](const char* key, const std::optional<std::size_t>& f) {
    d[key] = Json{{"holds", !f.has_value()}, {"first_violation", f ? Json(*f) : Json(nullptr)}};
  };
  put("phi_convex", convex_fail);
  put("phi_over_j_nondecreasing", ratio_fail);
  put("quotients_nondecreasing", quotient_fail);
  return d;
}

// ---------------------------------------------------------------------------

MatrixConditionId MatrixConditionId::parse(const std::string& name, const std::string& flavor) {
  MatrixConditionId c;
  if (name == "L") c.tag = MatrixCondTag::L;
  else if (name == "mg") c.tag = MatrixCondTag::mg;
  else if (name == "dc") c.tag = MatrixCondTag::dc;
  else if (name == "rai") c.tag = MatrixCondTag::rai;
  else if (name == "FdB" || name == "fdb") c.tag = MatrixCondTag::FdB;
  else if (name == "BR" || name == "br") c.tag = MatrixCondTag::BR;
  else if (name == "sc") c.tag = MatrixCondTag::sc;
  else if (name == "constant") c.tag = MatrixCondTag::constant;
  else throw InvalidParameter("condition", "unknown matrix condition '" + name + "'");
  if (flavor == "roumieu" || flavor == "r" || flavor == "Roumieu") c.flavor = Flavor::Roumieu;
  else if (flavor == "beurling" || flavor == "b" || flavor == "Beurling") c.flavor = Flavor::Beurling;
  else throw InvalidParameter("flavor", "expected roumieu or beurling, got '" + flavor + "'");
  return c;
}

std::string MatrixConditionId::name() const {
  switch (tag) {
    case MatrixCondTag::L: return "L";
    case MatrixCondTag::mg: return "mg";
    case MatrixCondTag::dc: return "dc";
    case MatrixCondTag::rai: return "rai";
    case MatrixCondTag::FdB: return "FdB";
    case MatrixCondTag::BR: return "BR";
    case MatrixCondTag::sc: return "sc";
    case MatrixCondTag::constant: return "constant";
  }
  return "";
}

std::string to_string(Flavor f) { return f == Flavor::Roumieu ? "roumieu" : "beurling"; }

Status MatrixReport::overall() const {
  Status s = Status::Holds;
  for (const auto& r : per_index) s = combine_all({s, r.verdict.status});
  return s;
}

Json to_json(const MatrixReport& r) {
  Json j = Json::object();
  j["condition"] = r.cond.name();
  j["flavor"] = to_string(r.cond.flavor);
  j["status"] = to_string(r.overall());
  Json list = Json::array();
  for (const auto& e : r.per_index) {
    Json x = Json::object();
    x["alpha"] = e.alpha;
    x["status"] = to_string(e.verdict.status);
    x["beta"] = e.beta ? Json(*e.beta) : Json(nullptr);
    x["constant"] = e.constant ? Json(*e.constant) : Json(nullptr);
    x["witness"] = to_json(e.verdict)["witness"];
    x["evidence"] = e.verdict.evidence;
    list.push_back(x);
  }
  j["per_index"] = list;
  for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

WeightSequence reduced_sequence(const WeightSequence& M) {
  return WeightSequence::custom("reduced", {{"of", M.describe()}},
                                [M](std::size_t j) { return M.reduced_log(j); });
}

std::vector<double> composition_sequence(const WeightSequence& m, std::size_t K) {
  std::vector<double> lm(K + 1);
  for (std::size_t j = 0; j <= K; ++j) lm[j] = m.log_term(j);
  // best[l][k]: max log product of l parts >= 1 summing to k.
  std::vector<std::vector<double>> best(K + 1, std::vector<double>(K + 1, -kInf));
  best[0][0] = 0.0;
  for (std::size_t l = 1; l <= K; ++l)
    for (std::size_t k = l; k <= K; ++k) {
      double b = -kInf;
      for (std::size_t j = 1; j + (l - 1) <= k; ++j) {
        const double prev = best[l - 1][k - j];
        if (prev == -kInf) continue;
        b = std::max(b, lm[j] + prev);
      }
      best[l][k] = b;
    }
  std::vector<double> out(K + 1, -kInf);
  out[0] = 0.0;
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t l = 1; l <= k; ++l) out[k] = std::max(out[k], lm[l] + best[l][k]);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Trial {
  bool ok = false;
  bool diverging = false;
  double constant = 1.0;
  double sup = 0.0;
  Json note = Json::object();
};

Trial from_sup(const SupAnalysis& a) {
  Trial t;
  t.ok = a.stable;
  t.diverging = a.diverging;
  t.sup = a.sup;
  t.constant = std::exp(std::max(0.0, a.sup));
  t.note = Json{{"sup", a.sup}, {"sup_trajectory", a.checkpoints}, {"diverging", a.diverging}};
  return t;
}

Trial trial_L(const WeightSequence& lo, const WeightSequence& hi, double h, std::size_t H,
              const Thresholds& th) {
  std::vector<double> d(H);
  const double lh = std::log(h);
  for (std::size_t j = 1; j <= H; ++j)
    d[j - 1] = static_cast<double>(j) * lh + lo.log_term(j) - hi.log_term(j);
  return from_sup(analyze_running_sup(d, th));
}

Trial trial_mg(const WeightSequence& left, const WeightSequence& right, std::size_t H,
               const Thresholds& th) {
  std::vector<double> traj(H + 1, -kInf);
  std::vector<double> diag;
  auto defect = [&](std::size_t j, std::size_t k) {
    return (left.log_term(j + k) - right.log_term(j) - right.log_term(k)) /
           static_cast<double>(j + k + 1);
  };
  for (std::size_t j = 1; 2 * j <= H; ++j) {
    const double d = defect(j, j);
    traj[2 * j] = std::max(traj[2 * j], d);
    diag.push_back(d);
  }
  std::mt19937_64 rng(th.seed);
  for (std::size_t i = 0; i < th.mg_random_pairs; ++i) {
    const std::size_t j = 1 + static_cast<std::size_t>(rng() % (H - 1));
    const std::size_t k = 1 + static_cast<std::size_t>(rng() % (H - j));
    traj[j + k] = std::max(traj[j + k], defect(j, k));
  }
  Trial t = from_sup(analyze_running_sup(traj, th));
  const std::size_t q = std::max<std::size_t>(2, diag.size() / 4);
  bool mono = true;
  for (std::size_t i = diag.size() - q + 1; i < diag.size(); ++i)
    if (diag[i] < diag[i - 1]) mono = false;
  t.note["diagonal_monotone_last_quarter"] = mono;
  t.note["diagonal_defect_last"] = diag.back();
  t.diverging = t.diverging && mono;
  return t;
}

Trial trial_dc(const WeightSequence& left, const WeightSequence& right, std::size_t H,
               const Thresholds& th) {
  std::vector<double> d(H);
  for (std::size_t j = 0; j < H; ++j)
    d[j] = (left.log_term(j + 1) - right.log_term(j)) / static_cast<double>(j + 1);
  return from_sup(analyze_running_sup(d, th));
}

Trial trial_rai(const WeightSequence& left, const WeightSequence& right, std::size_t H,
                const Thresholds& th) {
  std::vector<double> d(H);
  double run = -kInf;
  for (std::size_t k = 1; k <= H; ++k) {
    const double kd = static_cast<double>(k);
    run = std::max(run, left.reduced_log(k) / kd);
    d[k - 1] = run - right.reduced_log(k) / kd;
  }
  return from_sup(analyze_running_sup(d, th));
}

Trial from_verdict(const Verdict& v) {
  Trial t;
  t.ok = v.is_holds();
  t.diverging = v.evidence.value("diverging", false);
  if (v.evidence.contains("sup") && v.evidence["sup"].is_number()) {
    t.sup = v.evidence["sup"].get<double>();
    t.constant = std::exp(std::max(0.0, t.sup));
  }
  t.note = Json{{"status", to_string(v.status)}};
  if (v.evidence.contains("sup_trajectory")) t.note["sup_trajectory"] = v.evidence["sup_trajectory"];
  if (v.evidence.contains("tail_value")) t.note["tail_value"] = v.evidence["tail_value"];
  return t;
}

std::vector<double> candidates(const std::vector<double>& grid, double alpha, Flavor f,
                               bool strict, std::size_t steps) {
  std::vector<double> out;
  const std::size_t n = grid.size();
  if (f == Flavor::Roumieu) {
    for (double g : grid)
      if (g > alpha || (!strict && g == alpha)) out.push_back(g);
    const double ratio = grid[n - 1] / grid[n - 2];
    double x = grid[n - 1];
    for (std::size_t k = 0; k < steps; ++k) out.push_back(x *= ratio);
  } else {
    for (auto it = grid.rbegin(); it != grid.rend(); ++it)
      if (*it < alpha || (!strict && *it == alpha)) out.push_back(*it);
    const double ratio = grid[1] / grid[0];
    double x = grid[0];
    for (std::size_t k = 0; k < steps; ++k) out.push_back(x /= ratio);
  }
  return out;
}

Json exponent_test(const ExponentSequence& phi, std::size_t H, const Thresholds& th) {
  const std::size_t lo = std::max<std::size_t>(2, (3 * H) / 4);
  double tail_min = kInf;
  std::vector<double> lx, ly;
  for (std::size_t j = lo; j <= H; ++j) {
    const double p = phi(j);
    tail_min = std::min(tail_min, p / static_cast<double>(j));
    if (p > 0.0) {
      lx.push_back(std::log(static_cast<double>(j)));
      ly.push_back(std::log(p));
    }
  }
  const double slope = lx.size() >= 2 ? fit_line(lx, ly).slope : 0.0;
  const bool ok = tail_min > 0.01 && slope >= 1.0 - th.powerfit_margin;
  return Json{{"phi_over_j_tail_min", tail_min}, {"phi_loglog_slope", slope}, {"exponent_sequence", ok}};
}

IndexResult per_element(const WeightMatrix& MM, const MatrixConditionId& cond,
                        const std::vector<double>& grid, double alpha, std::size_t H,
                        const MatrixCheckOptions& opt) {
  const Thresholds& th = opt.th;
  const std::string name = cond.name();
  IndexResult res;
  res.alpha = alpha;
  const WeightSequence A = MM.element(alpha);

  if (cond.tag == MatrixCondTag::sc) {
    const Verdict lc = check_condition(A, ConditionId::parse("lc"), H, th);
    const Verdict nm = check_condition(A, ConditionId::parse("normalized"), H, th);
    const bool roots = roots_divergent(A, H, th);
    if (lc.is_fails()) res.verdict = Verdict::fails(name, H, *lc.witness);
    else if (nm.is_fails()) res.verdict = Verdict::fails(name, H, *nm.witness);
    else if (roots) res.verdict = Verdict::holds(name, H);
    else res.verdict = Verdict::undetermined(name, H);
    res.verdict.evidence["lc"] = to_string(lc.status);
    res.verdict.evidence["normalized"] = to_string(nm.status);
    res.verdict.evidence["roots_divergent"] = roots;
    return res;
  }
  if (cond.tag == MatrixCondTag::constant) {
    Status s = Status::Holds;
    std::optional<Witness> w;
    Json pairs = Json::array();
    for (double b : grid) {
      if (b == alpha) continue;
      const Verdict v = compare(A, MM.element(b), RelationId::parse("approx"), H, th);
      s = combine_all({s, v.status});
      if (v.is_fails() && !w) w = v.witness;
      pairs.push_back({{"beta", b}, {"status", to_string(v.status)}});
    }
    if (s == Status::Fails) res.verdict = Verdict::fails(name, H, *w);
    else if (s == Status::Holds) res.verdict = Verdict::holds(name, H);
    else res.verdict = Verdict::undetermined(name, H);
    res.verdict.evidence["pairs"] = pairs;
    return res;
  }

  const bool roum = cond.flavor == Flavor::Roumieu;
  const bool strict = cond.tag == MatrixCondTag::BR;
  std::optional<std::vector<double>> comp_alpha;
  std::size_t K = std::min(H, opt.fdb_horizon);
  if (cond.tag == MatrixCondTag::FdB && K < kMinHorizon) throw HorizonTooSmall(K, kMinHorizon);

  Json tried = Json::array();
  bool all_diverging = true;
  for (double beta : candidates(grid, alpha, cond.flavor, strict, opt.extension_steps)) {
    const WeightSequence B = MM.element(beta);
    // Roumieu: alpha on the small side, beta on the large; Beurling mirrors.
    const WeightSequence& small = roum ? A : B;
    const WeightSequence& large = roum ? B : A;
    Trial t;
    switch (cond.tag) {
      case MatrixCondTag::L: t = trial_L(small, large, opt.h, H, th); break;
      case MatrixCondTag::mg: t = trial_mg(small, large, H, th); break;
      case MatrixCondTag::dc: t = trial_dc(small, large, H, th); break;
      case MatrixCondTag::rai: t = trial_rai(small, large, H, th); break;
      case MatrixCondTag::FdB: {
        std::vector<double> comp;
        if (roum) {
          if (!comp_alpha) comp_alpha = composition_sequence(reduced_sequence(A), K);
          comp = *comp_alpha;
        } else {
          comp = composition_sequence(reduced_sequence(B), K);
        }
        const Verdict v = compare(WeightSequence::table_log(comp), reduced_sequence(large),
                                  RelationId::parse("preceq"), K, th);
        t = from_verdict(v);
        break;
      }
      case MatrixCondTag::BR:
        t = from_verdict(compare(small, large, RelationId::parse("triangle"), H, th));
        break;
      default: break;
    }
    Json note = t.note;
    note["beta"] = beta;
    tried.push_back(note);
    if (t.ok) {
      res.verdict = Verdict::holds(name, H);
      res.beta = beta;
      res.constant = t.constant;
      res.verdict.evidence["beta"] = beta;
      res.verdict.evidence["constant"] = t.constant;
      res.verdict.evidence["beyond_grid"] =
          roum ? beta > grid.back() : beta < grid.front();
      res.verdict.evidence["tried"] = tried;
      return res;
    }
    if (!t.diverging) all_diverging = false;
  }
  res.verdict = Verdict::undetermined(name, H);
  res.verdict.evidence["diverging"] = all_diverging;
  res.verdict.evidence["tried"] = tried;
  return res;
}

}  // namespace

MatrixReport check_matrix_condition(const WeightMatrix& MM, const MatrixConditionId& cond,
                                    const std::vector<double>& grid, std::size_t H,
                                    const MatrixCheckOptions& opt) {
  if (grid.size() < 3) throw GridTooSmall("matrix checks need at least 3 indices");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw InvalidParameter("index_grid", "must be sorted ascending");
  if (H < 16) throw HorizonTooSmall(H, 16);
  MatrixReport rep;
  rep.cond = cond;
  for (double alpha : grid) rep.per_index.push_back(per_element(MM, cond, grid, alpha, H, opt));
  if (cond.tag == MatrixCondTag::L && MM.kind() == MatrixKind::ScaleFamily && MM.phi())
    rep.extra["exponent_test"] = exponent_test(*MM.phi(), H, opt.th);
  if (cond.tag == MatrixCondTag::FdB) rep.extra["fdb_horizon"] = std::min(H, opt.fdb_horizon);
  return rep;
}

Verdict check_exponent_family_absorption(const ExponentFamily& F, Flavor flavor,
                                         const std::vector<double>& grid, std::size_t H,
                                         const Thresholds& th) {
  if (grid.size() < 3) throw GridTooSmall("absorption check needs at least 3 indices");
  if (H < 16) throw HorizonTooSmall(H, 16);
  const std::string name = "absorption_" + to_string(flavor);
  const std::size_t lo = H / 2;
  auto gap_stats = [&](double c, double d) {
    const ExponentSequence pc = F.at(c), pd = F.at(d);
    double tail_min = kInf;
    std::vector<double> lx, ly;
    for (std::size_t j = lo; j <= H; ++j) {
      const double jd = static_cast<double>(j);
      const double g = pd(j) / jd * std::log(d) - pc(j) / jd * std::log(c);
      tail_min = std::min(tail_min, g);
      if (g > 0.0) {
        lx.push_back(std::log(jd));
        ly.push_back(std::log(g));
      }
    }
    const double slope = lx.size() == H - lo + 1 ? fit_line(lx, ly).slope : -kInf;
    return std::make_pair(tail_min, slope);
  };
  Json pairing = Json::array();
  double eps = kInf;
  bool all = true;
  for (double c : grid) {
    bool found = false;
    double best_gap = -kInf;
    for (double d : candidates(grid, c, flavor, true, 4)) {
      const auto [gap, slope] = gap_stats(c, d);
      best_gap = std::max(best_gap, gap);
      if (gap > 0.01 && slope > -th.powerfit_margin) {
        pairing.push_back({{"c", c}, {"d", d}, {"gap", gap}, {"gap_slope", slope}});
        eps = std::min(eps, gap);
        found = true;
        break;
      }
    }
    if (!found) {
      all = false;
      pairing.push_back({{"c", c}, {"d", nullptr}, {"best_gap", best_gap}});
    }
  }
  Verdict v = all ? Verdict::holds(name, H) : Verdict::undetermined(name, H);
  if (all) v.evidence["epsilon"] = eps;
  else v.evidence["reason"] = "gap vanishes or stays non-positive for some index";
  v.evidence["pairs"] = pairing;
  return v;
}

}  // namespace wcalc
