#include "wcalc/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "wcalc/conditions.hpp"
#include "wcalc/errors.hpp"
#include "wcalc/numerics.hpp"
#include "wcalc/tail.hpp"

namespace wcalc {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void require_theta_pre(const WeightSequence& N, std::size_t T) {
  const std::size_t H = std::max<std::size_t>(T + 1, kMinHorizon);
  const Verdict lc = check_condition(N, ConditionId::parse("lc"), H);
  const Verdict nm = check_condition(N, ConditionId::parse("normalized"), H);
  if (!lc.is_holds()) throw PreconditionFailed("theta requires a log-convex sequence (lc " + to_string(lc.status) + ")");
  if (!nm.is_holds()) throw PreconditionFailed("theta requires a normalized sequence");
}

// log nu_j with nu_0 = 1, optionally shifted to nu_{j+1}.
double log_nu(const WeightSequence& N, std::size_t j, const ThetaOptions& opt) {
  const std::size_t i = opt.shift_nu ? j + 1 : j;
  return i == 0 ? 0.0 : N.quotient_log(i);
}

}  // namespace

std::string to_string(BoundsSource s) {
  switch (s) {
    case BoundsSource::synthetic: return "synthetic";
    case BoundsSource::theta: return "theta";
    case BoundsSource::user: return "user";
  }
  return "user";
}

DerivBounds DerivBounds::from_csv(const std::string& text, std::string label) {
  std::map<std::size_t, double> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw InvalidParameter("csv", "line " + std::to_string(lineno) + ": expected 'j,log_bound'");
    const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
    std::size_t j;
    double v;
    try {
      std::size_t used = 0;
      j = std::stoul(a, &used);
      v = std::stod(b);
    } catch (const std::exception&) {
      if (lineno == 1) continue;  // header
      throw InvalidParameter("csv", "line " + std::to_string(lineno) + ": not numeric");
    }
    if (!rows.emplace(j, v).second)
      throw InvalidParameter("csv", "duplicate index " + std::to_string(j));
  }
  DerivBounds f;
  f.label = std::move(label);
  for (const auto& [j, v] : rows) {
    if (j != f.bounds.size()) throw InvalidParameter("csv", "missing index " + std::to_string(f.bounds.size()));
    f.bounds.push_back(v);
  }
  if (f.bounds.empty()) throw InvalidParameter("csv", "no bounds");
  for (double v : f.bounds)
    if (!std::isfinite(v)) throw InvalidParameter("csv", "bounds must be finite");
  return f;
}

DerivBounds DerivBounds::from_json(const Json& j) {
  DerivBounds f;
  const Json& arr = j.is_array() ? j : j.at("bounds");
  for (const auto& e : arr) f.bounds.push_back(json_to_double(e));
  if (j.is_object()) {
    f.label = j.value("label", "json");
    const std::string src = j.value("source", "user");
    f.source = src == "theta" ? BoundsSource::theta
               : src == "synthetic" ? BoundsSource::synthetic : BoundsSource::user;
  } else {
    f.label = "json";
  }
  if (f.bounds.empty()) throw InvalidParameter("bounds", "must be nonempty");
  for (double v : f.bounds)
    if (!std::isfinite(v)) throw InvalidParameter("bounds", "must be finite");
  return f;
}

DerivBounds DerivBounds::synthetic(std::vector<double> bounds, std::string label) {
  DerivBounds f;
  f.bounds = std::move(bounds);
  f.label = std::move(label);
  f.source = BoundsSource::synthetic;
  if (f.bounds.empty()) throw InvalidParameter("bounds", "must be nonempty");
  return f;
}

Json DerivBounds::to_json() const {
  return Json{{"label", label}, {"source", to_string(source)}, {"bounds", bounds}};
}

std::complex<double> theta_eval(const WeightSequence& N, double t, std::size_t T,
                                const ThetaOptions& opt) {
  require_theta_pre(N, T + 2);
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t j = 0; j <= T + 1; ++j) {
    const double lnu = log_nu(N, j, opt);
    const double jd = static_cast<double>(j);
    const double mag = std::exp(N.log_term(j) - jd * kLn2 - jd * lnu);
    const double phase = 2.0 * std::exp(lnu) * t;
    sum += std::polar(mag, phase);
  }
  return sum;
}

double theta_derivative_log_bound(const WeightSequence& N, std::size_t k, std::size_t T,
                                  const ThetaOptions& opt) {
  if (T < k + 10) throw InvalidParameter("truncation", "must be >= k + 10");
  require_theta_pre(N, T);
  std::vector<double> terms(T + 1);
  const double kd = static_cast<double>(k);
  for (std::size_t j = 0; j <= T; ++j) {
    const double e = kd - static_cast<double>(j);
    terms[j] = N.log_term(j) + e * (kLn2 + log_nu(N, j, opt));
  }
  return log_sum_exp(terms);
}

DerivBounds theta_bounds(const WeightSequence& N, std::size_t J, std::size_t T,
                         const ThetaOptions& opt) {
  DerivBounds f;
  f.label = "theta";
  f.source = BoundsSource::theta;
  for (std::size_t k = 0; k <= J; ++k)
    f.bounds.push_back(theta_derivative_log_bound(N, k, std::max(T, k + 10), opt));
  return f;
}

double seminorm(const DerivBounds& f, const WeightSequence& M, const ExponentSequence& phi,
                double h) {
  if (!(h > 0.0)) throw InvalidParameter("h", "must be > 0");
  const double lh = std::log(h);
  double s = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < f.bounds.size(); ++j)
    s = std::max(s, f.bounds[j] - phi(j) * lh - M.log_term(j));
  return s;
}

MembershipReport classify_membership(const DerivBounds& f, const WeightMatrix& MM,
                                     const ExponentSequence& phi,
                                     const std::vector<double>& grid_in,
                                     const std::vector<double>& h_grid_in,
                                     const Thresholds& th) {
  if (grid_in.empty() || h_grid_in.empty()) throw InvalidParameter("grid", "must be nonempty");
  std::vector<double> grid = grid_in, hs = h_grid_in;
  std::sort(grid.begin(), grid.end());
  std::sort(hs.begin(), hs.end());
  const std::size_t J = f.bounds.size() - 1;
  MembershipReport rep;
  for (double c : grid) {
    const WeightSequence M = MM.element(c);
    for (double h : hs) {
      if (!(h > 0.0)) throw InvalidParameter("h", "must be > 0");
      const double lh = std::log(h);
      std::vector<double> x(J + 1);
      for (std::size_t j = 0; j <= J; ++j) x[j] = f.bounds[j] - phi(j) * lh - M.log_term(j);
      const SupAnalysis a = analyze_running_sup(x, th);
      rep.cells.push_back({c, h, a.sup, a.argmax, a.stable, a.diverging});
    }
  }
  auto cell = [&](double c, double h) -> const MembershipCell& {
    for (const auto& x : rep.cells)
      if (x.c == c && x.h == h) return x;
    throw InvalidParameter("grid", "missing cell");
  };

  // Roumieu: some (c, h) stabilizes. The most permissive cell (largest c and
  // h) decides non-membership when it diverges.
  const MembershipCell* found = nullptr;
  for (const auto& x : rep.cells)
    if (x.stable) {
      found = &x;
      break;
    }
  const MembershipCell& loose = cell(grid.back(), hs.back());
  if (found) {
    rep.roumieu = Verdict::holds("roumieu_member", J);
    rep.roumieu.evidence["c"] = found->c;
    rep.roumieu.evidence["h"] = found->h;
    rep.roumieu.evidence["seminorm"] = found->seminorm;
  } else if (loose.diverging) {
    rep.roumieu = Verdict::fails("roumieu_member", J, Witness{loose.argmax, std::nullopt});
    rep.roumieu.evidence["c"] = loose.c;
    rep.roumieu.evidence["h"] = loose.h;
  } else {
    rep.roumieu = Verdict::undetermined("roumieu_member", J);
  }

  // Beurling: every h at the smallest c stabilizes.
  const double c0 = grid.front();
  const MembershipCell* bad = nullptr;
  bool all_stable = true;
  for (double h : hs) {
    const MembershipCell& x = cell(c0, h);
    if (!x.stable) all_stable = false;
    if (x.diverging && !bad) bad = &x;
  }
  if (all_stable) {
    rep.beurling = Verdict::holds("beurling_member", J);
  } else if (bad) {
    rep.beurling = Verdict::fails("beurling_member", J, Witness{bad->argmax, std::nullopt});
    rep.beurling.evidence["h"] = bad->h;
  } else {
    rep.beurling = Verdict::undetermined("beurling_member", J);
  }
  rep.beurling.evidence["c"] = c0;
  return rep;
}

Json to_json(const MembershipReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells)
    cells.push_back({{"c", c.c},
                     {"h", c.h},
                     {"seminorm", c.seminorm},
                     {"argmax", c.argmax},
                     {"stable", c.stable},
                     {"diverging", c.diverging}});
  return Json{{"roumieu", to_json(r.roumieu)}, {"beurling", to_json(r.beurling)}, {"cells", cells}};
}

}  // namespace wcalc
