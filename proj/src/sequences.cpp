#include "wcalc/sequences.hpp"

#include <cmath>
#include <limits>
#include <mutex>

#include "wcalc/config.hpp"
#include "wcalc/errors.hpp"
#include "wcalc/numerics.hpp"

namespace wcalc {

namespace {

void require(bool ok, const std::string& field, const std::string& msg) {
  if (!ok) throw InvalidParameter(field, msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// ExponentSequence

ExponentSequence ExponentSequence::linear() { return ExponentSequence{}; }

ExponentSequence ExponentSequence::power(double sigma) {
  require(std::isfinite(sigma) && sigma >= 1.0, "sigma", "must be >= 1");
  ExponentSequence e;
  e.kind_ = Kind::Power;
  e.sigma_ = sigma;
  return e;
}

ExponentSequence ExponentSequence::table(std::vector<double> values) {
  require(!values.empty(), "values", "table must be nonempty");
  for (double v : values)
    require(std::isfinite(v) && v >= 0.0, "values", "entries must be finite and >= 0");
  ExponentSequence e;
  e.kind_ = Kind::Table;
  e.values_ = std::make_shared<const std::vector<double>>(std::move(values));
  return e;
}

double ExponentSequence::operator()(std::size_t j) const {
  switch (kind_) {
    case Kind::Linear: return static_cast<double>(j);
    case Kind::Power: return j == 0 ? 0.0 : std::pow(static_cast<double>(j), sigma_);
    case Kind::Table:
      if (j >= values_->size()) throw TableExhausted(j, values_->size());
      return (*values_)[j];
  }
  return 0.0;
}

std::optional<std::size_t> ExponentSequence::length() const {
  if (kind_ == Kind::Table) return values_->size();
  return std::nullopt;
}

Json ExponentSequence::describe() const {
  Json j = Json::object();
  switch (kind_) {
    case Kind::Linear:
      j["family"] = "linear";
      j["params"] = Json::object();
      break;
    case Kind::Power:
      j["family"] = "power";
      j["params"] = {{"sigma", sigma_}};
      break;
    case Kind::Table:
      j["family"] = "table";
      j["params"] = {{"values", *values_}};
      break;
  }
  return j;
}

std::string ExponentSequence::dsl() const {
  switch (kind_) {
    case Kind::Linear: return "linear()";
    case Kind::Power: return "power(sigma=" + shortest(sigma_) + ")";
    case Kind::Table: {
      std::string s = "table(values=[";
      for (std::size_t i = 0; i < values_->size(); ++i) {
        if (i) s += ", ";
        s += shortest((*values_)[i]);
      }
      return s + "])";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// ExponentFamily

ExponentFamily ExponentFamily::constant(ExponentSequence phi) {
  ExponentFamily f;
  f.constant_ = std::move(phi);
  f.label_ = "constant";
  return f;
}

ExponentFamily ExponentFamily::generic(
    std::function<ExponentSequence(double)> fn, std::string label) {
  ExponentFamily f;
  f.fn_ = std::move(fn);
  f.label_ = std::move(label);
  return f;
}

ExponentSequence ExponentFamily::at(double a) const {
  if (constant_) return *constant_;
  return fn_(a);
}

Json ExponentFamily::describe() const {
  Json j = Json::object();
  j["family"] = label_;
  if (constant_) j["phi"] = constant_->describe();
  return j;
}

// ---------------------------------------------------------------------------
// WeightSequence

struct WeightSequence::Impl {
  std::string family;
  Json params;
  std::function<double(std::size_t)> eval;
  std::optional<std::size_t> length;
  bool log_convex = false;
  std::size_t patch = 0;
  std::optional<WeightSequence> base;

  mutable std::mutex mu;
  mutable std::vector<double> memo;  // NaN marks "not yet computed"
};

namespace {

std::shared_ptr<WeightSequence::Impl> new_impl(std::string family, Json params,
                                               std::function<double(std::size_t)> eval) {
  auto p = std::make_shared<WeightSequence::Impl>();
  p->family = std::move(family);
  p->params = std::move(params);
  p->eval = std::move(eval);
  return p;
}

}  // namespace

WeightSequence WeightSequence::gevrey(double s) {
  require(std::isfinite(s) && s > 0.0, "s", "must be > 0");
  auto p = new_impl("gevrey", {{"s", s}},
                    [s](std::size_t j) { return s * log_factorial(static_cast<double>(j)); });
  p->log_convex = true;
  return WeightSequence(p);
}

WeightSequence WeightSequence::ptt(double tau, double sigma) {
  require(std::isfinite(tau) && tau > 0.0, "tau", "must be > 0");
  require(std::isfinite(sigma) && sigma >= 1.0, "sigma", "must be >= 1");
  auto p = new_impl("ptt", {{"tau", tau}, {"sigma", sigma}}, [tau, sigma](std::size_t j) {
    if (j <= 1) return 0.0;  // 0^0 := 1 and 1^1 = 1
    const double x = static_cast<double>(j);
    return tau * std::pow(x, sigma) * std::log(x);
  });
  p->log_convex = true;
  return WeightSequence(p);
}

WeightSequence WeightSequence::scaled(WeightSequence base, ExponentSequence phi,
                                      double c) {
  require(std::isfinite(c) && c > 0.0, "c", "must be > 0");
  const double lc = std::log(c);
  Json params = {{"base", base.describe()}, {"phi", phi.describe()}, {"c", c}};
  const bool convex = base.known_log_convex() && c >= 1.0 &&
                      phi.kind() != ExponentSequence::Kind::Table;
  auto lphi = phi.length();
  auto lbase = base.length();
  auto p = new_impl("scaled", std::move(params),
                    [base, phi, lc](std::size_t j) {
                      return phi(j) * lc + base.log_term(j);
                    });
  p->log_convex = convex;
  if (lphi || lbase)
    p->length = std::min(lphi.value_or(std::numeric_limits<std::size_t>::max()),
                         lbase.value_or(std::numeric_limits<std::size_t>::max()));
  return WeightSequence(p);
}

WeightSequence WeightSequence::table(const std::vector<double>& linear_terms) {
  require(!linear_terms.empty(), "log_terms", "table must be nonempty");
  std::vector<double> logs;
  logs.reserve(linear_terms.size());
  for (double x : linear_terms) {
    require(std::isfinite(x) && x > 0.0, "log_terms", "entries must be positive");
    logs.push_back(std::log(x));
  }
  return table_log(std::move(logs));
}

WeightSequence WeightSequence::table_log(std::vector<double> log_terms) {
  require(!log_terms.empty(), "log_terms", "table must be nonempty");
  for (double x : log_terms)
    require(std::isfinite(x), "log_terms", "entries must be finite");
  auto data = std::make_shared<const std::vector<double>>(std::move(log_terms));
  auto p = new_impl("table", {{"log_terms", *data}}, [data](std::size_t j) {
    if (j >= data->size()) throw TableExhausted(j, data->size());
    return (*data)[j];
  });
  p->length = data->size();
  return WeightSequence(p);
}

WeightSequence WeightSequence::custom(std::string family, Json params,
                                      std::function<double(std::size_t)> log_term) {
  return WeightSequence(new_impl(std::move(family), std::move(params), std::move(log_term)));
}

WeightSequence WeightSequence::regularized(WeightSequence base, std::size_t patch) {
  require(patch >= 1, "patch", "must be >= 1");
  const double anchor = log_factorial(static_cast<double>(patch - 1)) -
                        base.log_term(patch - 1);
  auto p = new_impl("regularized", {{"base", base.describe()}, {"patch", patch}},
                    [base, patch, anchor](std::size_t j) {
                      if (j < patch) return log_factorial(static_cast<double>(j));
                      return anchor + base.log_term(j);
                    });
  p->length = base.length();
  p->log_convex = true;
  p->patch = patch;
  p->base = base;
  return WeightSequence(p);
}

double WeightSequence::log_term(std::size_t j) const {
  // Far indices (maximizer searches gallop out to ~2^30) bypass the memo.
  constexpr std::size_t kMemoCap = std::size_t{1} << 16;
  if (j >= kMemoCap) return impl_->eval(j);
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (j < impl_->memo.size() && !std::isnan(impl_->memo[j])) return impl_->memo[j];
  }
  const double v = impl_->eval(j);
  std::lock_guard<std::mutex> lock(impl_->mu);
  if (j >= impl_->memo.size())
    impl_->memo.resize(j + 1, std::numeric_limits<double>::quiet_NaN());
  impl_->memo[j] = v;
  return v;
}

double WeightSequence::quotient_log(std::size_t j) const {
  if (j == 0) return 0.0;
  return log_term(j) - log_term(j - 1);
}

double WeightSequence::reduced_log(std::size_t j) const {
  return log_term(j) - log_factorial(static_cast<double>(j));
}

std::vector<double> WeightSequence::log_terms(std::size_t n) const {
  std::vector<double> out(n + 1);
  for (std::size_t j = 0; j <= n; ++j) out[j] = log_term(j);
  return out;
}

const std::string& WeightSequence::family() const { return impl_->family; }

Json WeightSequence::describe() const {
  return Json{{"family", impl_->family}, {"params", impl_->params}};
}

std::optional<std::size_t> WeightSequence::length() const { return impl_->length; }
bool WeightSequence::known_log_convex() const { return impl_->log_convex; }
std::size_t WeightSequence::patch_index() const { return impl_->patch; }
std::optional<WeightSequence> WeightSequence::base() const { return impl_->base; }

// ---------------------------------------------------------------------------

namespace {

ExponentSequence make_exponent(const Json& desc) {
  const std::string fam = desc.at("family").get<std::string>();
  const Json params = desc.value("params", Json::object());
  if (fam == "linear") return ExponentSequence::linear();
  if (fam == "power") return ExponentSequence::power(params.at("sigma").get<double>());
  if (fam == "table") return ExponentSequence::table(params.at("values").get<std::vector<double>>());
  throw InvalidParameter("family", "unknown exponent family '" + fam + "'");
}

}  // namespace

WeightSequence make_sequence(const Json& desc) {
  if (!desc.is_object() || !desc.contains("family"))
    throw InvalidParameter("family", "missing sequence family");
  const std::string fam = desc.at("family").get<std::string>();
  const Json params = desc.value("params", Json::object());
  auto num = [&](const char* key) {
    if (!params.contains(key))
      throw InvalidParameter(key, "missing required parameter");
    return json_to_double(params.at(key));
  };
  if (fam == "gevrey") return WeightSequence::gevrey(num("s"));
  if (fam == "ptt") return WeightSequence::ptt(num("tau"), num("sigma"));
  if (fam == "scaled")
    return WeightSequence::scaled(make_sequence(params.at("base")),
                                  make_exponent(params.at("phi")), num("c"));
  if (fam == "table")
    return WeightSequence::table_log(params.at("log_terms").get<std::vector<double>>());
  if (fam == "regularized")
    return WeightSequence::regularized(make_sequence(params.at("base")),
                                       params.at("patch").get<std::size_t>());
  throw InvalidParameter("family", "cannot rebuild sequence family '" + fam + "'");
}

WeightSequence regularize_slc(const WeightSequence& M, std::size_t horizon) {
  if (horizon < kMinHorizon) throw HorizonTooSmall(horizon, kMinHorizon);
  const double tol = Thresholds{}.mono_tol;
  // q_j = log(m_j / m_{j-1}) = log mu_j - log j
  std::vector<double> q(horizon + 1, 0.0);
  for (std::size_t j = 1; j <= horizon; ++j)
    q[j] = M.quotient_log(j) - std::log(static_cast<double>(j));
  auto slack = [&](double x) { return tol * std::max(1.0, std::abs(x)); };
  if (q[horizon] < -slack(q[horizon]))
    throw PreconditionFailed("reduced quotient below 1 at the horizon index " +
                             std::to_string(horizon));
  std::size_t jpp = horizon;
  while (jpp > 1 && q[jpp - 1] >= -slack(q[jpp - 1]) &&
         q[jpp - 1] <= q[jpp] + slack(q[jpp]))
    --jpp;
  if (jpp > horizon / 2)
    throw PreconditionFailed("reduced quotients not eventually non-decreasing and >= 1 "
                             "below horizon/2; largest violating index " +
                             std::to_string(jpp - 1));
  if (jpp <= 1 && M.log_term(0) == 0.0) return M;
  return WeightSequence::regularized(M, jpp);
}

}  // namespace wcalc
