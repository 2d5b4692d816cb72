#include "wcalc/relations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wcalc/errors.hpp"
#include "wcalc/tail.hpp"

namespace wcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Ratio {
  std::vector<double> r;
  std::vector<std::size_t> j;  // index of each entry of r
  std::vector<std::size_t> excluded;
};

Ratio normalized_log_ratio(const WeightSequence& M, const WeightSequence& N,
                           const ExponentSequence& phi, std::size_t H) {
  Ratio out;
  for (std::size_t j = 1; j <= H; ++j) {
    const double p = phi(j);
    if (p == 0.0) {
      out.excluded.push_back(j);
      continue;
    }
    out.r.push_back((M.log_term(j) - N.log_term(j)) / p);
    out.j.push_back(j);
  }
  if (out.r.empty())
    throw DomainError("exponent sequence vanishes on [1, " + std::to_string(H) + "]");
  return out;
}

void add_common(Verdict& v, const Ratio& R, const SupAnalysis& a) {
  v.evidence["sup"] = a.sup;
  v.evidence["argmax"] = R.j[a.argmax];
  v.evidence["sup_trajectory"] = a.checkpoints;
  v.evidence["stable"] = a.stable;
  v.evidence["diverging"] = a.diverging;
  if (!R.excluded.empty()) v.evidence["excluded"] = R.excluded;
}

Verdict preceq(const std::string& name, const WeightSequence& M,
               const WeightSequence& N, const ExponentSequence& phi,
               std::size_t H, const Thresholds& th) {
  const Ratio R = normalized_log_ratio(M, N, phi, H);
  const SupAnalysis a = analyze_running_sup(R.r, th);
  Verdict v;
  if (a.stable) {
    v = Verdict::holds(name, H);
  } else if (a.diverging) {
    v = Verdict::fails(name, H, Witness{R.j[a.argmax], std::nullopt});
  } else {
    v = Verdict::undetermined(name, H);
  }
  add_common(v, R, a);
  return v;
}

Verdict triangle(const std::string& name, const WeightSequence& M,
                 const WeightSequence& N, const ExponentSequence& phi,
                 std::size_t H, const Thresholds& th) {
  const Ratio R = normalized_log_ratio(M, N, phi, H);
  const std::size_t n = R.r.size();
  std::vector<double> neg(n);
  for (std::size_t i = 0; i < n; ++i) neg[i] = -R.r[i];
  // Last index where r increases; r is non-increasing after it.
  const auto last_rise = last_decrease(neg, th.mono_tol);
  const std::size_t rise_pos = last_rise ? *last_rise : 0;
  const bool eventually_nonincreasing = rise_pos <= n / 2;
  const double first_quartile = R.r[(n - 1) / 4];
  const double tail = R.r.back();
  const bool dropped = tail < first_quartile - th.divergence_margin;
  const bool neg_divergent = empirically_divergent(neg, th);
  const SupAnalysis lower = analyze_running_sup(neg, th);  // running min of r

  Verdict v;
  if (eventually_nonincreasing && (dropped || neg_divergent)) {
    v = Verdict::holds(name, H);
  } else if (lower.stable) {
    v = Verdict::fails(name, H, Witness{R.j[lower.argmax], std::nullopt});
  } else {
    v = Verdict::undetermined(name, H);
  }
  v.evidence["tail_value"] = tail;
  v.evidence["first_quartile_value"] = first_quartile;
  v.evidence["monotone_from"] = R.j[rise_pos];
  v.evidence["inf_estimate"] = -lower.sup;
  v.evidence["inf_trajectory"] = [&] {
    std::vector<double> c;
    for (double x : lower.checkpoints) c.push_back(-x);
    return c;
  }();
  if (!R.excluded.empty()) v.evidence["excluded"] = R.excluded;
  return v;
}

Verdict exact_le(const std::string& name, const WeightSequence& M,
                 const WeightSequence& N, bool quotients, std::size_t H,
                 const Thresholds& th) {
  double worst = -kInf;
  for (std::size_t j = quotients ? 1 : 0; j <= H; ++j) {
    const double a = quotients ? M.quotient_log(j) : M.log_term(j);
    const double b = quotients ? N.quotient_log(j) : N.log_term(j);
    worst = std::max(worst, a - b);
    if (a > b + th.mono_tol * std::max(1.0, std::abs(b))) {
      Verdict v = Verdict::fails(name, H, Witness{j, std::nullopt});
      v.evidence["left"] = a;
      v.evidence["right"] = b;
      return v;
    }
  }
  Verdict v = Verdict::holds(name, H);
  v.evidence["max_log_excess"] = worst;
  return v;
}

Verdict approx(const std::string& name, const WeightSequence& M,
               const WeightSequence& N, const ExponentSequence& phi,
               std::size_t H, const Thresholds& th) {
  const std::string sub = name == "approx" ? "preceq" : "preceq_phi";
  Verdict f = preceq(sub, M, N, phi, H, th);
  Verdict b = preceq(sub, N, M, phi, H, th);
  Verdict v;
  const Status s = combine_all({f.status, b.status});
  if (s == Status::Fails) {
    v = Verdict::fails(name, H, f.is_fails() ? *f.witness : *b.witness);
  } else if (s == Status::Holds) {
    v = Verdict::holds(name, H);
  } else {
    v = Verdict::undetermined(name, H);
  }
  v.evidence["forward"] = to_json(f);
  v.evidence["backward"] = to_json(b);
  return v;
}

}  // namespace

RelationId RelationId::parse(const std::string& raw, std::optional<ExponentSequence> phi) {
  std::string n = raw;
  std::replace(n.begin(), n.end(), '-', '_');
  RelationId r;
  if (n == "preceq") r.tag = RelationTag::preceq;
  else if (n == "approx") r.tag = RelationTag::approx;
  else if (n == "triangle") r.tag = RelationTag::triangle;
  else if (n == "pointwise_le" || n == "le") r.tag = RelationTag::pointwise_le;
  else if (n == "quotient_le") r.tag = RelationTag::quotient_le;
  else if (n == "preceq_phi") r.tag = RelationTag::preceq_phi;
  else if (n == "approx_phi") r.tag = RelationTag::approx_phi;
  else if (n == "triangle_phi") r.tag = RelationTag::triangle_phi;
  else throw InvalidParameter("relation", "unknown relation '" + raw + "'");
  const bool needs_phi = r.tag == RelationTag::preceq_phi || r.tag == RelationTag::approx_phi ||
                         r.tag == RelationTag::triangle_phi;
  if (needs_phi && !phi) throw InvalidParameter("phi", "required for " + n);
  if (!needs_phi && phi) throw InvalidParameter("phi", "not accepted by " + n);
  r.phi = std::move(phi);
  return r;
}

std::string RelationId::name() const {
  switch (tag) {
    case RelationTag::preceq: return "preceq";
    case RelationTag::approx: return "approx";
    case RelationTag::triangle: return "triangle";
    case RelationTag::pointwise_le: return "pointwise_le";
    case RelationTag::quotient_le: return "quotient_le";
    case RelationTag::preceq_phi: return "preceq_phi";
    case RelationTag::approx_phi: return "approx_phi";
    case RelationTag::triangle_phi: return "triangle_phi";
  }
  return "";
}

Verdict compare(const WeightSequence& M, const WeightSequence& N,
                const RelationId& rel, std::size_t H, const Thresholds& th) {
  if (H < kMinHorizon) throw HorizonTooSmall(H, kMinHorizon);
  const ExponentSequence phi = rel.phi.value_or(ExponentSequence::linear());
  const std::string name = rel.name();
  switch (rel.tag) {
    case RelationTag::preceq:
    case RelationTag::preceq_phi:
      return preceq(name, M, N, phi, H, th);
    case RelationTag::approx:
    case RelationTag::approx_phi:
      return approx(name, M, N, phi, H, th);
    case RelationTag::triangle:
    case RelationTag::triangle_phi:
      return triangle(name, M, N, phi, H, th);
    case RelationTag::pointwise_le:
      return exact_le(name, M, N, false, H, th);
    case RelationTag::quotient_le:
      return exact_le(name, M, N, true, H, th);
  }
  throw InvalidParameter("relation", "unhandled");
}

Verdict compare_phi_constancy(const std::vector<WeightSequence>& MM,
                              const ExponentSequence& phi, std::size_t H,
                              const Thresholds& th) {
  if (MM.size() < 2) throw InvalidParameter("sequences", "need at least two");
  if (H < kMinHorizon) throw HorizonTooSmall(H, kMinHorizon);
  const RelationId rel = RelationId::parse("approx_phi", phi);
  Json pairs = Json::array();
  Status overall = Status::Holds;
  std::optional<Witness> witness;
  for (std::size_t a = 0; a < MM.size(); ++a) {
    for (std::size_t b = a + 1; b < MM.size(); ++b) {
      const Verdict v = compare(MM[a], MM[b], rel, H, th);
      const Ratio R = normalized_log_ratio(MM[a], MM[b], phi, H);
      const auto [lo, hi] = std::minmax_element(R.r.begin(), R.r.end());
      Json p = Json::object();
      p["left"] = a;
      p["right"] = b;
      p["status"] = to_string(v.status);
      p["log_ratio_min"] = *lo;
      p["log_ratio_max"] = *hi;
      p["constant"] = (*hi - *lo) <= 1e-9 * std::max(1.0, std::abs(*hi));
      pairs.push_back(p);
      overall = combine_all({overall, v.status});
      if (v.is_fails() && !witness) witness = v.witness;
    }
  }
  Verdict out;
  if (overall == Status::Fails) out = Verdict::fails("phi_constancy", H, *witness);
  else if (overall == Status::Holds) out = Verdict::holds("phi_constancy", H);
  else out = Verdict::undetermined("phi_constancy", H);
  out.evidence["phi"] = phi.describe();
  out.evidence["pairs"] = pairs;
  return out;
}

}  // namespace wcalc
