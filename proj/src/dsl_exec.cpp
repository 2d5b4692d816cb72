#include <cmath>
#include <map>
#include <set>
#include <variant>

#include "dsl_signatures.hpp"
#include "wcalc/associated.hpp"
#include "wcalc/conditions.hpp"
#include "wcalc/dsl.hpp"
#include "wcalc/matrices.hpp"
#include "wcalc/relations.hpp"
#include "wcalc/sequences.hpp"
#include "wcalc/witness.hpp"

namespace wcalc::dsl {

namespace {

using Entity = std::variant<WeightSequence, ExponentSequence, WeightMatrix, OmegaFunction, DerivBounds>;

const char* entity_name(const Entity& e) {
  switch (e.index()) {
    case 0: return "a weight sequence";
    case 1: return "an exponent sequence";
    case 2: return "a weight matrix";
    case 3: return "an omega function";
    default: return "derivative bounds";
  }
}

struct Env {
  std::map<std::string, Entity> values;
};

Status fold(const std::vector<Status>& parts) {
  Status s = Status::Holds;
  for (Status p : parts) {
    if (p == Status::Fails) return Status::Fails;
    if (p == Status::Undetermined) s = Status::Undetermined;
  }
  return s;
}

// Call arguments resolved against the signature; positional arguments fill
// parameters in declaration order.
class Args {
 public:
  Args(const Signature& sig, const Call& c, const Env& env) : call_(c.name), env_(env) {
    std::size_t next = 0;
    for (const auto& a : c.args) {
      const std::string n = a.name ? *a.name : sig.params.at(next++).name;
      vals_.emplace(n, &a.value);
    }
  }

  bool has(const std::string& n) const { return vals_.count(n) > 0; }

  double num(const std::string& n) const {
    const Value& v = raw(n);
    if (v.kind != Value::Kind::Number) bad(n, "expected a number");
    return v.number;
  }
  double num_or(const std::string& n, double d) const { return has(n) ? num(n) : d; }

  std::size_t index(const std::string& n) const {
    const double x = num(n);
    if (!(x >= 0.0) || x != std::floor(x) || x > 1e12) bad(n, "expected a non-negative integer");
    return static_cast<std::size_t>(x);
  }
  std::size_t index_or(const std::string& n, std::size_t d) const { return has(n) ? index(n) : d; }

  // A list of numbers; a single number counts as a one-element list.
  std::vector<double> nums(const std::string& n) const {
    const Value& v = raw(n);
    if (v.kind == Value::Kind::Number) return {v.number};
    if (v.kind != Value::Kind::List) bad(n, "expected a list of numbers");
    std::vector<double> out;
    for (const auto& e : v.list) {
      if (e.kind != Value::Kind::Number) bad(n, "expected a list of numbers");
      out.push_back(e.number);
    }
    return out;
  }

  const Entity& entity(const std::string& n) const { return lookup(raw(n)); }

  WeightSequence seq(const std::string& n) const { return as<WeightSequence>(n, "a weight sequence"); }
  ExponentSequence exp(const std::string& n) const { return as<ExponentSequence>(n, "an exponent sequence"); }
  WeightMatrix matrix(const std::string& n) const { return as<WeightMatrix>(n, "a weight matrix"); }
  DerivBounds bounds(const std::string& n) const { return as<DerivBounds>(n, "derivative bounds"); }

  // Weight sequences are promoted to their associated function.
  OmegaFunction omega(const std::string& n) const {
    const Entity& e = entity(n);
    if (const auto* w = std::get_if<OmegaFunction>(&e)) return *w;
    if (const auto* m = std::get_if<WeightSequence>(&e)) return OmegaFunction::from_sequence(*m);
    bad(n, std::string("expected an omega function or a weight sequence, got ") + entity_name(e));
  }

  std::vector<WeightSequence> seqs(const std::string& n) const {
    const Value& v = raw(n);
    if (v.kind != Value::Kind::List) bad(n, "expected a list of weight sequences");
    std::vector<WeightSequence> out;
    for (const auto& e : v.list) {
      if (e.kind != Value::Kind::Ident) bad(n, "expected a list of weight sequences");
      const Entity& x = lookup(e);
      const auto* m = std::get_if<WeightSequence>(&x);
      if (!m) bad(n, "'" + e.ident + "' is " + entity_name(x) + ", expected a weight sequence");
      out.push_back(*m);
    }
    return out;
  }

  LogGrid grid() const {
    LogGrid g;
    if (has("t_lo") || has("t_hi") || has("n")) {
      const double lo = num_or("t_lo", std::exp(g.log_lo));
      const double hi = num_or("t_hi", std::exp(g.log_hi));
      if (!(lo > 0.0) || !(hi > lo)) bad("t_lo", "need 0 < t_lo < t_hi");
      g = LogGrid::over(lo, hi, index_or("n", g.n));
      if (g.n < 2) bad("n", "need at least 2 grid points");
    }
    return g;
  }

 private:
  std::string call_;
  const Env& env_;
  std::map<std::string, const Value*> vals_;

  [[noreturn]] void bad(const std::string& n, const std::string& msg) const {
    throw InvalidParameter(call_ + "." + n, msg);
  }

  const Value& raw(const std::string& n) const {
    auto it = vals_.find(n);
    if (it == vals_.end()) bad(n, "missing");
    return *it->second;
  }

  const Entity& lookup(const Value& v) const {
    if (v.kind != Value::Kind::Ident) throw InvalidParameter(call_, "expected a name");
    auto it = env_.values.find(v.ident);
    if (it == env_.values.end())
      throw Error("unbound-value", "'" + v.ident + "' has no value because its binding failed");
    return it->second;
  }

  template <class T>
  T as(const std::string& n, const char* want) const {
    const Entity& e = entity(n);
    if (const auto* x = std::get_if<T>(&e)) return *x;
    bad(n, "'" + raw(n).ident + "' is " + entity_name(e) + ", expected " + want);
  }
};

struct Outcome {
  std::string status;
  Json result;
};

Outcome from_verdict(const Verdict& v) { return {to_string(v.status), to_json(v)}; }
Outcome value(Json r) { return {"Value", std::move(r)}; }

std::size_t horizon_for(const Stmt& s, const ExecConfig& cfg) {
  if (cfg.horizon_forced) return cfg.horizon;
  for (const auto& o : s.opts)
    if (o.kind == Option::Kind::Horizon) {
      const double h = o.value.number;
      if (!(h >= 1.0) || h != std::floor(h) || h > 1e9)
        throw InvalidParameter("horizon", "must be a positive integer");
      return static_cast<std::size_t>(h);
    }
  return cfg.horizon;
}

std::optional<std::vector<double>> grid_opt(const Stmt& s) {
  for (const auto& o : s.opts)
    if (o.kind == Option::Kind::Grid) {
      std::vector<double> g;
      for (const auto& e : o.value.list) g.push_back(e.number);
      return g;
    }
  return std::nullopt;
}

std::string flavor_opt(const Stmt& s) {
  for (const auto& o : s.opts)
    if (o.kind == Option::Kind::Flavor) return o.value.ident;
  return "roumieu";
}

Entity bind(const Stmt& s, const Args& a, const ExecConfig& cfg) {
  const std::string& kw = s.keyword;
  const std::string& op = s.call.name;
  if (kw == "seq") {
    if (op == "gevrey") return WeightSequence::gevrey(a.num("s"));
    if (op == "ptt") return WeightSequence::ptt(a.num("tau"), a.num("sigma"));
    if (op == "table") return WeightSequence::table(a.nums("values"));
    if (op == "table_log") return WeightSequence::table_log(a.nums("values"));
    if (op == "scale") return WeightSequence::scaled(a.seq("base"), a.exp("phi"), a.num("c"));
    if (op == "regularize") return regularize_slc(a.seq("base"), a.index_or("horizon", cfg.horizon));
    if (op == "element") return a.matrix("matrix").element(a.num("c"));
    if (op == "from_omega") return from_omega(a.omega("omega"), a.num("ell"), a.grid());
    if (op == "theta_bounds") {
      const std::size_t J = a.index("J");
      ThetaOptions opt{a.num_or("shift", 0.0) != 0.0};
      return theta_bounds(a.seq("N"), J, a.index_or("truncation", J + 64), opt);
    }
    if (op == "bounds") return DerivBounds::synthetic(a.nums("values"), *s.target);
  } else if (kw == "exp") {
    if (op == "linear") return ExponentSequence::linear();
    if (op == "power") return ExponentSequence::power(a.num("sigma"));
    if (op == "table") return ExponentSequence::table(a.nums("values"));
  } else if (kw == "matrix") {
    if (op == "ptt_matrix") return WeightMatrix::ptt(a.num("tau"), a.num("sigma"));
    if (op == "sigma_matrix") return WeightMatrix::sigma(a.num("sigma"));
    if (op == "scale") return WeightMatrix::scale_family(a.seq("base"), a.exp("phi"));
    if (op == "matrix_scale") return WeightMatrix::matrix_scale(a.matrix("inner"), a.exp("phi"));
    if (op == "family_scale")
      return WeightMatrix::exponent_family_scale(a.seq("base"), ExponentFamily::constant(a.exp("phi")));
    if (op == "generic") {
      const std::vector<double> idx = a.nums("indices");
      const std::vector<WeightSequence> ms = a.seqs("seqs");
      if (idx.size() != ms.size()) throw InvalidParameter("generic", "indices and seqs differ in length");
      std::vector<std::pair<double, WeightSequence>> el;
      for (std::size_t i = 0; i < idx.size(); ++i) el.emplace_back(idx[i], ms[i]);
      return WeightMatrix::generic(std::move(el));
    }
  } else if (kw == "omega") {
    if (op == "assoc") return OmegaFunction::from_sequence(a.seq("M"), a.index_or("horizon", 0));
    if (op == "tpow") {
      const double p = a.num("a");
      if (!(p > 0.0)) throw InvalidParameter("tpow.a", "must be > 0");
      return OmegaFunction::from_function(
          [p](double t) { return t > 0.0 ? std::pow(t, p) : 0.0; }, "tpow", Json{{"a", p}});
    }
  }
  throw InvalidParameter(kw, "no constructor '" + op + "'");
}

Outcome check(const Stmt& s, const Args& a, const ExecConfig& cfg) {
  const std::string& op = s.call.name;
  const std::size_t H = horizon_for(s, cfg);
  const WeightSequence M = a.seq("M");
  if (op == "root_growth") return value(root_growth_profile(M, H, cfg.th));
  if (op == "gamma_lb") {
    Json rows = Json::array();
    std::vector<Status> st;
    for (const auto& [alpha, v] : gamma_lower_bound(M, a.nums("alphas"), H, cfg.th)) {
      rows.push_back({{"alpha", alpha}, {"verdict", to_json(v)}});
      st.push_back(v.status);
    }
    return {to_string(fold(st)), Json{{"horizon", H}, {"alphas", rows}}};
  }
  std::optional<double> Q;
  if (a.has("Q")) Q = a.num("Q");
  return from_verdict(check_condition(M, ConditionId::parse(op, Q), H, cfg.th));
}

Outcome compare_q(const Stmt& s, const Args& a, const ExecConfig& cfg) {
  const std::string& op = s.call.name;
  const std::size_t H = horizon_for(s, cfg);
  if (op == "phi_constancy") return from_verdict(compare_phi_constancy(a.seqs("seqs"), a.exp("phi"), H, cfg.th));
  if (op.rfind("assoc_", 0) == 0) {
    const AssocMode mode = parse_assoc_mode(op);
    const std::size_t cmax = mode == AssocMode::numeric_ratio ? 1 : a.index("c_max");
    return from_verdict(assoc_relation_check(a.seq("M"), a.seq("N"), mode, cmax, H, a.grid(), cfg.th));
  }
  std::optional<ExponentSequence> phi;
  if (a.has("phi")) phi = a.exp("phi");
  return from_verdict(compare(a.seq("M"), a.seq("N"), RelationId::parse(op, phi), H, cfg.th));
}

Outcome eval(const Stmt& s, const Args& a, const ExecConfig&) {
  const std::string& op = s.call.name;
  if (op == "omega") {
    const double t = a.num("t");
    const OmegaValue v = a.omega("W").eval(t);
    Json r{{"t", t}, {"value", v.value}};
    if (v.index) r["index"] = *v.index;
    return value(r);
  }
  if (op == "conjugate") {
    const double sv = a.num("s");
    const ConjugateResult c = young_conjugate(a.omega("W"), sv, a.grid());
    return value({{"s", sv}, {"value", c.value}, {"u_star", c.u_star}});
  }
  if (op == "assoc_term") {
    const std::size_t j = a.index("j");
    return value({{"ell", a.num("ell")}, {"j", j},
                  {"value", assoc_matrix_term(a.omega("W"), a.num("ell"), j, a.grid())}});
  }
  if (op == "recover") {
    const std::size_t j = a.index("j");
    return value({{"j", j}, {"value", recover_term(a.omega("W"), j, a.grid())}});
  }
  if (op == "term" || op == "quotient") {
    const std::size_t j = a.index("j");
    const WeightSequence M = a.seq("M");
    return value({{"j", j}, {"value", op == "term" ? M.log_term(j) : M.quotient_log(j)}});
  }
  if (op == "theta") {
    const double t = a.num("t");
    const ThetaOptions opt{a.num_or("shift", 0.0) != 0.0};
    const auto z = theta_eval(a.seq("N"), t, a.index_or("truncation", 64), opt);
    return value({{"t", t}, {"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}});
  }
  if (op == "theta_deriv") {
    const std::size_t k = a.index("k");
    const ThetaOptions opt{a.num_or("shift", 0.0) != 0.0};
    return value({{"k", k},
                  {"value", theta_derivative_log_bound(a.seq("N"), k, a.index_or("truncation", k + 64), opt)}});
  }
  if (op == "compose") {
    const std::size_t K = a.index("K");
    return value({{"K", K}, {"values", composition_sequence(reduced_sequence(a.seq("M")), K)}});
  }
  if (op == "seminorm") {
    const ExponentSequence phi = a.has("phi") ? a.exp("phi") : ExponentSequence::linear();
    return value({{"h", a.num("h")}, {"value", seminorm(a.bounds("F"), a.seq("M"), phi, a.num("h"))}});
  }
  throw InvalidParameter("eval", "no operation '" + op + "'");
}

std::vector<double> index_grid(const Stmt& s, const WeightMatrix& MM) {
  if (auto g = grid_opt(s)) return *g;
  if (MM.kind() == MatrixKind::Generic) return MM.indices();
  return default_index_grid();
}

Outcome classify(const Stmt& s, const Args& a, const ExecConfig& cfg) {
  const WeightMatrix MM = a.matrix("MM");
  const ExponentSequence phi = a.has("phi") ? a.exp("phi") : ExponentSequence::linear();
  const MembershipReport r =
      classify_membership(a.bounds("F"), MM, phi, index_grid(s, MM), a.nums("h"), cfg.th);
  return value(to_json(r));
}

Outcome mcheck(const Stmt& s, const Args& a, const ExecConfig& cfg) {
  const std::string& op = s.call.name;
  const std::size_t H = horizon_for(s, cfg);
  const std::string flavor = flavor_opt(s);
  if (op == "absorption") {
    const Flavor f = flavor == "beurling" ? Flavor::Beurling : Flavor::Roumieu;
    const std::vector<double> grid = grid_opt(s).value_or(default_index_grid());
    return from_verdict(check_exponent_family_absorption(ExponentFamily::constant(a.exp("phi")), f, grid, H, cfg.th));
  }
  const std::vector<double> grid = index_grid(s, a.matrix("MM"));
  const WeightMatrix MM = build_matrix(a.matrix("MM"), grid, std::min<std::size_t>(H, 64));
  MatrixCheckOptions opt;
  opt.th = cfg.th;
  opt.h = a.num_or("h", opt.h);
  opt.fdb_horizon = a.index_or("fdb_horizon", opt.fdb_horizon);
  const MatrixReport r = check_matrix_condition(MM, MatrixConditionId::parse(op, flavor), grid, H, opt);
  return {to_string(r.overall()), to_json(r)};
}

Json error_record(const Stmt& s, const std::string& kind, const std::string& msg) {
  Json r{{"query", s.source}, {"kind", s.keyword}, {"op", s.call.name}, {"status", "Error"}};
  if (s.target) r["target"] = *s.target;
  r["error"] = {{"kind", kind}, {"message", msg}};
  return r;
}

}  // namespace

Json execute(const Program& p, const ExecConfig& cfg) {
  Env env;
  Json records = Json::array();
  for (const Stmt& s : p.stmts) {
    const Signature* sig = find_signature(s.keyword, s.call.name);
    try {
      if (!sig) throw InvalidParameter(s.keyword, "no operation '" + s.call.name + "'");
      const Args a(*sig, s.call, env);
      if (s.target) {
        env.values.insert_or_assign(*s.target, bind(s, a, cfg));
        continue;
      }
      Outcome o;
      if (s.keyword == "check") o = check(s, a, cfg);
      else if (s.keyword == "compare") o = compare_q(s, a, cfg);
      else if (s.keyword == "eval") o = eval(s, a, cfg);
      else if (s.keyword == "classify") o = classify(s, a, cfg);
      else o = mcheck(s, a, cfg);
      records.push_back(Json{{"query", s.source},
                             {"kind", s.keyword},
                             {"op", s.call.name},
                             {"status", o.status},
                             {"result", std::move(o.result)}});
    } catch (const Error& e) {
      records.push_back(error_record(s, e.kind(), e.what()));
    } catch (const std::exception& e) {
      records.push_back(error_record(s, "internal", e.what()));
    }
  }
  return records;
}

}  // namespace wcalc::dsl
