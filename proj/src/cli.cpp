#include "wcalc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "wcalc/associated.hpp"
#include "wcalc/dsl.hpp"
#include "wcalc/errors.hpp"
#include "wcalc/numerics.hpp"
#include "wcalc/report.hpp"
#include "wcalc/witness.hpp"

namespace wcalc {

namespace {

struct UsageError : Error {
  explicit UsageError(const std::string& w) : Error("usage", w) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error("io", "cannot write '" + path + "'");
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw UsageError(what + ": '" + s + "' is not a number");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

// A registered family with its parameters, e.g. "ptt:1,2", "gevrey:s=1" or
// "ptt-matrix" plus --params c=1,tau=1,sigma=2.
struct FamilySpec {
  std::string family;
  std::map<std::string, double> params;
};

const std::map<std::string, std::vector<std::string>>& family_params() {
  static const std::map<std::string, std::vector<std::string>> m = {
      {"gevrey", {"s"}},
      {"ptt", {"tau", "sigma"}},
      {"ptt-matrix", {"tau", "sigma", "c"}},
      {"sigma-matrix", {"sigma", "tau"}},
  };
  return m;
}

FamilySpec parse_family(const std::string& text, const std::string& extra_params = "") {
  FamilySpec f;
  const auto colon = text.find(':');
  f.family = text.substr(0, colon);
  auto it = family_params().find(f.family);
  if (it == family_params().end())
    throw UsageError("unknown family '" + f.family + "' (expected gevrey, ptt, ptt-matrix, sigma-matrix)");
  const auto& order = it->second;
  std::vector<std::string> items;
  if (colon != std::string::npos) items = split(text.substr(colon + 1), ',');
  for (const auto& p : split(extra_params, ',')) items.push_back(p);
  std::size_t next = 0;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    std::string key;
    if (eq == std::string::npos) {
      if (next >= order.size()) throw UsageError(f.family + ": too many parameters");
      key = order[next++];
    } else {
      key = item.substr(0, eq);
      if (std::find(order.begin(), order.end(), key) == order.end())
        throw UsageError(f.family + ": unknown parameter '" + key + "'");
    }
    f.params[key] = parse_number(eq == std::string::npos ? item : item.substr(eq + 1), key);
  }
  auto need = [&](const char* k) {
    if (!f.params.count(k)) throw UsageError(f.family + ": missing parameter '" + std::string(k) + "'");
  };
  if (f.family == "gevrey") need("s");
  if (f.family == "ptt" || f.family == "ptt-matrix") {
    need("tau");
    need("sigma");
  }
  if (f.family == "sigma-matrix") need("sigma");
  return f;
}

bool is_matrix(const FamilySpec& f) { return f.family == "ptt-matrix" || f.family == "sigma-matrix"; }

// Index of the element when a matrix family is pinned to one sequence.
std::optional<double> element_index(const FamilySpec& f) {
  if (f.family == "ptt-matrix" && f.params.count("c")) return f.params.at("c");
  if (f.family == "sigma-matrix" && f.params.count("tau")) return f.params.at("tau");
  return std::nullopt;
}

std::string num(double x) { return shortest(x); }

// DSL lines binding `name` as a matrix (when the family is an unpinned matrix
// family) or as a sequence.
std::string bind_family(const FamilySpec& f, const std::string& name) {
  const auto& p = f.params;
  if (f.family == "gevrey") return "seq " + name + " = gevrey(s=" + num(p.at("s")) + ");\n";
  if (f.family == "ptt")
    return "seq " + name + " = ptt(tau=" + num(p.at("tau")) + ", sigma=" + num(p.at("sigma")) + ");\n";
  std::string m = f.family == "ptt-matrix"
                      ? "ptt_matrix(tau=" + num(p.at("tau")) + ", sigma=" + num(p.at("sigma")) + ")"
                      : "sigma_matrix(sigma=" + num(p.at("sigma")) + ")";
  if (auto c = element_index(f))
    return "matrix " + name + "_family = " + m + ";\nseq " + name + " = element(" + name + "_family, " + num(*c) + ");\n";
  return "matrix " + name + " = " + m + ";\n";
}

std::string list_text(const std::vector<double>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + num(xs[i]);
  return s + "]";
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& x : split(s, ',')) out.push_back(parse_number(x, what));
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

std::string underscores(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

const std::vector<std::string> kMatrixConds = {"L", "mg", "dc", "rai", "FdB", "fdb", "BR", "br", "sc", "constant"};

struct Common {
  std::optional<std::size_t> horizon;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "json";
  bool allow_undetermined = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--horizon", c.horizon, "Horizon H (overrides script options)")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "Seed for mg off-diagonal sampling");
  sub->add_option("--out", c.out_path, "Write the report to this file");
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_flag("--allow-undetermined", c.allow_undetermined, "Undetermined verdicts do not fail the run");
}

int exit_for(const Json& report, bool allow_undetermined) {
  const std::string w = worst_status(report);
  if (w == "Error") return kExitRuntime;
  if (w == "Fails") return kExitFails;
  if (w == "Undetermined" && !allow_undetermined) return kExitFails;
  return kExitOk;
}

int execute_script(const std::string& text, const Common& c, const dsl::ExecConfig& base,
                   std::ostream& out, std::ostream& err) {
  dsl::ExecConfig cfg = base;
  if (c.horizon) {
    cfg.horizon = *c.horizon;
    cfg.horizon_forced = true;
  }
  if (c.seed) cfg.th.seed = *c.seed;
  dsl::Program prog;
  try {
    prog = dsl::parse(text);
  } catch (const dsl::SourceError& e) {
    err << "wcalc: parse error at " << e.what() << "\n";
    return kExitUsage;
  }
  const Json report = dsl::make_report(dsl::execute(prog, cfg), cfg);
  const std::string body = emit_report(report, parse_report_format(c.format));
  if (c.out_path.empty()) out << body;
  else write_file(c.out_path, body);
  for (const auto& rec : report.at("records"))
    if (rec.value("status", "") == "Error")
      err << "wcalc: error in '" << rec.value("query", "") << "': " << rec["error"].value("message", "") << "\n";
  return exit_for(report, c.allow_undetermined);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weight sequence calculator", "wcalc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;
  std::string script;
  auto* run = app.add_subcommand("run", "Run a .wsq script");
  run->add_option("script", script, "Script file")->required();
  add_common(run, common);

  std::string family, params, cond, flavor = "roumieu", alphas, grid;
  std::optional<double> Q;
  auto* check = app.add_subcommand("check", "Check a condition on a registered family");
  check->add_option("--family", family, "gevrey, ptt, ptt-matrix or sigma-matrix")->required();
  check->add_option("--params", params, "k=v,... family parameters");
  check->add_option("--cond", cond, "Condition id")->required();
  check->add_option("--flavor", flavor, "Matrix flavor")->check(CLI::IsMember({"r", "b", "roumieu", "beurling"}));
  check->add_option("--alphas", alphas, "Comma list of alphas for gamma-lb");
  check->add_option("--Q", Q, "Q for beta1/beta3");
  check->add_option("--grid", grid, "Comma list of matrix indices");
  add_common(check, common);

  std::string tgrid = "1:1e8:200", csv_path;
  auto* omega = app.add_subcommand("omega", "Tabulate the associated function");
  omega->add_option("--family", family, "Family with parameters")->required();
  omega->add_option("--params", params, "k=v,... family parameters");
  omega->add_option("--t-grid", tgrid, "t_lo:t_hi:n (log spaced)");
  omega->add_option("--csv", csv_path, "Write t,omega,j rows to this file");

  std::string left, right, rel, phi;
  std::size_t c_max = 8;
  auto* compare = app.add_subcommand("compare", "Compare two sequences");
  compare->add_option("--left", left, "Family with parameters, e.g. gevrey:1")->required();
  compare->add_option("--right", right, "Family with parameters")->required();
  compare->add_option("--rel", rel, "Relation id")->required();
  compare->add_option("--phi", phi, "Exponent sequence for *_phi relations: linear or power:s");
  compare->add_option("--c-max", c_max, "Largest c for assoc_bigO/assoc_smallO")->check(CLI::PositiveNumber);
  add_common(compare, common);

  std::string bounds_path, matrix, hs = "0.5,1,2,4";
  auto* classify = app.add_subcommand("classify", "Classify derivative bounds against a matrix");
  classify->add_option("--bounds", bounds_path, "CSV file j,log_bound")->required();
  classify->add_option("--matrix", matrix, "Matrix family, e.g. ptt-matrix:1,2")->required();
  classify->add_option("--h-grid", hs, "Comma list of h values");
  classify->add_option("--grid", grid, "Comma list of matrix indices");
  add_common(classify, common);

  dsl::ExecConfig base;
  try {
    if (const char* env = std::getenv("WCALC_HORIZON"); env && *env) {
      const double h = parse_number(env, "WCALC_HORIZON");
      if (!(h >= 1.0) || h != std::floor(h)) throw UsageError("WCALC_HORIZON must be a positive integer");
      base.horizon = static_cast<std::size_t>(h);
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "wcalc: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run->parsed()) return execute_script(read_file(script), common, base, out, err);

    if (check->parsed()) {
      const FamilySpec f = parse_family(family, params);
      const std::string c = underscores(cond);
      std::string text = bind_family(f, "M");
      const bool mcond = std::find(kMatrixConds.begin(), kMatrixConds.end(), cond) != kMatrixConds.end();
      if (is_matrix(f) && !element_index(f)) {
        if (!mcond) throw UsageError("condition '" + cond + "' needs a sequence; pin a matrix element with c= (or tau= for sigma-matrix)");
        text += "mcheck " + c + "(M)";
        if (!grid.empty()) text += " grid " + list_text(parse_list(grid, "--grid"));
        text += std::string(" flavor ") + (flavor[0] == 'b' ? "beurling" : "roumieu");
      } else if (c == "gamma_lb") {
        if (alphas.empty()) throw UsageError("gamma-lb needs --alphas");
        text += "check gamma_lb(M, alphas=" + list_text(parse_list(alphas, "--alphas")) + ")";
      } else if (c == "beta1" || c == "beta3") {
        if (!Q) throw UsageError(cond + " needs --Q");
        text += "check " + c + "(M, Q=" + num(*Q) + ")";
      } else {
        text += "check " + c + "(M)";
      }
      return execute_script(text + ";\n", common, base, out, err);
    }

    if (compare->parsed()) {
      const FamilySpec l = parse_family(left), r = parse_family(right);
      if ((is_matrix(l) && !element_index(l)) || (is_matrix(r) && !element_index(r)))
        throw UsageError("compare needs sequences; pin matrix elements with c= (or tau=)");
      const std::string id = underscores(rel);
      std::string text = bind_family(l, "L") + bind_family(r, "R");
      std::string extra;
      if (id.size() > 4 && id.substr(id.size() - 4) == "_phi") {
        if (phi.empty()) throw UsageError(rel + " needs --phi");
        if (phi == "linear") text += "exp P = linear();\n";
        else if (phi.rfind("power:", 0) == 0) text += "exp P = power(sigma=" + num(parse_number(phi.substr(6), "--phi")) + ");\n";
        else throw UsageError("--phi: expected linear or power:s");
        extra = ", phi=P";
      }
      if (id == "assoc_bigO" || id == "assoc_smallO") extra = ", c_max=" + std::to_string(c_max);
      text += "compare " + id + "(L, R" + extra + ");\n";
      return execute_script(text, common, base, out, err);
    }

    if (classify->parsed()) {
      const DerivBounds b = DerivBounds::from_csv(read_file(bounds_path), "bounds");
      const FamilySpec m = parse_family(matrix);
      if (!is_matrix(m) || element_index(m)) throw UsageError("--matrix needs an unpinned matrix family");
      std::string text = "seq F = bounds(values=" + list_text(b.bounds) + ");\n" + bind_family(m, "MM");
      text += "classify membership(F, MM, h=" + list_text(parse_list(hs, "--h-grid")) + ")";
      if (!grid.empty()) text += " grid " + list_text(parse_list(grid, "--grid"));
      return execute_script(text + ";\n", common, base, out, err);
    }

    if (omega->parsed()) {
      const FamilySpec f = parse_family(family, params);
      if (is_matrix(f) && !element_index(f)) throw UsageError("omega needs a sequence; pin a matrix element");
      const auto parts = split(tgrid, ':');
      if (parts.size() != 3) throw UsageError("--t-grid: expected t_lo:t_hi:n");
      const double lo = parse_number(parts[0], "t_lo"), hi = parse_number(parts[1], "t_hi");
      const double n = parse_number(parts[2], "n");
      if (!(lo > 0.0) || !(hi > lo) || n < 2 || n != std::floor(n))
        throw UsageError("--t-grid: need 0 < t_lo < t_hi and integer n >= 2");
      WeightSequence M = WeightSequence::gevrey(1.0);
      if (f.family == "gevrey") M = WeightSequence::gevrey(f.params.at("s"));
      else if (f.family == "ptt") M = WeightSequence::ptt(f.params.at("tau"), f.params.at("sigma"));
      else if (f.family == "ptt-matrix")
        M = WeightMatrix::ptt(f.params.at("tau"), f.params.at("sigma")).element(*element_index(f));
      else M = WeightMatrix::sigma(f.params.at("sigma")).element(*element_index(f));
      const auto rows = omega_table(OmegaFunction::from_sequence(M), LogGrid::over(lo, hi, static_cast<std::size_t>(n)));
      const std::string csv = omega_csv(rows);
      if (csv_path.empty()) out << csv;
      else write_file(csv_path, csv);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "wcalc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "wcalc: " << e.kind() << ": " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "wcalc: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace wcalc
