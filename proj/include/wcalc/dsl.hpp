#ifndef WCALC_DSL_HPP
#define WCALC_DSL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wcalc/config.hpp"
#include "wcalc/errors.hpp"
#include "wcalc/json.hpp"

namespace wcalc::dsl {

struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Value {
  enum class Kind { Number, Ident, List };
  Kind kind = Kind::Number;
  double number = 0.0;
  std::string ident;
  std::vector<Value> list;
  Pos pos;
};

struct Arg {
  std::optional<std::string> name;
  Value value;
};

struct Call {
  std::string name;
  std::vector<Arg> args;
  Pos pos;
};

struct Option {
  enum class Kind { Horizon, Grid, Flavor };
  Kind kind = Kind::Horizon;
  Value value;  // Number, List or Ident respectively
};

struct Stmt {
  std::string keyword;               // seq exp matrix omega check compare eval classify mcheck
  std::optional<std::string> target; // bindings only
  Call call;
  std::vector<Option> opts;
  std::string source;                // original text of the statement
  Pos pos;

  bool is_binding() const { return target.has_value(); }
};

struct Program {
  std::vector<Stmt> stmts;
};

class SourceError : public Error {
 public:
  SourceError(Pos pos, const std::string& message, std::vector<std::string> expected = {});
  Pos pos;
  std::string message;
  std::vector<std::string> expected;
};

Program parse(const std::string& text);

// Canonical text; parse(print(p)) equals p structurally.
std::string print(const Program& p);
std::string print(const Stmt& s);

// Structural equality, ignoring positions and source text.
bool same(const Program& a, const Program& b);

// Production names hit while parsing, for grammar coverage tests.
std::vector<std::string> productions_used(const std::string& text);

struct ExecConfig {
  std::size_t horizon = kDefaultHorizon;
  bool horizon_forced = false;  // command-line flag beats script options
  Thresholds th{};
};

// Runs bindings and queries in order. Each query (and each failed binding)
// yields one record; errors become records and execution continues.
Json execute(const Program& p, const ExecConfig& cfg);

// Full report object {schema_version, tool_version, config, records}.
Json make_report(const Json& records, const ExecConfig& cfg);

}  // namespace wcalc::dsl

#endif
