#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "dsl_signatures.hpp"
#include "wcalc/dsl.hpp"
#include "wcalc/numerics.hpp"

namespace wcalc::dsl {

// ---------------------------------------------------------------------------
// Signatures

namespace {

const std::vector<Signature>& signatures() {
  static const std::vector<Signature> table = [] {
    std::vector<Signature> t;
    auto add = [&](const char* kw, const char* name, std::vector<Param> ps) {
      t.push_back({kw, name, std::move(ps)});
    };
    const std::vector<Param> tgrid = {{"t_lo", false}, {"t_hi", false}, {"n", false}};
    auto with_grid = [&](std::vector<Param> ps) {
      ps.insert(ps.end(), tgrid.begin(), tgrid.end());
      return ps;
    };

    add("seq", "gevrey", {{"s", true}});
    add("seq", "ptt", {{"tau", true}, {"sigma", true}});
    add("seq", "table", {{"values", true}});
    add("seq", "table_log", {{"values", true}});
    add("seq", "scale", {{"base", true}, {"phi", true}, {"c", true}});
    add("seq", "regularize", {{"base", true}, {"horizon", false}});
    add("seq", "element", {{"matrix", true}, {"c", true}});
    add("seq", "from_omega", with_grid({{"omega", true}, {"ell", true}}));
    add("seq", "theta_bounds", {{"N", true}, {"J", true}, {"truncation", false}, {"shift", false}});
    add("seq", "bounds", {{"values", true}});

    add("exp", "linear", {});
    add("exp", "power", {{"sigma", true}});
    add("exp", "table", {{"values", true}});

    add("matrix", "ptt_matrix", {{"tau", true}, {"sigma", true}});
    add("matrix", "sigma_matrix", {{"sigma", true}});
    add("matrix", "scale", {{"base", true}, {"phi", true}});
    add("matrix", "matrix_scale", {{"inner", true}, {"phi", true}});
    add("matrix", "family_scale", {{"base", true}, {"phi", true}});
    add("matrix", "generic", {{"indices", true}, {"seqs", true}});

    add("omega", "assoc", {{"M", true}, {"horizon", false}});
    add("omega", "tpow", {{"a", true}});

    for (const char* c : {"lc", "slc", "normalized", "mg", "dc", "nq", "nq_carleman", "gamma1",
                          "root_growth"})
      add("check", c, {{"M", true}});
    add("check", "beta1", {{"M", true}, {"Q", true}});
    add("check", "beta3", {{"M", true}, {"Q", true}});
    add("check", "gamma_lb", {{"M", true}, {"alphas", true}});

    for (const char* r : {"preceq", "approx", "triangle", "pointwise_le", "quotient_le"})
      add("compare", r, {{"M", true}, {"N", true}});
    for (const char* r : {"preceq_phi", "approx_phi", "triangle_phi"})
      add("compare", r, {{"M", true}, {"N", true}, {"phi", true}});
    add("compare", "assoc_bigO", {{"M", true}, {"N", true}, {"c_max", true}});
    add("compare", "assoc_smallO", {{"M", true}, {"N", true}, {"c_max", true}});
    add("compare", "assoc_ratio", with_grid({{"M", true}, {"N", true}}));
    add("compare", "phi_constancy", {{"seqs", true}, {"phi", true}});

    add("eval", "omega", {{"W", true}, {"t", true}});
    add("eval", "conjugate", with_grid({{"W", true}, {"s", true}}));
    add("eval", "assoc_term", with_grid({{"W", true}, {"ell", true}, {"j", true}}));
    add("eval", "recover", with_grid({{"W", true}, {"j", true}}));
    add("eval", "term", {{"M", true}, {"j", true}});
    add("eval", "quotient", {{"M", true}, {"j", true}});
    add("eval", "theta", {{"N", true}, {"t", true}, {"truncation", false}, {"shift", false}});
    add("eval", "theta_deriv", {{"N", true}, {"k", true}, {"truncation", false}, {"shift", false}});
    add("eval", "compose", {{"M", true}, {"K", true}});
    add("eval", "seminorm", {{"F", true}, {"M", true}, {"h", true}, {"phi", false}});

    add("classify", "membership", {{"F", true}, {"MM", true}, {"h", true}, {"phi", false}});

    for (const char* c : {"mg", "dc", "rai", "BR", "sc", "constant"})
      add("mcheck", c, {{"MM", true}});
    add("mcheck", "L", {{"MM", true}, {"h", false}});
    add("mcheck", "FdB", {{"MM", true}, {"fdb_horizon", false}});
    add("mcheck", "absorption", {{"phi", true}});
    return t;
  }();
  return table;
}

}  // namespace

const Signature* find_signature(const std::string& kw, const std::string& name) {
  for (const auto& s : signatures())
    if (s.keyword == kw && s.name == name) return &s;
  return nullptr;
}

std::vector<std::string> names_for(const std::string& kw) {
  std::vector<std::string> out;
  for (const auto& s : signatures())
    if (s.keyword == kw) out.push_back(s.name);
  return out;
}

// ---------------------------------------------------------------------------
// Errors

namespace {

std::string render(Pos p, const std::string& msg, const std::vector<std::string>& expected) {
  std::string s = std::to_string(p.line) + ":" + std::to_string(p.column) + ": " + msg;
  if (!expected.empty()) {
    s += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : "") + expected[i];
    s += ")";
  }
  return s;
}

}  // namespace

SourceError::SourceError(Pos p, const std::string& msg, std::vector<std::string> exp)
    : Error("parse-error", render(p, msg, exp)), pos(p), message(msg), expected(std::move(exp)) {}

// ---------------------------------------------------------------------------
// Lexer + parser

namespace {

const std::set<std::string> kBindKw = {"seq", "exp", "matrix", "omega"};
const std::set<std::string> kQueryKw = {"check", "compare", "eval", "classify", "mcheck"};
const std::set<std::string> kOptKw = {"horizon", "grid", "flavor"};

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  Pos pos;
  std::size_t offset = 0;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Number: return "number " + t.text;
    case Tok::Ident: return "'" + t.text + "'";
    case Tok::Punct: return "'" + t.text + "'";
  }
  return "?";
}

class Parser {
 public:
  Parser(const std::string& src, std::set<std::string>* prods) : src_(src), prods_(prods) {
    advance();
  }

  Program program() {
    hit("program");
    Program p;
    while (cur_.kind != Tok::End) p.stmts.push_back(stmt());
    return p;
  }

 private:
  const std::string& src_;
  std::set<std::string>* prods_;
  std::size_t i_ = 0;
  Pos pos_{1, 1};
  Token cur_;
  std::size_t prev_end_ = 0;
  std::set<std::string> bound_;

  void hit(const char* name) {
    if (prods_) prods_->insert(name);
  }

  char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }
  void bump() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_space() {
    for (;;) {
      while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(peek()))) bump();
      if (peek() == '#') {
        hit("comment");
        while (i_ < src_.size() && peek() != '\n') bump();
        continue;
      }
      break;
    }
  }

  void advance() {
    prev_end_ = i_;
    skip_space();
    Token t;
    t.pos = pos_;
    t.offset = i_;
    if (i_ >= src_.size()) {
      cur_ = t;
      return;
    }
    const char c = peek();
    auto digitish = [](char x) { return std::isdigit(static_cast<unsigned char>(x)) || x == '.'; };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') bump();
      t.kind = Tok::Ident;
    } else if (digitish(c) || ((c == '-' || c == '+') && digitish(peek(1)))) {
      if (c == '-' || c == '+') bump();
      while (digitish(peek())) bump();
      if (peek() == 'e' || peek() == 'E') {
        const char s = peek(1);
        const bool sign = s == '+' || s == '-';
        if (std::isdigit(static_cast<unsigned char>(sign ? peek(2) : s))) {
          bump();
          if (sign) bump();
          while (std::isdigit(static_cast<unsigned char>(peek()))) bump();
        }
      }
      t.kind = Tok::Number;
      std::string text = src_.substr(t.offset, i_ - t.offset);
      const char* b = text.c_str();
      if (*b == '+') ++b;
      auto [ptr, ec] = std::from_chars(b, text.c_str() + text.size(), t.number);
      if (ec != std::errc() || ptr != text.c_str() + text.size())
        throw SourceError(t.pos, "malformed number '" + text + "'");
    } else if (std::string("()[],=;").find(c) != std::string::npos) {
      bump();
      t.kind = Tok::Punct;
    } else {
      throw SourceError(t.pos, std::string("unexpected character '") + c + "'");
    }
    t.text = src_.substr(t.offset, i_ - t.offset);
    cur_ = t;
  }

  bool is_punct(const char* p) const { return cur_.kind == Tok::Punct && cur_.text == p; }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) {
    throw SourceError(cur_.pos, msg, std::move(expected));
  }

  void expect_punct(const char* p) {
    if (!is_punct(p)) fail("unexpected " + describe(cur_), {std::string("'") + p + "'"});
    advance();
  }

  std::string expect_ident(const char* what) {
    if (cur_.kind != Tok::Ident) fail("unexpected " + describe(cur_), {what});
    std::string s = cur_.text;
    advance();
    return s;
  }

  Stmt stmt() {
    Stmt s;
    s.pos = cur_.pos;
    const std::size_t start = cur_.offset;
    if (cur_.kind != Tok::Ident || (!kBindKw.count(cur_.text) && !kQueryKw.count(cur_.text))) {
      std::vector<std::string> exp(kBindKw.begin(), kBindKw.end());
      exp.insert(exp.end(), kQueryKw.begin(), kQueryKw.end());
      fail("unexpected " + describe(cur_), exp);
    }
    s.keyword = cur_.text;
    advance();
    if (kBindKw.count(s.keyword)) {
      hit("stmt_binding");
      const Pos name_pos = cur_.pos;
      std::string name = expect_ident("name");
      if (kBindKw.count(name) || kQueryKw.count(name) || kOptKw.count(name))
        throw SourceError(name_pos, "'" + name + "' is a reserved word");
      if (bound_.count(name)) throw SourceError(name_pos, "name '" + name + "' is already bound");
      s.target = name;
      expect_punct("=");
      s.call = call();
      validate(s.keyword, s.call);
    } else {
      hit("stmt_query");
      s.call = call();
      validate(s.keyword, s.call);
      opts(s);
    }
    if (!is_punct(";")) {
      std::vector<std::string> exp = {"';'"};
      if (!s.target) exp = {"'horizon'", "'grid'", "'flavor'", "';'"};
      fail("unexpected " + describe(cur_), exp);
    }
    const std::size_t end = cur_.offset + 1;
    advance();
    s.source = src_.substr(start, end - start);
    if (s.target) bound_.insert(*s.target);
    return s;
  }

  Call call() {
    hit("call");
    Call c;
    c.pos = cur_.pos;
    c.name = expect_ident("operation name");
    expect_punct("(");
    if (!is_punct(")")) {
      c.args.push_back(arg());
      while (is_punct(",")) {
        advance();
        c.args.push_back(arg());
      }
    }
    if (!is_punct(")")) fail("unexpected " + describe(cur_), {"','", "')'"});
    advance();
    return c;
  }

  Arg arg() {
    Arg a;
    if (cur_.kind == Tok::Ident) {
      // IDENT '=' value, or a bare IDENT value: one token of lookahead past
      // the identifier decides.
      const Token id = cur_;
      advance();
      if (is_punct("=")) {
        hit("arg_named");
        advance();
        a.name = id.text;
        a.value = value();
        return a;
      }
      hit("arg_positional");
      hit("value_ident");
      a.value = ident_value(id);
      return a;
    }
    hit("arg_positional");
    a.value = value();
    return a;
  }

  Value ident_value(const Token& id) {
    if (!bound_.count(id.text)) throw SourceError(id.pos, "unbound name '" + id.text + "'");
    Value v;
    v.kind = Value::Kind::Ident;
    v.ident = id.text;
    v.pos = id.pos;
    return v;
  }

  Value value() {
    Value v;
    v.pos = cur_.pos;
    if (cur_.kind == Tok::Number) {
      hit("value_number");
      v.kind = Value::Kind::Number;
      v.number = cur_.number;
      advance();
      return v;
    }
    if (cur_.kind == Tok::Ident) {
      hit("value_ident");
      const Token id = cur_;
      advance();
      return ident_value(id);
    }
    if (is_punct("[")) {
      hit("value_list");
      advance();
      v.kind = Value::Kind::List;
      v.list.push_back(value());
      while (is_punct(",")) {
        advance();
        v.list.push_back(value());
      }
      if (!is_punct("]")) fail("unexpected " + describe(cur_), {"','", "']'"});
      advance();
      return v;
    }
    fail("unexpected " + describe(cur_), {"number", "name", "'['"});
  }

  void opts(Stmt& s) {
    while (cur_.kind == Tok::Ident && kOptKw.count(cur_.text)) {
      Option o;
      const std::string kw = cur_.text;
      advance();
      o.value.pos = cur_.pos;
      if (kw == "horizon") {
        hit("opt_horizon");
        o.kind = Option::Kind::Horizon;
        if (cur_.kind != Tok::Number) fail("unexpected " + describe(cur_), {"number"});
        o.value.number = cur_.number;
        advance();
      } else if (kw == "grid") {
        hit("opt_grid");
        o.kind = Option::Kind::Grid;
        if (!is_punct("[")) fail("unexpected " + describe(cur_), {"'['"});
        o.value = value();
        for (const auto& e : o.value.list)
          if (e.kind != Value::Kind::Number) throw SourceError(e.pos, "grid entries must be numbers");
      } else {
        hit("opt_flavor");
        o.kind = Option::Kind::Flavor;
        o.value.kind = Value::Kind::Ident;
        const Pos fp = cur_.pos;
        o.value.ident = expect_ident("'roumieu' or 'beurling'");
        if (o.value.ident != "roumieu" && o.value.ident != "beurling")
          throw SourceError(fp, "unknown flavor '" + o.value.ident + "'", {"'roumieu'", "'beurling'"});
      }
      s.opts.push_back(std::move(o));
    }
  }

  void validate(const std::string& kw, const Call& c) {
    const Signature* sig = find_signature(kw, c.name);
    if (!sig) {
      std::vector<std::string> exp;
      for (const auto& n : names_for(kw)) exp.push_back("'" + n + "'");
      throw SourceError(c.pos, "unknown " + kw + " operation '" + c.name + "'", exp);
    }
    std::vector<bool> filled(sig->params.size(), false);
    std::size_t next = 0;
    bool named_seen = false;
    for (const auto& a : c.args) {
      std::size_t idx;
      if (a.name) {
        named_seen = true;
        auto it = std::find_if(sig->params.begin(), sig->params.end(),
                               [&](const Param& p) { return p.name == *a.name; });
        if (it == sig->params.end())
          throw SourceError(a.value.pos, c.name + ": unknown argument '" + *a.name + "'");
        idx = static_cast<std::size_t>(it - sig->params.begin());
      } else {
        if (named_seen)
          throw SourceError(a.value.pos, c.name + ": positional argument after named argument");
        if (next >= sig->params.size())
          throw SourceError(a.value.pos, c.name + ": too many arguments");
        idx = next++;
      }
      if (filled[idx])
        throw SourceError(a.value.pos, c.name + ": duplicate argument '" + sig->params[idx].name + "'");
      filled[idx] = true;
    }
    for (std::size_t i = 0; i < sig->params.size(); ++i)
      if (sig->params[i].required && !filled[i])
        throw SourceError(c.pos, c.name + ": missing required argument '" + sig->params[i].name + "'");
  }
};

void print_value(std::string& out, const Value& v) {
  switch (v.kind) {
    case Value::Kind::Number: out += shortest(v.number); break;
    case Value::Kind::Ident: out += v.ident; break;
    case Value::Kind::List:
      out += "[";
      for (std::size_t i = 0; i < v.list.size(); ++i) {
        if (i) out += ", ";
        print_value(out, v.list[i]);
      }
      out += "]";
      break;
  }
}

bool same_value(const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::Number: return a.number == b.number;
    case Value::Kind::Ident: return a.ident == b.ident;
    case Value::Kind::List:
      if (a.list.size() != b.list.size()) return false;
      for (std::size_t i = 0; i < a.list.size(); ++i)
        if (!same_value(a.list[i], b.list[i])) return false;
      return true;
  }
  return false;
}

}  // namespace

Program parse(const std::string& text) { return Parser(text, nullptr).program(); }

std::vector<std::string> productions_used(const std::string& text) {
  std::set<std::string> s;
  Parser(text, &s).program();
  return {s.begin(), s.end()};
}

std::string print(const Stmt& s) {
  std::string out = s.keyword + " ";
  if (s.target) out += *s.target + " = ";
  out += s.call.name + "(";
  for (std::size_t i = 0; i < s.call.args.size(); ++i) {
    if (i) out += ", ";
    const Arg& a = s.call.args[i];
    if (a.name) out += *a.name + "=";
    print_value(out, a.value);
  }
  out += ")";
  for (const auto& o : s.opts) {
    switch (o.kind) {
      case Option::Kind::Horizon: out += " horizon " + shortest(o.value.number); break;
      case Option::Kind::Grid: out += " grid "; print_value(out, o.value); break;
      case Option::Kind::Flavor: out += " flavor " + o.value.ident; break;
    }
  }
  return out + ";";
}

std::string print(const Program& p) {
  std::string out;
  for (const auto& s : p.stmts) out += print(s) + "\n";
  return out;
}

bool same(const Program& a, const Program& b) {
  if (a.stmts.size() != b.stmts.size()) return false;
  for (std::size_t i = 0; i < a.stmts.size(); ++i) {
    const Stmt& x = a.stmts[i];
    const Stmt& y = b.stmts[i];
    if (x.keyword != y.keyword || x.target != y.target || x.call.name != y.call.name) return false;
    if (x.call.args.size() != y.call.args.size() || x.opts.size() != y.opts.size()) return false;
    for (std::size_t k = 0; k < x.call.args.size(); ++k) {
      if (x.call.args[k].name != y.call.args[k].name) return false;
      if (!same_value(x.call.args[k].value, y.call.args[k].value)) return false;
    }
    for (std::size_t k = 0; k < x.opts.size(); ++k) {
      if (x.opts[k].kind != y.opts[k].kind) return false;
      const Value& u = x.opts[k].value;
      const Value& v = y.opts[k].value;
      if (x.opts[k].kind == Option::Kind::Horizon ? u.number != v.number : !same_value(u, v))
        return false;
    }
  }
  return true;
}

}  // namespace wcalc::dsl
