#include "folres/session.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "folres/error.hpp"
#include "folres/fitting.hpp"

namespace folres::session {

using Json = nlohmann::ordered_json;

const Value* Statement::param(std::string_view key) const {
  for (const auto& p : params)
    if (p.key == key) return &p.value;
  return nullptr;
}

namespace {

// ---- lexing -----------------------------------------------------------------

enum class Tok { kWord, kString, kEquals, kSep, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-' || c == '.' || c == '/';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    i += k;
    col += k;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      out.push_back({Tok::kSep, "\n", line, col});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (c == ';') {
      out.push_back({Tok::kSep, ";", line, col});
      advance(1);
      continue;
    }
    if (c == '=') {
      out.push_back({Tok::kEquals, "=", line, col});
      advance(1);
      continue;
    }
    if (c == '"') {
      const std::size_t start_col = col;
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"') throw ParseError("unterminated string", line, start_col);
      out.push_back({Tok::kString, std::string(text.substr(i + 1, j - i - 1)), line, start_col});
      advance(j + 1 - i);
      continue;
    }
    if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      out.push_back({Tok::kWord, std::string(text.substr(i, j - i)), line, col});
      advance(j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

std::vector<Statement> parse_statements(const std::vector<Token>& toks) {
  std::vector<Statement> out;
  std::size_t p = 0;
  while (toks[p].kind != Tok::kEnd) {
    if (toks[p].kind == Tok::kSep) {
      ++p;
      continue;
    }
    const Token& kw = toks[p];
    if (kw.kind != Tok::kWord) throw ParseError("expected a statement keyword", kw.line, kw.column);
    Statement st;
    st.keyword = kw.text;
    st.line = kw.line;
    st.column = kw.column;
    ++p;
    while (toks[p].kind != Tok::kSep && toks[p].kind != Tok::kEnd) {
      const Token& t = toks[p];
      if (t.kind == Tok::kEquals) throw ParseError("unexpected '='", t.line, t.column);
      if (t.kind == Tok::kWord && toks[p + 1].kind == Tok::kEquals) {
        const Token& v = toks[p + 2];
        if (v.kind != Tok::kWord && v.kind != Tok::kString)
          throw ParseError("expected a value after '" + t.text + "='", v.line, v.column);
        if (st.param(t.text)) throw ParseError("duplicate parameter '" + t.text + "'", t.line, t.column);
        st.params.push_back({t.text, Value{v.text, v.kind == Tok::kString, v.line, v.column}});
        p += 3;
        continue;
      }
      st.args.push_back(Value{t.text, t.kind == Tok::kString, t.line, t.column});
      ++p;
    }
    out.push_back(std::move(st));
  }
  return out;
}

// ---- value helpers ----------------------------------------------------------

[[noreturn]] void fail_at(const std::string& what, std::size_t line, std::size_t column) {
  throw ParseError(what, line, column);
}

[[noreturn]] void fail_at(const std::string& what, const Value& v) { fail_at(what, v.line, v.column); }

// Runs f, moving parse errors inside a string value to file positions.
template <typename F>
auto inside(const Value& v, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(e.what(), v.line, v.column + (v.quoted ? 1 : 0) + e.column() - 1);
  }
}

std::vector<Polynomial> polynomials(const Value& v, const VarNames& names) {
  if (std::all_of(v.text.begin(), v.text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
    return {};
  return inside(v, [&] { return parse_polynomial_list(v.text, names); });
}

std::vector<std::size_t> variable_list(const Value& v, const VarNames& names) {
  std::vector<std::size_t> out;
  for (const auto& f : polynomials(v, names)) {
    bool ok = f.is_monomial() && f.degree() == 1 && f.leading_term().second == 1;
    if (!ok) fail_at("expected a list of variables", v);
    const Monomial& m = f.leading_term().first;
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m[i] == 1) out.push_back(i);
  }
  return out;
}

VarNames name_list(const Value& v, std::size_t n) {
  VarNames out;
  std::stringstream ss(v.text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    std::string name = b == std::string::npos ? "" : item.substr(b, e - b + 1);
    if (!is_identifier(name)) fail_at("invalid variable name '" + name + "'", v);
    if (std::find(out.begin(), out.end(), name) != out.end()) fail_at("repeated variable name '" + name + "'", v);
    out.push_back(name);
  }
  if (out.size() != n) fail_at("dimension mismatch: expected " + std::to_string(n) + " names", v);
  return out;
}

Point point_value(const Value& v, const VarNames& names) {
  Point p;
  for (const auto& f : polynomials(v, names)) {
    if (!f.is_constant()) fail_at("point coordinates must be constants", v);
    p.push_back(f.constant_term());
  }
  if (p.size() != names.size()) fail_at("dimension mismatch: point needs " + std::to_string(names.size()) + " coordinates", v);
  return p;
}

bool bool_value(const Value& v) {
  if (v.text == "true") return true;
  if (v.text == "false") return false;
  fail_at("expected true or false", v);
}

CoefficientRing ring_value(const Value& v) {
  if (v.text == "Z") return CoefficientRing::kZ;
  if (v.text == "Q") return CoefficientRing::kQ;
  fail_at("expected ring Z or Q", v);
}

std::size_t count_value(const Value& v) {
  if (v.quoted || v.text.empty() || !std::all_of(v.text.begin(), v.text.end(), ::isdigit) || v.text.size() > 6)
    fail_at("expected a natural number", v);
  return static_cast<std::size_t>(std::stoul(v.text));
}

CoordinateChange change_value(const Value& v, const VarNames& names) {
  auto fs = polynomials(v, names);
  const std::size_t n = names.size();
  if (fs.size() != n) fail_at("dimension mismatch: change needs " + std::to_string(n) + " coordinates", v);
  linalg::Matrix m = linalg::zeros(n, n);
  Point t(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    if (fs[k].degree() > 1) fail_at("coordinate change must be affine", v);
    t[k] = fs[k].constant_term();
    for (std::size_t j = 0; j < n; ++j) m[k][j] = fs[k].coefficient(Monomial::variable(n, j));
  }
  try {
    return CoordinateChange::affine(std::move(m), std::move(t));
  } catch (const PreconditionFailed&) {
    fail_at("coordinate change is not invertible", v);
  }
}

// ---- scope ------------------------------------------------------------------

struct Spec {
  std::vector<std::string> params;
};

const std::vector<std::pair<std::string, Spec>>& statement_specs() {
  static const std::vector<std::pair<std::string, Spec>> specs{
      {"space", {{}}},
      {"distribution", {{"dim"}}},
      {"ideal", {{}}},
      {"divisors", {{}}},
      {"check-admissible", {{"center", "expect"}}},
      {"blowup", {{"center", "chart", "names", "preview", "expect-admissible", "expect-diagnosis"}}},
      {"linear-change", {{"apply", "names"}}},
      {"assert-monomial", {{"ring", "at", "expect", "diagnosis"}}},
      {"assert-invariant", {{"expect"}}},
      {"assert-unit", {{"expect"}}},
      {"chain", {{"at", "max-steps"}}},
      {"report", {{}}},
      {"suggest-center", {{}}},
  };
  return specs;
}

bool is_declaration(const std::string& k) {
  return k == "space" || k == "distribution" || k == "ideal" || k == "divisors";
}

void expect_args(const Statement& st, std::size_t n) {
  if (st.args.size() != n)
    fail_at("'" + st.keyword + "' takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"), st.line, st.column);
}

const Value& required(const Statement& st, const char* key) {
  const Value* v = st.param(key);
  if (!v) fail_at("'" + st.keyword + "' needs " + key + "=", st.line, st.column);
  return *v;
}

struct SpaceDecl {
  VarNames names;
  CoefficientRing ring;
};

SpaceDecl space_of(const Statement& st) {
  // space <n> vars <names...> ring <R>
  const auto& a = st.args;
  if (a.size() < 4 || a[1].text != "vars" || a[a.size() - 2].text != "ring")
    fail_at("expected: space <n> vars <names> ring Z|Q", st.line, st.column);
  const std::size_t n = count_value(a[0]);
  SpaceDecl d;
  for (std::size_t i = 2; i + 2 < a.size(); ++i) {
    if (a[i].quoted || !is_identifier(a[i].text)) fail_at("invalid variable name '" + a[i].text + "'", a[i]);
    if (std::find(d.names.begin(), d.names.end(), a[i].text) != d.names.end())
      fail_at("repeated variable name '" + a[i].text + "'", a[i]);
    d.names.push_back(a[i].text);
  }
  if (n == 0 || d.names.size() != n) fail_at("dimension mismatch: " + std::to_string(n) + " declared, " + std::to_string(d.names.size()) + " named", a[0]);
  d.ring = ring_value(a.back());
  return d;
}

const Value& gens_arg(const Statement& st) {
  // <kind> <name> gens "<list>"
  if (st.args.size() != 3 || st.args[1].text != "gens" || !st.args[2].quoted)
    fail_at("expected: " + st.keyword + " <name> gens \"...\"", st.line, st.column);
  if (!is_identifier(st.args[0].text)) fail_at("invalid name", st.args[0]);
  return st.args[2];
}

// Tracks names through the script so that later references are checked.
class Scope {
 public:
  void check(const Statement& st) {
    auto spec = std::find_if(statement_specs().begin(), statement_specs().end(), [&](const auto& p) { return p.first == st.keyword; });
    if (spec == statement_specs().end()) fail_at("unknown statement '" + st.keyword + "'", st.line, st.column);
    for (const auto& p : st.params)
      if (std::find(spec->second.params.begin(), spec->second.params.end(), p.key) == spec->second.params.end())
        fail_at("unknown parameter '" + p.key + "' for '" + st.keyword + "'", p.value.line, p.value.column);

    const std::string& k = st.keyword;
    if (k == "space") {
      if (names_) fail_at("space declared twice", st.line, st.column);
      names_ = space_of(st).names;
      return;
    }
    if (!names_) fail_at("'" + k + "' before space declaration", st.line, st.column);
    const VarNames& names = *names_;
    if (is_declaration(k) && operations_) fail_at("declarations must precede operations", st.line, st.column);
    if (k == "distribution") {
      if (dist_) fail_at("distribution declared twice", st.line, st.column);
      const Value& g = gens_arg(st);
      auto gens = inside(g, [&] { return parse_derivation_list(g.text, names); });
      if (const Value* d = st.param("dim")) {
        std::size_t dim = count_value(*d);
        if (dim == 0 || dim > names.size()) fail_at("dimension mismatch: dim must lie in 1.." + std::to_string(names.size()), *d);
      } else if (gens.size() > names.size()) {
        fail_at("dim= required when generators outnumber variables", st.line, st.column);
      }
      dist_ = true;
      return;
    }
    if (k == "ideal") {
      if (ideal_) fail_at("ideal declared twice", st.line, st.column);
      polynomials(gens_arg(st), names);
      ideal_ = true;
      return;
    }
    if (k == "divisors") {
      expect_args(st, 1);
      if (!st.args[0].quoted) fail_at("expected a quoted variable list", st.args[0]);
      variable_list(st.args[0], names);
      return;
    }
    if (!dist_ || !ideal_) fail_at("'" + k + "' needs a distribution and an ideal", st.line, st.column);
    operations_ = true;
    if (k == "check-admissible") {
      expect_args(st, 0);
      if (variable_list(required(st, "center"), names).empty()) fail_at("empty center", required(st, "center"));
      if (const Value* e = st.param("expect")) bool_value(*e);
    } else if (k == "blowup") {
      expect_args(st, 0);
      const Value& cv = required(st, "center");
      auto center = variable_list(cv, names);
      if (center.empty()) fail_at("empty center", cv);
      const Value& chart = required(st, "chart");
      auto c = variable_list(chart, names);
      if (c.size() != 1) fail_at("chart= names one variable", chart);
      if (std::find(center.begin(), center.end(), c[0]) == center.end()) fail_at("chart variable is not in the center", chart);
      bool preview = st.param("preview") && bool_value(*st.param("preview"));
      if (const Value* e = st.param("expect-admissible")) bool_value(*e);
      VarNames next = st.param("names") ? name_list(*st.param("names"), names.size()) : primed(names);
      if (!preview) names_ = next;
    } else if (k == "linear-change") {
      expect_args(st, 1);
      change_value(st.args[0], names);
      bool apply = st.param("apply") && bool_value(*st.param("apply"));
      VarNames next = st.param("names") ? name_list(*st.param("names"), names.size()) : names;
      if (apply) names_ = next;
    } else if (k == "assert-monomial") {
      expect_args(st, 0);
      if (const Value* r = st.param("ring")) ring_value(*r);
      if (const Value* a = st.param("at")) point_value(*a, names);
      if (const Value* e = st.param("expect")) bool_value(*e);
    } else if (k == "assert-invariant" || k == "assert-unit") {
      expect_args(st, 0);
      if (const Value* e = st.param("expect")) bool_value(*e);
    } else if (k == "chain") {
      expect_args(st, 0);
      if (const Value* a = st.param("at")) point_value(*a, names);
      if (const Value* m = st.param("max-steps")) {
        if (count_value(*m) == 0) fail_at("max-steps must be positive", *m);
      }
    } else {
      expect_args(st, 0);
    }
  }

 private:
  std::optional<VarNames> names_;
  bool dist_ = false;
  bool ideal_ = false;
  bool operations_ = false;
};

std::string quote_if(const Value& v) { return v.quoted ? "\"" + v.text + "\"" : v.text; }

}  // namespace

Script parse_session(std::string_view text) {
  Script s;
  s.statements = parse_statements(lex(text));
  Scope scope;
  for (const auto& st : s.statements) scope.check(st);
  return s;
}

std::string print_statement(const Statement& s) {
  std::string out = s.keyword;
  for (const auto& a : s.args) out += " " + quote_if(a);
  for (const auto& p : s.params) out += " " + p.key + "=" + quote_if(p.value);
  return out;
}

std::string print_session(const Script& s) {
  std::string out;
  for (const auto& st : s.statements) out += print_statement(st) + "\n";
  return out;
}

// ---- running ----------------------------------------------------------------

namespace {

Json poly_list(const std::vector<Polynomial>& fs, const VarNames& names) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(format_polynomial(f, names));
  return a;
}

Json field_list(const std::vector<Derivation>& xs, const VarNames& names) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(format_derivation(x, names));
  return a;
}

Json name_array(const std::vector<std::size_t>& vars, const VarNames& names) {
  Json a = Json::array();
  for (auto v : vars) a.push_back(names[v]);
  return a;
}

Json point_json(const Point& p) {
  Json a = Json::array();
  for (const auto& c : p) a.push_back(to_string(c));
  return a;
}

Json ledger_json(const DivisorLedger& l, const VarNames& names) {
  Json a = Json::array();
  for (const auto& r : l) {
    Json o;
    o["origin"] = r.origin;
    o["variable"] = r.variable ? Json(names[*r.variable]) : Json(nullptr);
    a.push_back(std::move(o));
  }
  return a;
}

Json admissibility_json(const AdmissibilityReport& r, const VarNames& names) {
  Json o;
  o["admissible"] = r.admissible;
  o["d0"] = r.d0;
  Json recs = Json::array();
  for (const auto& rec : r.records) {
    Json e;
    e["k"] = rec.k;
    e["minors"] = poly_list(rec.minors.generators(), names);
    e["relation"] = to_string(rec.relation);
    recs.push_back(std::move(e));
  }
  o["records"] = std::move(recs);
  o["witness"] = r.witness ? Json(format_polynomial(*r.witness, names)) : Json(nullptr);
  o["witness_k"] = r.witness_k ? Json(*r.witness_k) : Json(nullptr);
  return o;
}

Json split_json(const std::optional<TransverseSplit>& s, const std::string& diagnosis, const VarNames& names) {
  Json o;
  o["diagnosis"] = diagnosis;
  if (s) {
    o["transverse"] = field_list(s->transverse, names);
    o["invariant"] = field_list(s->invariant, names);
    o["functions"] = poly_list(s->functions, names);
    o["change"] = poly_list(s->change.forward(), names);
  }
  return o;
}

Json monomiality_json(const MonomialityAnalysis& m, const VarNames& names) {
  Json o;
  o["monomial"] = m.monomial;
  o["method"] = m.method;
  o["diagnosis"] = m.diagnosis;
  if (m.change) o["change"] = poly_list(m.change->forward(), names);
  if (m.transformed) o["transformed"] = field_list(m.transformed->gens, names);
  return o;
}

Json tg_json(const DistributionGens& theta, const Ideal& i, const Point& p, std::size_t max_steps) {
  auto chain = tangency_chain(theta, i, max_steps);
  Json o;
  o["stabilized"] = chain.stabilized;
  if (chain.stabilized) {
    auto tg = tg_invariant_at_point(chain, p);
    o["stabilization_index"] = chain.stabilization_index;
    o["nu"] = tg.nu;
    o["type"] = tg.type;
  }
  return o;
}

std::string verdict_of(bool ok) { return ok ? "pass" : "fail"; }

class Runner {
 public:
  SessionResult run(const Script& script) {
    SessionResult res;
    for (std::size_t i = 0; i < script.statements.size(); ++i) {
      const Statement& st = script.statements[i];
      StepReport rep;
      rep.index = i;
      rep.statement = print_statement(st);
      try {
        execute(st, rep);
      } catch (const std::exception& e) {
        rep.verdict = "error";
        rep.outputs = Json::object();
        rep.outputs["error"] = e.what();
        rep.outputs["line"] = st.line;
        rep.outputs["column"] = st.column;
        res.error = "line " + std::to_string(st.line) + ": " + e.what();
        res.asserts_passed = false;
        res.steps.push_back(std::move(rep));
        break;
      }
      if (rep.verdict == "fail") res.asserts_passed = false;
      res.steps.push_back(std::move(rep));
    }
    return res;
  }

 private:
  const FoliatedChart& chart() {
    if (!tower_) tower_.emplace(initial_);
    return tower_->current();
  }

  void execute(const Statement& st, StepReport& rep) {
    const std::string& k = st.keyword;
    if (k == "space") {
      auto d = space_of(st);
      ring_ = d.ring;
      initial_.names = d.names;
      rep.inputs["dimension"] = d.names.size();
      rep.inputs["variables"] = d.names;
      rep.inputs["ring"] = to_string(d.ring);
    } else if (k == "distribution") {
      const auto& names = initial_.names;
      auto gens = parse_derivation_list(st.args[2].text, names);
      std::size_t dim = st.param("dim") ? count_value(*st.param("dim")) : gens.size();
      initial_.theta = DistributionGens(gens, dim);
      rep.inputs["name"] = st.args[0].text;
      rep.inputs["generators"] = field_list(gens, names);
      rep.inputs["dim"] = dim;
      auto inv = check_involutive(initial_.theta);
      rep.outputs["involutive"] = inv.involutive;
      if (!inv.involutive) throw PreconditionFailed("distribution is not involutive");
    } else if (k == "ideal") {
      const auto& names = initial_.names;
      initial_.ideal = Ideal(names.size(), polynomials(st.args[2], names));
      rep.inputs["name"] = st.args[0].text;
      rep.inputs["generators"] = poly_list(initial_.ideal.generators(), names);
      rep.outputs["basis"] = poly_list(initial_.ideal.basis().elements, names);
    } else if (k == "divisors") {
      const auto& names = initial_.names;
      auto vars = variable_list(st.args[0], names);
      initial_.ledger.clear();
      Json tangent = Json::array();
      for (auto v : vars) {
        initial_.ledger.push_back({"initial", v});
        bool ok = std::all_of(initial_.theta.gens.begin(), initial_.theta.gens.end(),
                              [&](const Derivation& x) { return is_tangent_to_divisor(x, v); });
        tangent.push_back(ok);
        if (!ok) rep.flags.push_back("distribution not tangent to " + names[v]);
      }
      rep.inputs["variables"] = name_array(vars, names);
      rep.outputs["tangent"] = std::move(tangent);
    } else if (k == "check-admissible") {
      check_admissible(st, rep);
    } else if (k == "blowup") {
      blowup(st, rep);
    } else if (k == "linear-change") {
      linear_change(st, rep);
    } else if (k == "assert-monomial") {
      const auto& c = chart();
      CoefficientRing ring = st.param("ring") ? ring_value(*st.param("ring")) : ring_;
      Point p = st.param("at") ? point_value(*st.param("at"), c.names) : origin(c.names.size());
      auto m = analyze_monomiality(c.theta, ring, p, &c.names);
      rep.inputs["generators"] = field_list(c.theta.gens, c.names);
      rep.inputs["ring"] = to_string(ring);
      rep.inputs["at"] = point_json(p);
      rep.outputs = monomiality_json(m, c.names);
      bool expect = !st.param("expect") || bool_value(*st.param("expect"));
      bool ok = m.monomial == expect;
      if (const Value* d = st.param("diagnosis")) ok = ok && m.diagnosis == d->text;
      rep.verdict = verdict_of(ok);
      if (!m.monomial) rep.flags.push_back("linear-monomializable: inconclusive");
    } else if (k == "assert-invariant") {
      const auto& c = chart();
      rep.inputs["generators"] = field_list(c.theta.gens, c.names);
      rep.inputs["ideal"] = poly_list(c.ideal.generators(), c.names);
      bool inv = true;
      for (const auto& x : c.theta.gens)
        for (const auto& f : c.ideal.generators())
          if (inv && !c.ideal.contains(x.apply(f))) {
            inv = false;
            rep.outputs["offending"] = format_polynomial(x.apply(f), c.names);
          }
      rep.outputs["invariant"] = inv;
      bool expect = !st.param("expect") || bool_value(*st.param("expect"));
      rep.verdict = verdict_of(inv == expect);
      rep.flags.push_back("chart-global");
    } else if (k == "assert-unit") {
      const auto& c = chart();
      rep.inputs["ideal"] = poly_list(c.ideal.generators(), c.names);
      bool unit = c.ideal.is_unit();
      rep.outputs["unit"] = unit;
      bool expect = !st.param("expect") || bool_value(*st.param("expect"));
      rep.verdict = verdict_of(unit == expect);
    } else if (k == "chain") {
      const auto& c = chart();
      Point p = st.param("at") ? point_value(*st.param("at"), c.names) : origin(c.names.size());
      std::size_t max_steps = st.param("max-steps") ? count_value(*st.param("max-steps")) : 32;
      auto chain = tangency_chain(c.theta, c.ideal, max_steps);
      rep.inputs["at"] = point_json(p);
      Json ideals = Json::array();
      for (const auto& h : chain.ideals) ideals.push_back(poly_list(h.generators(), c.names));
      rep.outputs["ideals"] = std::move(ideals);
      rep.outputs["stabilized"] = chain.stabilized;
      if (chain.stabilized) {
        auto tg = tg_invariant_at_point(chain, p);
        rep.outputs["stabilization_index"] = chain.stabilization_index;
        rep.outputs["nu"] = tg.nu;
        rep.outputs["type"] = tg.type;
      } else {
        rep.flags.push_back("not stabilized");
      }
    } else if (k == "report") {
      const auto& c = chart();
      rep.outputs["variables"] = c.names;
      rep.outputs["distribution"] = field_list(c.theta.gens, c.names);
      rep.outputs["dim"] = c.theta.dim;
      rep.outputs["ideal"] = poly_list(c.ideal.generators(), c.names);
      rep.outputs["basis"] = poly_list(c.ideal.basis().elements, c.names);
      rep.outputs["divisors"] = ledger_json(c.ledger, c.names);
      rep.outputs["blowups"] = tower_->blowup_count();
      rep.outputs["tg"] = tg_json(c.theta, c.ideal, origin(c.names.size()), 32);
    } else if (k == "suggest-center") {
      const auto& c = chart();
      auto s = suggest_center(c.ideal, c.theta);
      rep.outputs["center"] = s.center ? name_array(s.center->variables, c.names) : Json(nullptr);
      rep.outputs["reason"] = s.reason;
    }
  }

  void check_admissible(const Statement& st, StepReport& rep) {
    const auto& c = chart();
    auto vars = variable_list(*st.param("center"), c.names);
    Ideal ic = Ideal::coordinate(c.names.size(), vars);
    auto r = admissibility_report(c.theta, ic);
    rep.inputs["center"] = name_array(vars, c.names);
    rep.inputs["generators"] = field_list(c.theta.gens, c.names);
    rep.outputs = admissibility_json(r, c.names);
    if (r.admissible) {
      auto s = transverse_split(c.theta, ic, r);
      rep.outputs["split"] = split_json(s.split, s.diagnosis, c.names);
    }
    if (const Value* e = st.param("expect")) rep.verdict = verdict_of(r.admissible == bool_value(*e));
    rep.flags.push_back("chart-global");
  }

  void blowup(const Statement& st, StepReport& rep) {
    const FoliatedChart c = chart();
    auto vars = variable_list(*st.param("center"), c.names);
    std::size_t cv = variable_list(*st.param("chart"), c.names).front();
    bool preview = st.param("preview") && bool_value(*st.param("preview"));
    VarNames next_names = st.param("names") ? name_list(*st.param("names"), c.names.size()) : primed(c.names);
    const std::size_t step = tower_->blowup_count() + 1;
    BlowupCenter center{vars, std::nullopt};
    auto r = blow_up(c, center, cv, step, next_names);
    const VarNames& nn = next_names;

    rep.inputs["center"] = name_array(vars, c.names);
    rep.inputs["chart"] = c.names[cv];
    rep.inputs["preview"] = preview;
    Json& o = rep.outputs;
    o["admissibility"] = admissibility_json(r.admissibility, c.names);
    o["split"] = split_json(r.split, r.split_diagnosis, c.names);
    o["mode"] = to_string(r.mode);
    Json map = Json::object();
    for (std::size_t j = 0; j < c.names.size(); ++j) map[c.names[j]] = format_polynomial(r.map.images()[j], nn);
    o["map"] = std::move(map);
    o["total"] = poly_list(r.total.generators(), nn);
    o["controlled"] = poly_list(r.controlled.generators(), nn);
    o["controlled_unit"] = r.controlled.is_unit();
    Json pulls = Json::array();
    for (const auto& p : r.pullbacks) pulls.push_back(format_laurent_derivation(p, nn));
    o["pullbacks"] = std::move(pulls);
    o["transformed"] = field_list(r.next.theta.gens, nn);
    o["syzygy_fields"] = field_list(r.syzygy_fields, nn);
    o["tangent"] = r.tangent;
    o["divisors"] = ledger_json(r.next.ledger, nn);
    auto mono = analyze_monomiality(r.next.theta, ring_, origin(nn.size()), &nn);
    o["monomiality"] = monomiality_json(mono, nn);
    o["tg"] = tg_json(r.next.theta, r.next.ideal, origin(nn.size()), 32);

    if (r.mode == TransformMode::kCandidate) rep.flags.push_back("candidate module");
    if (!mono.monomial) rep.flags.push_back("linear-monomializable: inconclusive");
    rep.flags.push_back("chart-global");
    if (preview) rep.flags.push_back("preview");

    std::optional<bool> ok;
    if (const Value* e = st.param("expect-admissible")) ok = r.admissibility.admissible == bool_value(*e);
    if (const Value* d = st.param("expect-diagnosis")) ok = ok.value_or(true) && mono.diagnosis == d->text;
    if (ok) rep.verdict = verdict_of(*ok);

    if (!preview) tower_ = tower_->extended(TowerStep{r.map, std::nullopt}, r.next);
  }

  void linear_change(const Statement& st, StepReport& rep) {
    const FoliatedChart c = chart();
    CoordinateChange change = change_value(st.args[0], c.names);
    bool apply = st.param("apply") && bool_value(*st.param("apply"));
    VarNames nn = st.param("names") ? name_list(*st.param("names"), c.names.size()) : c.names;
    FoliatedChart next{nn, change.to_new(c.theta), change.to_new(c.ideal), push_ledger(c.ledger, change)};
    rep.inputs["forward"] = poly_list(change.forward(), c.names);
    rep.inputs["apply"] = apply;
    rep.outputs["transformed"] = field_list(next.theta.gens, nn);
    rep.outputs["ideal"] = poly_list(next.ideal.generators(), nn);
    auto basis = check_monomial_basis(next.theta, ring_, &nn);
    rep.outputs["monomial_basis"] = basis.ok;
    if (!basis.ok) rep.outputs["reason"] = basis.reason;
    if (!apply) rep.flags.push_back("view only");
    if (apply) tower_ = tower_->extended(TowerStep{std::nullopt, change}, std::move(next));
  }

  FoliatedChart initial_;
  CoefficientRing ring_ = CoefficientRing::kZ;
  std::optional<Tower> tower_;
};

}  // namespace

SessionResult run_session(const Script& script) { return Runner().run(script); }

Json to_json(const SessionResult& result) {
  Json a = Json::array();
  for (const auto& s : result.steps) {
    Json o;
    o["index"] = s.index;
    o["statement"] = s.statement;
    o["inputs"] = s.inputs;
    o["outputs"] = s.outputs;
    o["verdict"] = s.verdict;
    o["flags"] = s.flags;
    a.push_back(std::move(o));
  }
  return a;
}

namespace {

void render_value(std::string& out, const std::string& indent, const std::string& key, const Json& v) {
  if (v.is_object()) {
    out += indent + key + ":\n";
    for (const auto& [k, x] : v.items()) render_value(out, indent + "  ", k, x);
    return;
  }
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_string(); })) {
    std::string line;
    for (const auto& x : v) line += (line.empty() ? "" : "; ") + x.get<std::string>();
    out += indent + key + ": [" + line + "]\n";
    return;
  }
  if (v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& x) { return x.is_object(); })) {
    out += indent + key + ":\n";
    for (std::size_t i = 0; i < v.size(); ++i) render_value(out, indent + "  ", "- " + std::to_string(i), v[i]);
    return;
  }
  out += indent + key + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
}

}  // namespace

std::string render_text(const SessionResult& result) {
  std::string out;
  for (const auto& s : result.steps) {
    out += "[" + std::to_string(s.index) + "] " + s.statement + "\n";
    out += "  verdict: " + s.verdict + "\n";
    if (!s.flags.empty()) {
      std::string f;
      for (const auto& x : s.flags) f += (f.empty() ? "" : ", ") + x;
      out += "  flags: " + f + "\n";
    }
    for (const auto& [k, v] : s.inputs.items()) render_value(out, "  ", "in." + k, v);
    for (const auto& [k, v] : s.outputs.items()) render_value(out, "  ", k, v);
  }
  return out;
}

Suggestion suggest_center(const Ideal& i, const DistributionGens& theta) {
  const std::size_t n = i.nvars();
  Suggestion s;
  if (i.is_zero() || i.is_unit()) {
    s.reason = "ideal is zero or the unit ideal";
    return s;
  }
  std::vector<Monomial> gens;
  for (const auto& g : i.generators()) {
    if (!g.is_monomial()) {
      s.reason = "ideal is not monomial";
      return s;
    }
    gens.push_back(g.leading_term().first);
  }
  auto order_on = [&](const std::vector<std::size_t>& vars) {
    std::uint64_t best = UINT64_MAX;
    for (const auto& m : gens) {
      std::uint64_t d = 0;
      for (auto v : vars) d += m[v];
      best = std::min(best, d);
    }
    return best;
  };
  std::vector<std::size_t> all(n);
  for (std::size_t v = 0; v < n; ++v) all[v] = v;
  const std::uint64_t top = order_on(all);
  for (std::size_t k = 1; k <= n; ++k)
    for (const auto& vars : subsets(n, k)) {
      if (order_on(vars) != top) continue;
      if (!admissibility_report(theta, Ideal::coordinate(n, vars)).admissible) continue;
      s.center = BlowupCenter{vars, std::nullopt};
      s.reason = "order " + std::to_string(top) + " along the center";
      return s;
    }
  s.reason = "no admissible center of maximal order";
  return s;
}

}  // namespace folres::session
