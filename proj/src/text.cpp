#include "folres/text.hpp"

#include <cctype>
#include <optional>

#include "folres/error.hpp"

namespace folres {

namespace {

const std::string& name_of(const VarNames& names, std::size_t i) {
  if (i >= names.size()) throw IndexOutOfRange("no name for variable " + std::to_string(i));
  return names[i];
}

// Coefficient-times-monomial text for |c|; sign handled by the caller.
std::string term_body(const Rational& abs_c, const Monomial& m, const VarNames& names) {
  if (m.is_one()) return to_string(abs_c);
  std::string mono = format_monomial(m, names);
  if (abs_c == 1) return mono;
  return to_string(abs_c) + "*" + mono;
}

}  // namespace

std::string format_monomial(const Monomial& m, const VarNames& names) {
  if (m.is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += name_of(names, i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

std::string format_polynomial(const Polynomial& f, const VarNames& names) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += term_body(a, m, names);
    first = false;
  }
  return out;
}

std::string format_derivation(const Derivation& x, const VarNames& names) {
  std::string out;
  for (std::size_t i = 0; i < x.nvars(); ++i) {
    const Polynomial& a = x.coefficient(i);
    if (a.is_zero()) continue;
    const std::string partial = "d/d" + name_of(names, i);
    bool neg = false;
    std::string body;
    if (a.size() == 1) {
      const auto& [m, c] = a.leading_term();
      neg = c < 0;
      Rational abs_c = neg ? Rational(-c) : c;
      if (m.is_one() && abs_c == 1)
        body = partial;
      else
        body = term_body(abs_c, m, names) + "*" + partial;
    } else {
      body = "(" + format_polynomial(a, names) + ")*" + partial;
    }
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += body;
  }
  return out.empty() ? "0" : out;
}

std::string format_laurent(const LaurentPolynomial& f, const VarNames& names) {
  if (f.is_polynomial()) return format_polynomial(f.numerator(), names);
  return "(" + format_polynomial(f.numerator(), names) + ")/(" + format_monomial(f.pole(), names) + ")";
}

std::string format_laurent_derivation(const LaurentDerivation& x, const VarNames& names) {
  std::string out;
  for (std::size_t i = 0; i < x.nvars(); ++i) {
    const LaurentPolynomial& a = x.coefficient(i);
    if (a.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + format_laurent(a, names) + ")*d/d" + name_of(names, i);
  }
  return out.empty() ? "0" : out;
}

std::string format_list(const std::vector<Polynomial>& fs, const VarNames& names) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_polynomial(fs[i], names);
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'')) return false;
  return true;
}

namespace {

enum class Tok { kNumber, kIdent, kDeriv, kPlus, kMinus, kStar, kCaret, kSlash, kLParen, kRParen, kComma, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::kNumber, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (c == 'd' && s.substr(i, 3) == "d/d" && i + 3 < s.size() && ident_start(s[i + 3])) {
      std::size_t j = i + 3;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::kDeriv, std::string(s.substr(i + 3, j - i - 3)), col});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::kPlus; break;
      case '-': k = Tok::kMinus; break;
      case '*': k = Tok::kStar; break;
      case '^': k = Tok::kCaret; break;
      case '/': k = Tok::kSlash; break;
      case '(': k = Tok::kLParen; break;
      case ')': k = Tok::kRParen; break;
      case ',': k = Tok::kComma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", 1, col);
    }
    out.push_back({k, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::kEnd, "", s.size() + 1});
  return out;
}

// A parsed expression is either a polynomial or a vector field.
struct Value {
  std::optional<Polynomial> poly;
  std::optional<Derivation> field;
};

class Parser {
 public:
  Parser(std::string_view text, const VarNames& names) : toks_(lex(text)), names_(names) {}

  std::vector<Value> list() {
    std::vector<Value> out{expr()};
    while (peek().kind == Tok::kComma) {
      next();
      out.push_back(expr());
    }
    expect(Tok::kEnd, "end of input");
    return out;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& what, const Token& at) const { throw ParseError(what, 1, at.column); }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what, peek());
    next();
  }

  std::size_t n() const { return names_.size(); }

  Value add(Value a, const Value& b, bool subtract, const Token& at) const {
    if (a.poly && b.poly) {
      *a.poly = subtract ? *a.poly - *b.poly : *a.poly + *b.poly;
      return a;
    }
    if (a.field && b.field) {
      *a.field = subtract ? *a.field - *b.field : *a.field + *b.field;
      return a;
    }
    fail("cannot add a polynomial and a vector field", at);
  }

  Value mul(const Value& a, const Value& b, const Token& at) const {
    if (a.poly && b.poly) return {*a.poly * *b.poly, std::nullopt};
    if (a.poly && b.field) return {std::nullopt, *a.poly * *b.field};
    if (a.field && b.poly) return {std::nullopt, *b.poly * *a.field};
    fail("cannot multiply two vector fields", at);
  }

  Value expr() {
    Value v;
    if (peek().kind == Tok::kMinus || peek().kind == Tok::kPlus) {
      bool neg = next().kind == Tok::kMinus;
      v = term();
      if (neg) v = negate(v);
    } else {
      v = term();
    }
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      const Token& op = next();
      v = add(std::move(v), term(), op.kind == Tok::kMinus, op);
    }
    return v;
  }

  Value negate(const Value& v) const {
    if (v.poly) return {-*v.poly, std::nullopt};
    return {std::nullopt, Rational(-1) * *v.field};
  }

  Value term() {
    Value v = factor();
    while (peek().kind == Tok::kStar || peek().kind == Tok::kSlash) {
      const Token& op = next();
      if (op.kind == Tok::kStar) {
        v = mul(v, factor(), op);
        continue;
      }
      const Token& at = peek();
      Value d = factor();
      if (!d.poly || !d.poly->is_constant() || d.poly->is_zero()) fail("division only by a nonzero constant", at);
      Rational inv = 1 / d.poly->constant_term();
      v = mul(v, Value{Polynomial(n(), inv), std::nullopt}, op);
    }
    return v;
  }

  Value factor() {
    if (peek().kind == Tok::kMinus) {
      next();
      return negate(factor());
    }
    Value b = base();
    if (peek().kind == Tok::kCaret) {
      const Token& op = next();
      const Token& e = peek();
      if (e.kind != Tok::kNumber) fail("expected an integer exponent", e);
      next();
      if (!b.poly) fail("cannot raise a vector field to a power", op);
      unsigned long exp = std::stoul(e.text);
      if (exp > 1000) fail("exponent too large", e);
      b.poly = b.poly->pow(static_cast<unsigned>(exp));
    }
    return b;
  }

  std::size_t lookup(const Token& t) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == t.text) return i;
    fail("undeclared identifier '" + t.text + "'", t);
  }

  Value base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kNumber:
        next();
        return {Polynomial(n(), parse_rational(t.text)), std::nullopt};
      case Tok::kIdent:
        next();
        return {Polynomial::variable(n(), lookup(t)), std::nullopt};
      case Tok::kDeriv: {
        next();
        Token as_ident{Tok::kIdent, t.text, t.column + 3};
        return {std::nullopt, Derivation::partial(n(), lookup(as_ident))};
      }
      case Tok::kLParen: {
        next();
        Value v = expr();
        expect(Tok::kRParen, "')'");
        return v;
      }
      default:
        fail(t.kind == Tok::kEnd ? "unexpected end of input" : "unexpected '" + t.text + "'", t);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const VarNames& names_;
};

std::vector<Value> parse_values(std::string_view text, const VarNames& names) {
  return Parser(text, names).list();
}

}  // namespace

std::vector<Polynomial> parse_polynomial_list(std::string_view text, const VarNames& names) {
  std::vector<Polynomial> out;
  for (auto& v : parse_values(text, names)) {
    if (!v.poly) throw ParseError("expected a polynomial, found a vector field", 1, 1);
    out.push_back(std::move(*v.poly));
  }
  return out;
}

Polynomial parse_polynomial(std::string_view text, const VarNames& names) {
  auto list = parse_polynomial_list(text, names);
  if (list.size() != 1) throw ParseError("expected a single polynomial", 1, 1);
  return list.front();
}

std::vector<Derivation> parse_derivation_list(std::string_view text, const VarNames& names) {
  std::vector<Derivation> out;
  for (auto& v : parse_values(text, names)) {
    if (v.field)
      out.push_back(std::move(*v.field));
    else if (v.poly->is_zero())
      out.push_back(Derivation::zero(names.size()));
    else
      throw ParseError("expected a vector field, found a polynomial", 1, 1);
  }
  return out;
}

Derivation parse_derivation(std::string_view text, const VarNames& names) {
  auto list = parse_derivation_list(text, names);
  if (list.size() != 1) throw ParseError("expected a single vector field", 1, 1);
  return list.front();
}

}  // namespace folres
