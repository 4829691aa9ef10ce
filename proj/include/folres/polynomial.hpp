#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "folres/monomial.hpp"
#include "folres/rational.hpp"

namespace folres {

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms are kept in grevlex-descending order with no zero coefficients, so
/// two equal polynomials always have identical term maps.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrevlexGreater>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, const Rational& c);
  Polynomial(const Monomial& m, const Rational& c);

  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial constant(std::size_t nvars, const Rational& c) { return Polynomial(nvars, c); }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// Coefficient of the monomial 1.
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  /// Total degree; -1 for the zero polynomial.
  long degree() const;
  /// Largest exponent of variable i appearing in any term.
  Monomial::Exponent degree_in(std::size_t i) const;
  /// Largest power of x_i dividing every term (0 for the zero polynomial).
  Monomial::Exponent valuation_in(std::size_t i) const;
  /// Leading term under grevlex.
  const std::pair<const Monomial, Rational>& leading_term() const { return *terms_.begin(); }

  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial times_monomial(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Rational evaluate(const Point& p) const;

  /// Formal partial derivative in variable i.
  Polynomial derive(std::size_t i) const;

  /// Composition with images[i] substituted for x_i. images must cover every
  /// variable; all images share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  /// Partial map form: variables of f absent from the map raise UnmappedVariable.
  Polynomial substitute(const std::map<std::size_t, Polynomial>& images,
                        std::size_t target_nvars) const;

  /// f / x_i^k when x_i^k divides every term; NotDivisible otherwise.
  Polynomial exact_divide_by_variable(std::size_t i, Monomial::Exponent k) const;
  Polynomial exact_divide_by_monomial(const Monomial& m) const;
  /// f / g when g divides f in the polynomial ring; NotDivisible otherwise.
  Polynomial divide_exact(const Polynomial& g) const;

  /// Same polynomial viewed in `new_nvars` variables with x_i renamed x_{i+offset}.
  Polynomial embed(std::size_t new_nvars, std::size_t offset) const;
  /// Inverse of embed: drops to `new_nvars` variables, x_i -> x_{i-offset};
  /// requires that no variable outside the window occurs.
  Polynomial restrict_vars(std::size_t new_nvars, std::size_t offset) const;

  /// Coefficients c_a with f = sum_a c_a x_i^a; c_a free of x_i.
  std::vector<Polynomial> coefficients_in(std::size_t i) const;

  /// Multiplies by a rational so that the leading (grevlex) coefficient is 1.
  Polynomial monic() const;
  /// Scales to integer coefficients with content 1 and positive leading coefficient.
  Polynomial primitive() const;

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

void require_same_context(const Polynomial& a, const Polynomial& b);

}  // namespace folres
