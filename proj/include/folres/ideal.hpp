#pragma once

#include <memory>
#include <vector>

#include "folres/monomial.hpp"
#include "folres/polynomial.hpp"

namespace folres {

/// Reduced Groebner basis of a polynomial ideal under a fixed monomial order.
struct GroebnerBasis {
  std::size_t nvars = 0;
  MonomialOrder order = MonomialOrder::grevlex();
  std::vector<Polynomial> elements;

  bool is_zero_ideal() const { return elements.empty(); }
};

GroebnerBasis groebner(std::size_t nvars, const std::vector<Polynomial>& gens, const MonomialOrder& ord);

/// Remainder of multivariate division by G; zero iff f lies in the ideal.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G);

/// Every S-polynomial of G reduces to zero modulo G.
bool verify_groebner(const GroebnerBasis& G);

/// Ideal given by a finite generator list. Zero generators are dropped. The
/// Groebner basis is computed lazily and cached; copies share the cache.
class Ideal {
 public:
  Ideal() : Ideal(0, {}) {}
  Ideal(std::size_t nvars, std::vector<Polynomial> gens);

  static Ideal unit(std::size_t nvars) { return Ideal(nvars, {Polynomial(nvars, 1)}); }
  static Ideal zero(std::size_t nvars) { return Ideal(nvars, {}); }
  /// (x_i - p_i)_i, the maximal ideal of a rational point.
  static Ideal maximal(const Point& p);
  /// Ideal generated by the listed coordinate variables.
  static Ideal coordinate(std::size_t nvars, const std::vector<std::size_t>& vars);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  /// Cached reduced basis; the default order is grevlex.
  const GroebnerBasis& basis(const MonomialOrder& ord = MonomialOrder::grevlex()) const;

  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;
  bool is_unit() const;
  bool is_zero() const { return gens_.empty(); }

  /// Sum and product are plain generator constructions.
  Ideal operator+(const Ideal& other) const;
  Ideal operator*(const Ideal& other) const;
  Ideal times(const Polynomial& f) const;

  /// Same ideal presented by its reduced grevlex basis.
  Ideal canonical() const;

 private:
  struct Cache;

  std::size_t nvars_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

bool ideal_equal(const Ideal& a, const Ideal& b);

/// (I : J) = {f : f J in I}, via intersections with an auxiliary variable.
Ideal ideal_quotient(const Ideal& I, const Ideal& J);

/// f lies in the localization of I at the rational point p, i.e. (I : f)
/// contains an element not vanishing at p.
bool locally_contains(const Ideal& I, const Polynomial& f, const Point& p);
bool locally_contains(const Ideal& I, const Ideal& J, const Point& p);
bool locally_equal(const Ideal& a, const Ideal& b, const Point& p);

/// I cap J, eliminating t from t I + (1 - t) J.
Ideal ideal_intersection(const Ideal& I, const Ideal& J);

/// Elimination ideal I cap Q[x_k, ..., x_{n-1}], returned in n variables.
Ideal eliminate_leading(const Ideal& I, std::size_t k);

}  // namespace folres
