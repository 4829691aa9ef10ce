#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folres/ideal.hpp"
#include "folres/laurent.hpp"
#include "folres/linalg.hpp"
#include "folres/polynomial.hpp"

namespace folres {

/// Polynomial vector field sum_i A_i d/dx_i.
class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(std::vector<Polynomial> coeffs);

  static Derivation zero(std::size_t nvars);
  static Derivation partial(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return coeffs_.size(); }
  const Polynomial& coefficient(std::size_t i) const { return coeffs_.at(i); }
  const std::vector<Polynomial>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  /// Every coefficient vanishes at p.
  bool vanishes_at(const Point& p) const;

  Polynomial apply(const Polynomial& f) const;

  friend Derivation operator+(const Derivation& a, const Derivation& b);
  friend Derivation operator-(const Derivation& a, const Derivation& b);
  friend Derivation operator*(const Polynomial& f, const Derivation& x);
  friend Derivation operator*(const Rational& c, const Derivation& x);
  friend bool operator==(const Derivation& a, const Derivation& b) = default;

 private:
  std::vector<Polynomial> coeffs_;
};

Polynomial apply_derivation(const Derivation& x, const Polynomial& f);
Derivation lie_bracket(const Derivation& x, const Derivation& y);
/// X(x_i) lies in (x_i).
bool is_tangent_to_divisor(const Derivation& x, std::size_t i);

/// Vector field whose coefficients may have poles along exceptional variables.
class LaurentDerivation {
 public:
  LaurentDerivation() = default;
  explicit LaurentDerivation(std::vector<LaurentPolynomial> coeffs);
  /// Inclusion of polynomial fields.
  LaurentDerivation(const Derivation& x, const std::vector<bool>& exceptional);

  std::size_t nvars() const { return coeffs_.size(); }
  const LaurentPolynomial& coefficient(std::size_t i) const { return coeffs_.at(i); }
  const std::vector<LaurentPolynomial>& coefficients() const { return coeffs_; }

  Monomial::Exponent pole_order(std::size_t i) const;
  bool is_analytic() const;
  /// Throws NotDivisible when a pole remains.
  Derivation to_derivation() const;
  /// Smallest monomial m with m * this analytic.
  Monomial pole_monomial() const;
  Derivation cleared_by(const Monomial& m) const;

  LaurentPolynomial apply(const Polynomial& f) const;
  LaurentPolynomial apply(const LaurentPolynomial& f) const;

  friend bool operator==(const LaurentDerivation& a, const LaurentDerivation& b) = default;

 private:
  std::vector<LaurentPolynomial> coeffs_;
};

/// Generators of a singular distribution together with its leaf dimension d.
struct DistributionGens {
  DistributionGens() = default;
  DistributionGens(std::vector<Derivation> gens, std::size_t dim);

  std::size_t nvars() const { return gens.front().nvars(); }
  std::vector<Derivation> gens;
  std::size_t dim = 0;
};

struct InvolutivityReport {
  bool involutive = true;
  /// For each checked pair (i, j): coefficients expressing [X_i, X_j].
  std::vector<std::vector<Polynomial>> certificates;
  std::optional<std::pair<std::size_t, std::size_t>> offending_pair;
  std::optional<Derivation> offending_bracket;
};

InvolutivityReport check_involutive(const DistributionGens& theta);

/// Module membership of a field in the polynomial span of theta.
bool in_span(const DistributionGens& theta, const Derivation& x);

enum class CoefficientRing { kZ, kQ };

std::string to_string(CoefficientRing r);

struct MonomialBasisReport {
  bool ok = true;
  std::optional<std::size_t> generator;
  std::optional<std::size_t> variable;
  std::string reason;
};

/// Each generator is d/dx_i or sum_j a_j x_j d/dx_j with a_j in the ring, and
/// diagonal generators do not involve coordinates whose partial is present.
/// `names` only affects the wording of the reason.
MonomialBasisReport check_monomial_basis(const DistributionGens& theta, CoefficientRing ring,
                                         const std::vector<std::string>* names = nullptr);

/// Degree <= 1 truncation: constant column and the matrix with entry (i, j)
/// equal to the coefficient of x_j in A_i.
struct LinearPart {
  linalg::Row constant;
  linalg::Matrix linear;
};

LinearPart linear_part(const Derivation& x);

/// Affine change of coordinates new = M * old + t.
class CoordinateChange {
 public:
  static CoordinateChange identity(std::size_t n);
  static CoordinateChange affine(linalg::Matrix m, Point t);
  /// new = old - p, so that p becomes the origin.
  static CoordinateChange translation(const Point& p);

  std::size_t nvars() const { return matrix_.size(); }
  const linalg::Matrix& matrix() const { return matrix_; }
  const Point& translation() const { return shift_; }
  bool is_identity() const;

  /// New coordinates as polynomials in the old ones.
  const std::vector<Polynomial>& forward() const { return forward_; }
  /// Old coordinates as polynomials in the new ones.
  const std::vector<Polynomial>& inverse() const { return inverse_; }

  /// f written in the new coordinates.
  Polynomial to_new(const Polynomial& f) const;
  /// g (in new coordinates) written in the old ones.
  Polynomial to_old(const Polynomial& g) const;
  Derivation to_new(const Derivation& x) const;
  DistributionGens to_new(const DistributionGens& theta) const;
  Ideal to_new(const Ideal& i) const;

  /// this after other: old -> other -> this.
  CoordinateChange after(const CoordinateChange& other) const;

 private:
  CoordinateChange(linalg::Matrix m, Point t);

  linalg::Matrix matrix_;
  Point shift_;
  std::vector<Polynomial> forward_;
  std::vector<Polynomial> inverse_;
};

struct MonomializeResult {
  std::optional<CoordinateChange> change;
  /// The generators in the new coordinates, possibly rescaled by constants.
  std::optional<DistributionGens> transformed;
  std::string diagnosis;
};

/// Searches for an affine-linear change after which check_monomial_basis
/// passes. Absence is a result: the diagnosis names the obstruction.
MonomializeResult monomialize_linear(const DistributionGens& theta, CoefficientRing ring);

DistributionGens translate_to_point(const DistributionGens& theta, const Point& p);

}  // namespace folres
