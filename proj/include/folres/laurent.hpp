#pragma once

#include <vector>

#include "folres/monomial.hpp"
#include "folres/polynomial.hpp"

namespace folres {

/// numerator / x^pole, with poles allowed only on variables flagged
/// exceptional. Canonical: no pole variable divides the numerator, and the
/// zero element has no poles.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(Polynomial numerator, std::vector<bool> exceptional);
  LaurentPolynomial(Polynomial numerator, Monomial pole, std::vector<bool> exceptional);

  std::size_t nvars() const { return numerator_.nvars(); }
  const Polynomial& numerator() const { return numerator_; }
  const Monomial& pole() const { return pole_; }
  const std::vector<bool>& exceptional() const { return exceptional_; }
  Monomial::Exponent pole_order(std::size_t i) const { return pole_[i]; }

  bool is_zero() const { return numerator_.is_zero(); }
  bool is_polynomial() const { return pole_.is_one(); }
  /// Throws NotDivisible when a pole remains.
  Polynomial to_polynomial() const;
  /// m * this, required to clear every pole.
  Polynomial cleared_by(const Monomial& m) const;

  LaurentPolynomial operator-() const;
  friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a + (-b); }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(const Polynomial& a, const LaurentPolynomial& b);
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.numerator_ == b.numerator_ && a.pole_ == b.pole_;
  }

 private:
  void canonicalize();

  Polynomial numerator_;
  Monomial pole_;
  std::vector<bool> exceptional_;
};

}  // namespace folres
