#include "folres/laurent.hpp"

#include <algorithm>

#include "folres/error.hpp"

namespace folres {

LaurentPolynomial::LaurentPolynomial(Polynomial numerator, std::vector<bool> exceptional)
    : LaurentPolynomial(numerator, Monomial(numerator.nvars()), std::move(exceptional)) {}

LaurentPolynomial::LaurentPolynomial(Polynomial numerator, Monomial pole, std::vector<bool> exceptional)
    : numerator_(std::move(numerator)), pole_(std::move(pole)), exceptional_(std::move(exceptional)) {
  if (pole_.nvars() != numerator_.nvars() || exceptional_.size() != numerator_.nvars())
    throw DimensionMismatch("Laurent polynomial parts disagree on variable count");
  for (std::size_t i = 0; i < pole_.nvars(); ++i)
    if (pole_[i] != 0 && !exceptional_[i])
      throw PreconditionFailed("pole along a variable that is not exceptional");
  canonicalize();
}

void LaurentPolynomial::canonicalize() {
  if (numerator_.is_zero()) {
    pole_ = Monomial(numerator_.nvars());
    return;
  }
  Monomial common(numerator_.nvars());
  for (std::size_t i = 0; i < pole_.nvars(); ++i)
    common[i] = std::min(pole_[i], numerator_.valuation_in(i));
  if (common.is_one()) return;
  numerator_ = numerator_.exact_divide_by_monomial(common);
  pole_ = pole_ / common;
}

Polynomial LaurentPolynomial::to_polynomial() const {
  if (!is_polynomial()) throw NotDivisible("Laurent polynomial has a pole");
  return numerator_;
}

Polynomial LaurentPolynomial::cleared_by(const Monomial& m) const {
  if (!pole_.divides(m)) throw NotDivisible("monomial does not clear the poles");
  return numerator_.times_monomial(m / pole_, 1);
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r(*this);
  r.numerator_ = -numerator_;
  return r;
}

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  require_same_context(a.numerator_, b.numerator_);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Monomial l = a.pole_.lcm(b.pole_);
  Polynomial num = a.numerator_.times_monomial(l / a.pole_, 1) + b.numerator_.times_monomial(l / b.pole_, 1);
  std::vector<bool> ex = a.exceptional_;
  for (std::size_t i = 0; i < ex.size(); ++i) ex[i] = ex[i] || b.exceptional_[i];
  return LaurentPolynomial(std::move(num), std::move(l), std::move(ex));
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  require_same_context(a.numerator_, b.numerator_);
  std::vector<bool> ex = a.exceptional_;
  for (std::size_t i = 0; i < ex.size(); ++i) ex[i] = ex[i] || b.exceptional_[i];
  return LaurentPolynomial(a.numerator_ * b.numerator_, a.pole_ * b.pole_, std::move(ex));
}

LaurentPolynomial operator*(const Polynomial& a, const LaurentPolynomial& b) {
  return LaurentPolynomial(a * b.numerator_, b.pole_, b.exceptional_);
}

}  // namespace folres
