#include "folres/polynomial.hpp"

#include <algorithm>

#include "folres/error.hpp"

namespace folres {

void require_same_context(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars())
    throw DimensionMismatch("polynomials live in " + std::to_string(a.nvars()) + " and " +
                            std::to_string(b.nvars()) + " variables");
}

Polynomial::Polynomial(std::size_t nvars, const Rational& c) : nvars_(nvars) {
  if (c != 0) terms_.emplace(Monomial(nvars), c);
}

Polynomial::Polynomial(const Monomial& m, const Rational& c) : nvars_(m.nvars()) {
  if (c != 0) terms_.emplace(m, c);
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  return Polynomial(Monomial::variable(nvars, i), 1);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(nvars_)); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

long Polynomial::degree() const {
  long d = -1;
  for (const auto& [m, c] : terms_) d = std::max<long>(d, static_cast<long>(m.degree()));
  return d;
}

Monomial::Exponent Polynomial::degree_in(std::size_t i) const {
  Monomial::Exponent d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
  return d;
}

Monomial::Exponent Polynomial::valuation_in(std::size_t i) const {
  if (terms_.empty()) return 0;
  Monomial::Exponent v = terms_.begin()->first[i];
  for (const auto& [m, c] : terms_) v = std::min(v, m[i]);
  return v;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  if (m.nvars() != nvars_) throw DimensionMismatch("monomial has wrong number of variables");
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_context(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_context(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_context(a, b);
  Polynomial r(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
  Polynomial r(nvars_);
  if (c == 0) return r;
  // Multiplication by a monomial preserves every admissible order, so the
  // hinted insertion at the end stays sorted.
  for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(nvars_, 1);
  Polynomial base(*this);
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Rational Polynomial::evaluate(const Point& p) const {
  if (p.size() != nvars_)
    throw DimensionMismatch("point has " + std::to_string(p.size()) + " coordinates, polynomial has " +
                            std::to_string(nvars_) + " variables");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < nvars_ && v != 0; ++i)
      for (Monomial::Exponent k = 0; k < m[i]; ++k) v *= p[i];
    total += v;
  }
  return total;
}

Polynomial Polynomial::derive(std::size_t i) const {
  if (i >= nvars_) throw IndexOutOfRange("derivative index " + std::to_string(i) + " out of range");
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial dm(m);
    dm[i] -= 1;
    r.add_term(dm, c * m[i]);
  }
  return r;
}

namespace {

Polynomial substitute_impl(const Polynomial& f, const std::vector<const Polynomial*>& images,
                           std::size_t target) {
  // Cache powers of each image as they are needed.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, Monomial::Exponent e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * *images[i]);
    return cache[e];
  };
  Polynomial r(target);
  for (const auto& [m, c] : f.terms()) {
    Polynomial term(target, c);
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m[i] != 0) term = term * power(i, m[i]);
    r += term;
  }
  return r;
}

}  // namespace

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_)
    throw UnmappedVariable("substitution maps " + std::to_string(images.size()) + " of " +
                           std::to_string(nvars_) + " variables");
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  std::vector<const Polynomial*> ptrs;
  for (const auto& p : images) {
    if (p.nvars() != target) throw DimensionMismatch("substitution images disagree on variable count");
    ptrs.push_back(&p);
  }
  return substitute_impl(*this, ptrs, target);
}

Polynomial Polynomial::substitute(const std::map<std::size_t, Polynomial>& images,
                                  std::size_t target_nvars) const {
  std::vector<const Polynomial*> ptrs(nvars_, nullptr);
  for (const auto& [i, p] : images) {
    if (i >= nvars_) throw IndexOutOfRange("substitution for nonexistent variable");
    if (p.nvars() != target_nvars) throw DimensionMismatch("substitution image in wrong variable count");
    ptrs[i] = &p;
  }
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] != 0 && ptrs[i] == nullptr)
        throw UnmappedVariable("variable " + std::to_string(i) + " is not mapped");
  static const Polynomial kUnused;
  for (auto& p : ptrs)
    if (p == nullptr) p = &kUnused;
  return substitute_impl(*this, ptrs, target_nvars);
}

Polynomial Polynomial::exact_divide_by_variable(std::size_t i, Monomial::Exponent k) const {
  if (i >= nvars_) throw IndexOutOfRange("division variable out of range");
  return exact_divide_by_monomial(Monomial::variable(nvars_, i, k));
}

Polynomial Polynomial::exact_divide_by_monomial(const Monomial& m) const {
  if (m.nvars() != nvars_) throw DimensionMismatch("monomial has wrong number of variables");
  Polynomial r(nvars_);
  for (const auto& [mm, c] : terms_) {
    if (!m.divides(mm)) throw NotDivisible("term is not divisible by the requested monomial");
    r.terms_.emplace_hint(r.terms_.end(), mm / m, c);
  }
  return r;
}

Polynomial Polynomial::divide_exact(const Polynomial& g) const {
  require_same_context(*this, g);
  if (g.is_zero()) throw NotDivisible("division by the zero polynomial");
  // {g} is a Groebner basis of (g): if g | f the remainder is zero.
  const auto& [glm, glc] = g.leading_term();
  Polynomial rest(*this);
  Polynomial quotient(nvars_);
  while (!rest.is_zero()) {
    const auto& [lm, lc] = rest.leading_term();
    if (!glm.divides(lm)) throw NotDivisible("polynomial division leaves a remainder");
    Monomial qm = lm / glm;
    Rational qc = lc / glc;
    quotient.add_term(qm, qc);
    rest -= g.times_monomial(qm, qc);
  }
  return quotient;
}

Polynomial Polynomial::embed(std::size_t new_nvars, std::size_t offset) const {
  if (nvars_ + offset > new_nvars) throw DimensionMismatch("embedding does not fit");
  Polynomial r(new_nvars);
  for (const auto& [m, c] : terms_) {
    Monomial nm(new_nvars);
    for (std::size_t i = 0; i < nvars_; ++i) nm[i + offset] = m[i];
    r.add_term(nm, c);
  }
  return r;
}

Polynomial Polynomial::restrict_vars(std::size_t new_nvars, std::size_t offset) const {
  Polynomial r(new_nvars);
  for (const auto& [m, c] : terms_) {
    Monomial nm(new_nvars);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (i < offset || i - offset >= new_nvars)
        throw DimensionMismatch("polynomial uses a variable outside the restriction window");
      nm[i - offset] = m[i];
    }
    r.add_term(nm, c);
  }
  return r;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t i) const {
  if (i >= nvars_) throw IndexOutOfRange("variable out of range");
  std::vector<Polynomial> out(degree_in(i) + 1, Polynomial(nvars_));
  for (const auto& [m, c] : terms_) {
    Monomial rest(m);
    rest[i] = 0;
    out[m[i]].add_term(rest, c);
  }
  return out;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / terms_.begin()->second;
  return *this * inv;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  Integer den_lcm = 1;
  for (const auto& [m, c] : terms_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer content = 0;
  for (const auto& [m, c] : terms_) {
    Integer num = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
  }
  Rational scale(den_lcm, content);
  scale.canonicalize();
  if (terms_.begin()->second < 0) scale = -scale;
  return *this * scale;
}

}  // namespace folres
