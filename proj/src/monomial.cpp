#include "folres/monomial.hpp"

#include <algorithm>
#include <string>

#include "folres/error.hpp"

namespace folres {

Monomial Monomial::variable(std::size_t nvars, std::size_t i, Exponent power) {
  if (i >= nvars) throw IndexOutOfRange("variable index " + std::to_string(i) + " out of range");
  Monomial m(nvars);
  m.exps_[i] = power;
  return m;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(r.exps_[i], other.exps_[i]);
  return r;
}

int grevlex_compare(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = begin; i < end; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  // Reverse lex: the monomial with the smaller exponent in the last differing
  // variable is larger.
  for (std::size_t i = end; i-- > begin;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::kGrevlex:
      return grevlex_compare(a, b, 0, a.nvars());
    case Kind::kLex:
      for (std::size_t i = 0; i < a.nvars(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case Kind::kBlockElimination: {
      const std::size_t k = std::min(block_, a.nvars());
      if (int c = grevlex_compare(a, b, 0, k); c != 0) return c;
      return grevlex_compare(a, b, k, a.nvars());
    }
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::kGrevlex:
      return "grevlex";
    case Kind::kLex:
      return "lex";
    case Kind::kBlockElimination:
      return "elim(" + std::to_string(block_) + ")";
  }
  return "?";
}

}  // namespace folres
