#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace folres {

/// Power product x^a over a fixed number of variables. Stored densely; a zero
/// entry means the variable is absent.
class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t i, Exponent power = 1);

  std::size_t nvars() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<Exponent>& exponents() const { return exps_; }

  std::uint64_t degree() const;
  bool is_one() const;

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// this / other; caller guarantees other divides this.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) = default;

 private:
  std::vector<Exponent> exps_;
};

/// Admissible monomial orders. compare() returns <0, 0, >0.
class MonomialOrder {
 public:
  enum class Kind { kGrevlex, kLex, kBlockElimination };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::kGrevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::kLex, 0); }
  /// First `block` variables eliminated: any monomial involving them is larger
  /// than every monomial free of them. Grevlex within each block.
  static MonomialOrder elimination(std::size_t block) {
    return MonomialOrder(Kind::kBlockElimination, block);
  }

  Kind kind() const { return kind_; }
  std::size_t block() const { return block_; }

  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string name() const;

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) = default;

 private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}

  Kind kind_;
  std::size_t block_;
};

int grevlex_compare(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end);

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grevlex_compare(a, b, 0, a.nvars()) > 0;
  }
};

}  // namespace folres
