#pragma once

#include <functional>
#include <vector>

#include "folres/monomial.hpp"
#include "folres/polynomial.hpp"
#include "folres/rational.hpp"

// Buchberger kernel shared by polynomial ideals (rank 1) and submodules of
// free modules R^r. Module terms carry a component index; the module order is
// position-over-term (a smaller component index is larger), which makes the
// projection onto leading components well behaved for lifting and syzygies.
namespace folres::gb {

struct Term {
  std::size_t comp;
  Monomial mono;
  Rational coeff;
};

/// Terms sorted strictly descending under a TermOrder, no zero coefficients.
using Vec = std::vector<Term>;

class TermOrder {
 public:
  explicit TermOrder(MonomialOrder mono) : mono_(mono) {}

  const MonomialOrder& monomial_order() const { return mono_; }
  int compare(std::size_t ca, const Monomial& a, std::size_t cb, const Monomial& b) const {
    if (ca != cb) return ca < cb ? 1 : -1;
    return mono_.compare(a, b);
  }
  int compare(const Term& a, const Term& b) const { return compare(a.comp, a.mono, b.comp, b.mono); }

 private:
  MonomialOrder mono_;
};

Vec from_polynomial(const Polynomial& f, std::size_t comp, const TermOrder& ord);
Vec from_components(const std::vector<Polynomial>& v, const TermOrder& ord);
Polynomial to_polynomial(const Vec& v, std::size_t nvars);
std::vector<Polynomial> to_components(const Vec& v, std::size_t rank, std::size_t nvars);

/// f - c * m * g.
Vec sub_mul(const Vec& f, const Rational& c, const Monomial& m, const Vec& g, const TermOrder& ord);

/// Full reduction of f modulo G (every term reduced, not only the leading one).
Vec reduce(const Vec& f, const std::vector<Vec>& basis, const TermOrder& ord);

Vec s_polynomial(const Vec& f, const Vec& g, const TermOrder& ord);

struct Options {
  /// Coprime-leading-monomial skipping; only sound for ideals.
  bool product_criterion = true;
};

/// Reduced, monic Groebner basis of the submodule generated by gens, elements
/// sorted by descending leading term. Pair selection uses the sugar strategy.
std::vector<Vec> reduced_basis(std::vector<Vec> gens, const TermOrder& ord, Options opts = {});

/// Buchberger certificate: every S-polynomial reduces to zero modulo basis.
bool is_groebner(const std::vector<Vec>& basis, const TermOrder& ord);

/// Test instrumentation: called with every basis reduced_basis produces.
using Observer = std::function<void(const std::vector<Vec>&, const TermOrder&)>;
void set_observer(Observer obs);

}  // namespace folres::gb
