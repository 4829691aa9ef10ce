#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folres/derivation.hpp"
#include "folres/ideal.hpp"

namespace folres {

/// Determinant by cofactor expansion; T needs +, -, * and a zero value.
template <typename T>
T determinant(const std::vector<std::vector<T>>& m, const T& zero) {
  const std::size_t n = m.size();
  if (n == 0) return zero;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  T total = zero;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<T>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      sub.push_back(std::move(row));
    }
    T term = m[0][c] * determinant(sub, zero);
    total = c % 2 == 0 ? total + term : total - term;
  }
  return total;
}

/// All k-element subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

/// Ideal of all k x k minors of [X_i(f_j)] over the generators of theta and I.
Ideal fitting_ideal(const DistributionGens& theta, const Ideal& i, std::size_t k);

/// theta[I] lies in I, tested on generators.
bool is_invariant(const DistributionGens& theta, const Ideal& i);

/// fitting_ideal(theta, I, d) + I is the unit ideal (decided along V(I)).
bool is_totally_transverse(const DistributionGens& theta, const Ideal& i);

/// Regularity test: fitting_ideal(theta, m_p, d) + m_p is the unit ideal.
bool regular_at(const DistributionGens& theta, const Point& p);

struct TangencyChain {
  /// H_0, H_1, ...; each stored by its reduced grevlex basis.
  std::vector<Ideal> ideals;
  std::size_t stabilization_index = 0;
  bool stabilized = false;
};

TangencyChain tangency_chain(const DistributionGens& theta, const Ideal& i, std::size_t max_steps = 32);

struct TgInvariant {
  std::size_t nu = 0;
  int type = 1;
};

/// Throws NotStabilized for an unstabilized chain.
TgInvariant tg_invariant_at_point(const TangencyChain& chain, const Point& p);

/// Smallest theta-invariant ideal containing I; throws NotStabilized when the
/// chain does not settle within max_steps.
Ideal differential_closure(const DistributionGens& theta, const Ideal& i, std::size_t max_steps = 32);

struct MonomialityAnalysis {
  bool monomial = false;
  /// "regular", "basis" or "linear-change"; empty when inconclusive.
  std::string method;
  std::string diagnosis;
  std::optional<CoordinateChange> change;
  std::optional<DistributionGens> transformed;
};

/// R-monomiality at p: a distribution regular at p is monomial there; else
/// the generators (translated to p) must be a monomial basis up to an affine
/// linear change. A negative answer is inconclusive, not a refutation.
MonomialityAnalysis analyze_monomiality(const DistributionGens& theta, CoefficientRing ring, const Point& p,
                                        const std::vector<std::string>* names = nullptr);

}  // namespace folres
