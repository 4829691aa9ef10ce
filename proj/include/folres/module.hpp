#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "folres/polynomial.hpp"

namespace folres {

/// Element of the free module R^r, one polynomial per component.
using ModuleVector = std::vector<Polynomial>;

/// Submodule of R^rank given by generators. Groebner computations use the
/// position-over-term order on top of grevlex.
class Submodule {
 public:
  Submodule(std::size_t nvars, std::size_t rank, std::vector<ModuleVector> gens);

  std::size_t nvars() const { return nvars_; }
  std::size_t rank() const { return rank_; }
  const std::vector<ModuleVector>& generators() const { return gens_; }

  bool contains(const ModuleVector& v) const;
  /// Coefficients c with v = sum c_i gens_i, or nothing when v is outside.
  std::optional<std::vector<Polynomial>> express(const ModuleVector& v) const;
  /// Generators of the relation module {c : sum c_i gens_i = 0}.
  std::vector<std::vector<Polynomial>> syzygies() const;

 private:
  struct Cache;
  const std::vector<ModuleVector>& augmented_basis() const;

  std::size_t nvars_;
  std::size_t rank_;
  std::vector<ModuleVector> gens_;
  // Groebner basis of the augmented module {(g_i, e_i)}: the first `rank_`
  // components carry the element, the rest record how it was built.
  std::shared_ptr<Cache> cache_;
};

}  // namespace folres
