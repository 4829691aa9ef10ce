#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folres/derivation.hpp"
#include "folres/ideal.hpp"

namespace folres {

enum class MinorRelation { kUnit, kContained, kNeither };

std::string to_string(MinorRelation r);

struct AdmissibilityRecord {
  std::size_t k = 0;
  Ideal minors;
  MinorRelation relation = MinorRelation::kNeither;
};

struct AdmissibilityReport {
  bool admissible = false;
  /// Largest k with (minors_j + I_C) the unit ideal for every j <= k.
  std::size_t d0 = 0;
  std::vector<AdmissibilityRecord> records;
  /// First offending minor when not admissible.
  std::optional<Polynomial> witness;
  std::optional<std::size_t> witness_k;
};

/// Per k <= d: minors + I_C unit, minors inside I_C, or neither. Admissible
/// iff every k above d0 is contained. Reducedness and regularity of I_C are
/// the caller's responsibility.
AdmissibilityReport admissibility_report(const DistributionGens& theta, const Ideal& center);

struct TransverseSplit {
  /// d0 generators whose minor against `functions` is a unit along the center.
  std::vector<Derivation> transverse;
  /// Remaining generators corrected to annihilate every transverse function.
  std::vector<Derivation> invariant;
  /// Center generators that become the transverse coordinates.
  std::vector<Polynomial> functions;
  /// New coordinates containing the transverse functions.
  CoordinateChange change = CoordinateChange::identity(0);
};

struct SplitOutcome {
  std::optional<TransverseSplit> split;
  std::string diagnosis;
};

/// Transverse/invariant decomposition along an admissible center. Failure
/// distinguishes "not admissible" from a normalization that would need a
/// nonlinear change.
SplitOutcome transverse_split(const DistributionGens& theta, const Ideal& center, const AdmissibilityReport& report);

/// Generators h of I with X(h) = 0 for every coordinate partial X of theta
/// and X(h) = K h (K rational) for every diagonal X. theta must pass
/// check_monomial_basis over Q and I must be theta-invariant. Works with
/// germs at the origin: invariance and the output are checked there.
std::vector<Polynomial> invariant_generators(const DistributionGens& theta, const Ideal& i);

/// Adjugate of a square polynomial matrix.
std::vector<std::vector<Polynomial>> adjugate(const std::vector<std::vector<Polynomial>>& m);

}  // namespace folres
