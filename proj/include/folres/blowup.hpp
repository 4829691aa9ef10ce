#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folres/admissibility.hpp"
#include "folres/derivation.hpp"
#include "folres/ideal.hpp"
#include "folres/text.hpp"

namespace folres {

/// V(x_i : i in variables) in current coordinates.
struct BlowupCenter {
  std::vector<std::size_t> variables;
  /// Affine change applied before the blowup, kept for the record.
  std::optional<CoordinateChange> preparatory;

  Ideal ideal(std::size_t nvars) const { return Ideal::coordinate(nvars, variables); }
};

/// Standard chart x_j -> x_c x_j (j in the center, j != c); x_c is exceptional.
class ChartMap {
 public:
  ChartMap(std::size_t nvars, std::vector<std::size_t> center, std::size_t chart_variable);

  std::size_t nvars() const { return nvars_; }
  const std::vector<std::size_t>& center() const { return center_; }
  std::size_t chart_variable() const { return chart_; }
  bool in_center(std::size_t i) const;
  /// Old coordinates as polynomials in the chart coordinates.
  const std::vector<Polynomial>& images() const { return images_; }
  std::vector<bool> exceptional_flags() const;
  Polynomial exceptional_equation() const { return Polynomial::variable(nvars_, chart_); }

  Polynomial pullback(const Polynomial& f) const;
  Ideal pullback(const Ideal& i) const;

 private:
  std::size_t nvars_;
  std::vector<std::size_t> center_;
  std::size_t chart_;
  std::vector<Polynomial> images_;
};

/// Throws PreconditionFailed when c is not a center variable.
ChartMap blowup_chart(std::size_t nvars, const BlowupCenter& center, std::size_t c);

Ideal total_transform_ideal(const Ideal& i, const ChartMap& m);
/// Total transform divided once by the exceptional equation; throws
/// OrderOneViolation unless every generator lies in the center ideal.
Ideal controlled_transform_ideal(const Ideal& i, const ChartMap& m);

/// Unique Laurent field X* with X*(m^* f) = m^*(X f).
LaurentDerivation pullback_derivation(const Derivation& x, const ChartMap& m);

struct DivisorRecord {
  /// "initial" or "exceptional step k".
  std::string origin;
  /// Coordinate whose vanishing defines the divisor in this chart, if any.
  std::optional<std::size_t> variable;

  friend bool operator==(const DivisorRecord&, const DivisorRecord&) = default;
};

using DivisorLedger = std::vector<DivisorRecord>;

/// Strict transforms of old records followed by the new exceptional divisor.
DivisorLedger push_ledger(const DivisorLedger& ledger, const ChartMap& m, std::size_t step);
/// A record stays a coordinate record when its variable maps to a multiple
/// of a single new coordinate.
DivisorLedger push_ledger(const DivisorLedger& ledger, const CoordinateChange& change);

/// theta' from {x_c Y*} and {Z*}; split == nullptr means an invariant center
/// (every pullback analytic). Throws ConsistencyFailure on a Z pole or a
/// generator not tangent to a coordinate divisor of `ledger`.
DistributionGens adapted_strict_transform(const DistributionGens& theta, const TransverseSplit* split,
                                          const ChartMap& m, const DivisorLedger& ledger);

/// Fields W = (1/x_c) sum f_i Y_i from relations f of the Y_i = x_c * input_i
/// restricted to x_c = 0, keeping those outside the span of the Y_i, the
/// analytic inputs and earlier W.
std::vector<Derivation> strict_closure_syzygies(const std::vector<LaurentDerivation>& gens, const ChartMap& m);

struct FoliatedChart {
  VarNames names;
  DistributionGens theta;
  Ideal ideal;
  DivisorLedger ledger;
};

struct TowerStep {
  std::optional<ChartMap> blowup;
  std::optional<CoordinateChange> change;
};

/// Append-only sequence of charts; extending returns a new tower.
class Tower {
 public:
  explicit Tower(FoliatedChart initial);

  const std::vector<FoliatedChart>& charts() const { return charts_; }
  const std::vector<TowerStep>& steps() const { return steps_; }
  const FoliatedChart& current() const { return charts_.back(); }
  std::size_t blowup_count() const;

  Tower extended(TowerStep step, FoliatedChart next) const;

  /// f given in the coordinates of chart `from`, pulled to the current chart.
  Polynomial pull_to_current(const Polynomial& f, std::size_t from = 0) const;
  Ideal pull_to_current(const Ideal& i, std::size_t from = 0) const;

 private:
  std::vector<FoliatedChart> charts_;
  std::vector<TowerStep> steps_;
};

/// Exponents of the current coordinates in prod_k (pulled exceptional)^alpha.
/// Negative alpha stays a formal record.
struct KSheaf {
  long alpha = 0;
  std::vector<long> exponents;

  /// Throws PreconditionFailed for negative exponents.
  Monomial monomial() const;
  Ideal ideal() const;
};

/// Throws PreconditionFailed when a pulled exceptional equation is not a
/// monomial (after a non-diagonal change).
KSheaf k_sheaf(const Tower& t, long alpha);

enum class TransformMode { kInvariant, kSplit, kCandidate };

std::string to_string(TransformMode mode);

struct BlowupResult {
  ChartMap map;
  AdmissibilityReport admissibility;
  std::optional<TransverseSplit> split;
  std::string split_diagnosis;
  TransformMode mode = TransformMode::kCandidate;
  Ideal total;
  Ideal controlled;
  std::vector<LaurentDerivation> pullbacks;
  /// Syzygy fields added to candidate modules.
  std::vector<Derivation> syzygy_fields;
  /// Per generator of the new distribution: tangent to every ledger divisor.
  std::vector<bool> tangent;
  FoliatedChart next;
};

/// One blowup of the current chart: admissibility, split, ideal and field
/// transforms, ledger update. Non-admissible centers give a candidate module.
BlowupResult blow_up(const FoliatedChart& chart, const BlowupCenter& center, std::size_t c, std::size_t step,
                     const VarNames& new_names);

/// Names with a prime appended.
VarNames primed(const VarNames& names);

struct FittingTransformCheck {
  bool holds = false;
  /// x_c^s m^*(Gamma_s(I) + I).
  Ideal pulled;
  /// x_c^s (Gamma_s(theta*, I*) + I*) from Laurent minors.
  Ideal transformed;
};

/// Compares both sides of the Fitting transform identity. I* uses the pulled
/// generators of I and m^*(a f_j) for each extra multiplier a.
FittingTransformCheck check_fitting_transform(const DistributionGens& theta, const Ideal& i, std::size_t s,
                                              const ChartMap& m, const std::vector<Polynomial>& multipliers = {});

struct ChainIdentityCheck {
  bool holds = true;
  /// Index j of the first failure.
  std::optional<std::size_t> failed_at;
};

/// H(theta_k, I_k, j) K_k(1) == sum_{i<=j} K_k(i) pulled H(theta_0, I_0, i) for j <= j_max.
ChainIdentityCheck check_chain_identity(const Tower& t, std::size_t j_max);

}  // namespace folres
