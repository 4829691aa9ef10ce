#include "folres/blowup.hpp"

#include <algorithm>

#include "folres/error.hpp"
#include "folres/fitting.hpp"
#include "folres/module.hpp"

namespace folres {

ChartMap::ChartMap(std::size_t nvars, std::vector<std::size_t> center, std::size_t chart_variable)
    : nvars_(nvars), center_(std::move(center)), chart_(chart_variable) {
  std::sort(center_.begin(), center_.end());
  center_.erase(std::unique(center_.begin(), center_.end()), center_.end());
  if (center_.empty()) throw PreconditionFailed("empty center");
  for (auto v : center_)
    if (v >= nvars_) throw IndexOutOfRange("center variable out of range");
  if (!in_center(chart_)) throw PreconditionFailed("chart variable is not a center variable");
  const Polynomial xc = Polynomial::variable(nvars_, chart_);
  for (std::size_t j = 0; j < nvars_; ++j) {
    Polynomial xj = Polynomial::variable(nvars_, j);
    images_.push_back(j != chart_ && in_center(j) ? xc * xj : xj);
  }
}

bool ChartMap::in_center(std::size_t i) const { return std::binary_search(center_.begin(), center_.end(), i); }

std::vector<bool> ChartMap::exceptional_flags() const {
  std::vector<bool> f(nvars_, false);
  f[chart_] = true;
  return f;
}

Polynomial ChartMap::pullback(const Polynomial& f) const {
  if (f.nvars() != nvars_) throw DimensionMismatch("pullback in the wrong chart");
  return f.substitute(images_);
}

Ideal ChartMap::pullback(const Ideal& i) const {
  std::vector<Polynomial> gens;
  for (const auto& g : i.generators()) gens.push_back(pullback(g));
  return Ideal(nvars_, std::move(gens));
}

ChartMap blowup_chart(std::size_t nvars, const BlowupCenter& center, std::size_t c) {
  return ChartMap(nvars, center.variables, c);
}

Ideal total_transform_ideal(const Ideal& i, const ChartMap& m) { return m.pullback(i); }

Ideal controlled_transform_ideal(const Ideal& i, const ChartMap& m) {
  Ideal center = Ideal::coordinate(m.nvars(), m.center());
  std::vector<Polynomial> out;
  for (const auto& g : i.generators()) {
    if (!center.contains(g)) throw OrderOneViolation("generator outside the center ideal");
    try {
      out.push_back(m.pullback(g).exact_divide_by_variable(m.chart_variable(), 1));
    } catch (const NotDivisible&) {
      throw OrderOneViolation("pullback not divisible by the exceptional equation");
    }
  }
  return Ideal(m.nvars(), std::move(out));
}

LaurentDerivation pullback_derivation(const Derivation& x, const ChartMap& m) {
  const std::size_t n = m.nvars();
  if (x.nvars() != n) throw DimensionMismatch("pullback in the wrong chart");
  const std::size_t c = m.chart_variable();
  const auto flags = m.exceptional_flags();
  const Monomial pole = Monomial::variable(n, c);
  const Polynomial ac = m.pullback(x.coefficient(c));
  std::vector<LaurentPolynomial> coeffs;
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial aj = m.pullback(x.coefficient(j));
    if (j != c && m.in_center(j))
      coeffs.emplace_back(aj - Polynomial::variable(n, j) * ac, pole, flags);
    else
      coeffs.emplace_back(std::move(aj), flags);
  }
  return LaurentDerivation(std::move(coeffs));
}

DivisorLedger push_ledger(const DivisorLedger& ledger, const ChartMap& m, std::size_t step) {
  DivisorLedger out;
  for (auto rec : ledger) {
    if (rec.variable && *rec.variable == m.chart_variable()) rec.variable.reset();
    out.push_back(std::move(rec));
  }
  out.push_back({"exceptional step " + std::to_string(step), m.chart_variable()});
  return out;
}

DivisorLedger push_ledger(const DivisorLedger& ledger, const CoordinateChange& change) {
  DivisorLedger out;
  const std::size_t n = change.nvars();
  for (auto rec : ledger) {
    if (rec.variable) {
      Polynomial eq = change.to_new(Polynomial::variable(n, *rec.variable));
      rec.variable.reset();
      if (eq.is_monomial() && eq.degree() == 1)
        for (std::size_t j = 0; j < n; ++j)
          if (eq.leading_term().first[j] == 1) rec.variable = j;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

std::vector<bool> tangency_flags(const std::vector<Derivation>& gens, const DivisorLedger& ledger) {
  std::vector<bool> out;
  for (const auto& g : gens) {
    bool ok = true;
    for (const auto& rec : ledger)
      if (rec.variable && !is_tangent_to_divisor(g, *rec.variable)) ok = false;
    out.push_back(ok);
  }
  return out;
}

Derivation analytic_or_fail(const LaurentDerivation& x, const char* what) {
  if (!x.is_analytic()) throw ConsistencyFailure(what);
  return x.to_derivation();
}

}  // namespace

DistributionGens adapted_strict_transform(const DistributionGens& theta, const TransverseSplit* split,
                                          const ChartMap& m, const DivisorLedger& ledger) {
  const Monomial xc = Monomial::variable(m.nvars(), m.chart_variable());
  std::vector<Derivation> gens;
  if (split == nullptr) {
    for (const auto& x : theta.gens)
      gens.push_back(analytic_or_fail(pullback_derivation(x, m), "pullback along an invariant center has a pole"));
  } else {
    for (const auto& y : split->transverse) {
      LaurentDerivation p = pullback_derivation(y, m);
      if (p.pole_order(m.chart_variable()) > 1) throw ConsistencyFailure("transverse pullback with a double pole");
      gens.push_back(p.cleared_by(xc));
    }
    for (const auto& z : split->invariant)
      gens.push_back(analytic_or_fail(pullback_derivation(z, m), "invariant-side pullback has a pole"));
  }
  auto flags = tangency_flags(gens, ledger);
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (!flags[i]) throw ConsistencyFailure("transformed generator " + std::to_string(i) + " is not tangent to the divisors");
  return DistributionGens(std::move(gens), theta.dim);
}

std::vector<Derivation> strict_closure_syzygies(const std::vector<LaurentDerivation>& gens, const ChartMap& m) {
  const std::size_t n = m.nvars();
  const std::size_t c = m.chart_variable();
  const Monomial xc = Monomial::variable(n, c);
  std::vector<Derivation> ys;
  std::vector<ModuleVector> span;
  std::vector<ModuleVector> restricted;
  std::vector<Polynomial> at_zero;
  for (std::size_t j = 0; j < n; ++j) at_zero.push_back(j == c ? Polynomial(n) : Polynomial::variable(n, j));
  for (const auto& g : gens) {
    if (g.pole_order(c) > 1) throw PreconditionFailed("pole of order above one");
    Derivation y = g.cleared_by(xc);
    ModuleVector r;
    for (const auto& a : y.coefficients()) r.push_back(a.substitute(at_zero));
    restricted.push_back(std::move(r));
    span.push_back(y.coefficients());
    if (g.is_analytic()) span.push_back(g.to_derivation().coefficients());
    ys.push_back(std::move(y));
  }
  std::vector<Derivation> out;
  if (ys.size() < 2) return out;
  for (const auto& rel : Submodule(n, n, restricted).syzygies()) {
    Derivation sum = Derivation::zero(n);
    for (std::size_t i = 0; i < ys.size(); ++i) sum = sum + rel[i] * ys[i];
    if (sum.is_zero()) continue;
    std::vector<Polynomial> w;
    try {
      for (const auto& a : sum.coefficients()) w.push_back(a.exact_divide_by_variable(c, 1));
    } catch (const NotDivisible&) {
      throw ConsistencyFailure("syzygy combination is not divisible by the exceptional equation");
    }
    if (Submodule(n, n, span).contains(w)) continue;
    span.push_back(w);
    out.emplace_back(std::move(w));
  }
  return out;
}

Tower::Tower(FoliatedChart initial) { charts_.push_back(std::move(initial)); }

std::size_t Tower::blowup_count() const {
  return static_cast<std::size_t>(std::count_if(steps_.begin(), steps_.end(), [](const auto& s) { return s.blowup.has_value(); }));
}

Tower Tower::extended(TowerStep step, FoliatedChart next) const {
  if (step.blowup.has_value() == step.change.has_value()) throw PreconditionFailed("tower step needs exactly one map");
  Tower t = *this;
  t.steps_.push_back(std::move(step));
  t.charts_.push_back(std::move(next));
  return t;
}

Polynomial Tower::pull_to_current(const Polynomial& f, std::size_t from) const {
  if (from >= charts_.size()) throw IndexOutOfRange("no such chart");
  Polynomial g = f;
  for (std::size_t k = from; k < steps_.size(); ++k) g = steps_[k].blowup ? steps_[k].blowup->pullback(g) : steps_[k].change->to_new(g);
  return g;
}

Ideal Tower::pull_to_current(const Ideal& i, std::size_t from) const {
  std::vector<Polynomial> gens;
  for (const auto& g : i.generators()) gens.push_back(pull_to_current(g, from));
  return Ideal(current().theta.nvars(), std::move(gens));
}

Monomial KSheaf::monomial() const {
  Monomial m(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw PreconditionFailed("negative exponent has no monomial");
    m[i] = static_cast<Monomial::Exponent>(exponents[i]);
  }
  return m;
}

Ideal KSheaf::ideal() const { return Ideal(exponents.size(), {Polynomial(monomial(), 1)}); }

KSheaf k_sheaf(const Tower& t, long alpha) {
  const std::size_t n = t.current().theta.nvars();
  KSheaf k;
  k.alpha = alpha;
  k.exponents.assign(n, 0);
  for (std::size_t s = 0; s < t.steps().size(); ++s) {
    const auto& step = t.steps()[s];
    if (!step.blowup) continue;
    Polynomial e = t.pull_to_current(step.blowup->exceptional_equation(), s + 1);
    if (!e.is_monomial()) throw PreconditionFailed("pulled exceptional equation is not a monomial");
    const Monomial& m = e.leading_term().first;
    for (std::size_t i = 0; i < n; ++i) k.exponents[i] += alpha * static_cast<long>(m[i]);
  }
  return k;
}

std::string to_string(TransformMode mode) {
  switch (mode) {
    case TransformMode::kInvariant: return "invariant";
    case TransformMode::kSplit: return "transverse-split";
    case TransformMode::kCandidate: return "candidate";
  }
  return "candidate";
}

VarNames primed(const VarNames& names) {
  VarNames out;
  for (const auto& s : names) out.push_back(s + "'");
  return out;
}

BlowupResult blow_up(const FoliatedChart& chart, const BlowupCenter& center, std::size_t c, std::size_t step,
                     const VarNames& new_names) {
  const std::size_t n = chart.theta.nvars();
  if (new_names.size() != n) throw DimensionMismatch("new chart needs one name per variable");
  BlowupResult r{blowup_chart(n, center, c), {}, {}, {}, TransformMode::kCandidate, {}, {}, {}, {}, {}, {}};
  const Ideal ic = center.ideal(n);
  r.admissibility = admissibility_report(chart.theta, ic);
  r.total = total_transform_ideal(chart.ideal, r.map);
  r.controlled = controlled_transform_ideal(chart.ideal, r.map);
  for (const auto& x : chart.theta.gens) r.pullbacks.push_back(pullback_derivation(x, r.map));
  DivisorLedger ledger = push_ledger(chart.ledger, r.map, step);

  DistributionGens next_theta;
  if (r.admissibility.admissible) {
    auto outcome = transverse_split(chart.theta, ic, r.admissibility);
    r.split_diagnosis = outcome.diagnosis;
    r.split = outcome.split;
  } else {
    r.split_diagnosis = "not admissible";
  }
  if (r.split && r.admissibility.d0 == 0 && is_invariant(chart.theta, ic)) {
    r.mode = TransformMode::kInvariant;
    next_theta = adapted_strict_transform(chart.theta, nullptr, r.map, ledger);
  } else if (r.split) {
    r.mode = TransformMode::kSplit;
    next_theta = adapted_strict_transform(chart.theta, &*r.split, r.map, ledger);
  } else {
    // Analytic pullbacks as they are, the rest cleared once, plus syzygy fields.
    const Monomial xc = Monomial::variable(n, c);
    std::vector<Derivation> gens;
    for (const auto& p : r.pullbacks) gens.push_back(p.is_analytic() ? p.to_derivation() : p.cleared_by(xc));
    r.syzygy_fields = strict_closure_syzygies(r.pullbacks, r.map);
    for (const auto& w : r.syzygy_fields) gens.push_back(w);
    next_theta = DistributionGens(std::move(gens), chart.theta.dim);
  }
  r.tangent = tangency_flags(next_theta.gens, ledger);
  r.next = FoliatedChart{new_names, std::move(next_theta), r.controlled, std::move(ledger)};
  return r;
}

FittingTransformCheck check_fitting_transform(const DistributionGens& theta, const Ideal& i, std::size_t s,
                                              const ChartMap& m, const std::vector<Polynomial>& multipliers) {
  const std::size_t n = m.nvars();
  const Polynomial xs = Polynomial(Monomial::variable(n, m.chart_variable(), static_cast<Monomial::Exponent>(s)), 1);
  FittingTransformCheck out;
  out.pulled = m.pullback(fitting_ideal(theta, i, s) + i).times(xs);

  std::vector<Polynomial> star;
  for (const auto& f : i.generators()) star.push_back(m.pullback(f));
  const std::size_t base = star.size();
  for (std::size_t k = 0; k < multipliers.size() && base > 0; ++k)
    star.push_back(m.pullback(multipliers[k]) * star[k % base]);
  std::vector<LaurentDerivation> pulled;
  for (const auto& x : theta.gens) pulled.push_back(pullback_derivation(x, m));

  const auto flags = m.exceptional_flags();
  const LaurentPolynomial zero(Polynomial(n), flags);
  const Monomial clear = xs.leading_term().first;
  std::vector<Polynomial> gens;
  for (const auto& rows : subsets(pulled.size(), s))
    for (const auto& cols : subsets(star.size(), s)) {
      std::vector<std::vector<LaurentPolynomial>> mat;
      for (auto r : rows) {
        std::vector<LaurentPolynomial> row;
        for (auto c : cols) row.push_back(pulled[r].apply(star[c]));
        mat.push_back(std::move(row));
      }
      LaurentPolynomial det = determinant(mat, zero);
      if (!det.is_zero()) gens.push_back(det.cleared_by(clear));
    }
  for (const auto& f : star) gens.push_back(xs * f);
  out.transformed = Ideal(n, std::move(gens));
  out.holds = ideal_equal(out.pulled, out.transformed);
  return out;
}

ChainIdentityCheck check_chain_identity(const Tower& t, std::size_t j_max) {
  ChainIdentityCheck out;
  const auto& first = t.charts().front();
  const auto& last = t.current();
  auto h0 = tangency_chain(first.theta, first.ideal, j_max + 1);
  auto hk = tangency_chain(last.theta, last.ideal, j_max + 1);
  const Polynomial k1(k_sheaf(t, 1).monomial(), 1);
  const std::size_t n = last.theta.nvars();
  auto at = [](const TangencyChain& c, std::size_t j) -> const Ideal& {
    return c.ideals[std::min(j, c.ideals.size() - 1)];
  };
  for (std::size_t j = 0; j <= j_max; ++j) {
    Ideal lhs = at(hk, j).times(k1);
    Ideal rhs = Ideal::zero(n);
    for (std::size_t i = 0; i <= j; ++i) rhs = rhs + t.pull_to_current(at(h0, i)).times(k1.pow(static_cast<unsigned>(i)));
    if (!ideal_equal(lhs, rhs)) {
      out.holds = false;
      out.failed_at = j;
      return out;
    }
  }
  return out;
}

}  // namespace folres
