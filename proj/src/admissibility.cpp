#include "folres/admissibility.hpp"

#include <algorithm>

#include "folres/error.hpp"
#include "folres/fitting.hpp"

namespace folres {

std::string to_string(MinorRelation r) {
  switch (r) {
    case MinorRelation::kUnit: return "unit";
    case MinorRelation::kContained: return "contained";
    case MinorRelation::kNeither: return "neither";
  }
  return "neither";
}

AdmissibilityReport admissibility_report(const DistributionGens& theta, const Ideal& center) {
  AdmissibilityReport rep;
  bool prefix_unit = true;
  for (std::size_t k = 1; k <= theta.dim; ++k) {
    AdmissibilityRecord rec;
    rec.k = k;
    rec.minors = fitting_ideal(theta, center, k);
    if ((rec.minors + center).is_unit())
      rec.relation = MinorRelation::kUnit;
    else if (center.contains(rec.minors))
      rec.relation = MinorRelation::kContained;
    else
      rec.relation = MinorRelation::kNeither;
    if (prefix_unit && rec.relation == MinorRelation::kUnit)
      rep.d0 = k;
    else
      prefix_unit = false;
    rep.records.push_back(std::move(rec));
  }
  rep.admissible = true;
  for (const auto& rec : rep.records) {
    if (rec.k <= rep.d0 || rec.relation == MinorRelation::kContained) continue;
    rep.admissible = false;
    rep.witness_k = rec.k;
    for (const auto& g : rec.minors.generators())
      if (!center.contains(g)) {
        rep.witness = g;
        break;
      }
    break;
  }
  return rep;
}

std::vector<std::vector<Polynomial>> adjugate(const std::vector<std::vector<Polynomial>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  const std::size_t nv = m[0][0].nvars();
  std::vector<std::vector<Polynomial>> adj(n, std::vector<Polynomial>(n, Polynomial(nv)));
  if (n == 1) {
    adj[0][0] = Polynomial(nv, 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<Polynomial>> sub;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<Polynomial> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        sub.push_back(std::move(row));
      }
      Polynomial cof = determinant(sub, Polynomial(nv));
      adj[j][i] = (i + j) % 2 == 0 ? cof : -cof;
    }
  return adj;
}

namespace {

// New coordinates whose rows include the linear parts of `fs`, each placed at
// a column where it is nonzero; remaining rows are standard basis vectors.
std::optional<CoordinateChange> change_for(const std::vector<Polynomial>& fs, std::size_t n) {
  linalg::Matrix m = linalg::identity(n);
  Point t = origin(n);
  std::vector<bool> used(n, false);
  for (const auto& f : fs) {
    linalg::Row row(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) row[j] = f.coefficient(Monomial::variable(n, j));
    bool placed = false;
    for (std::size_t j = 0; j < n && !placed; ++j) {
      if (used[j] || row[j] == 0) continue;
      linalg::Matrix trial = m;
      trial[j] = row;
      if (linalg::determinant(trial) == 0) continue;
      m = std::move(trial);
      t[j] = f.constant_term();
      used[j] = true;
      placed = true;
    }
    if (!placed) return std::nullopt;
  }
  return CoordinateChange::affine(std::move(m), std::move(t));
}

}  // namespace

SplitOutcome transverse_split(const DistributionGens& theta, const Ideal& center, const AdmissibilityReport& report) {
  SplitOutcome out;
  if (!report.admissible) {
    out.diagnosis = "not admissible";
    return out;
  }
  const std::size_t n = theta.nvars();
  const std::size_t d0 = report.d0;
  const auto& fs = center.generators();
  if (d0 == 0) {
    TransverseSplit s;
    s.invariant = theta.gens;
    s.change = CoordinateChange::identity(n);
    if (!is_invariant(DistributionGens(s.invariant, theta.dim), center))
      throw ConsistencyFailure("center with d0 = 0 is not invariant");
    out.split = std::move(s);
    out.diagnosis = "invariant center";
    return out;
  }
  bool saw_nonlinear = false;
  for (const auto& rows : subsets(theta.gens.size(), d0))
    for (const auto& cols : subsets(fs.size(), d0)) {
      std::vector<std::vector<Polynomial>> m;
      for (auto r : rows) {
        std::vector<Polynomial> row;
        for (auto c : cols) row.push_back(theta.gens[r].apply(fs[c]));
        m.push_back(std::move(row));
      }
      Polynomial det = determinant(m, Polynomial(n));
      if (!(Ideal(n, {det}) + center).is_unit()) continue;
      std::vector<Polynomial> chosen;
      bool linear = true;
      for (auto c : cols) {
        chosen.push_back(fs[c]);
        linear = linear && fs[c].degree() <= 1;
      }
      if (!linear) {
        saw_nonlinear = true;
        continue;
      }
      auto change = change_for(chosen, n);
      if (!change) continue;
      TransverseSplit s;
      s.functions = chosen;
      s.change = std::move(*change);
      auto adj = adjugate(m);
      for (auto r : rows) s.transverse.push_back(theta.gens[r]);
      for (std::size_t g = 0; g < theta.gens.size(); ++g) {
        if (std::find(rows.begin(), rows.end(), g) != rows.end()) continue;
        // Z' = det Z - sum_i (b adj)_i Y_i kills every chosen function.
        std::vector<Polynomial> b;
        for (const auto& f : chosen) b.push_back(theta.gens[g].apply(f));
        Derivation z = det * theta.gens[g];
        for (std::size_t i = 0; i < d0; ++i) {
          Polynomial c(n);
          for (std::size_t j = 0; j < d0; ++j) c += b[j] * adj[j][i];
          z = z - c * s.transverse[i];
        }
        for (const auto& f : chosen)
          if (!z.apply(f).is_zero()) throw ConsistencyFailure("corrected generator does not annihilate the split");
        if (!z.is_zero()) s.invariant.push_back(std::move(z));
      }
      if (!s.invariant.empty() && !is_invariant(DistributionGens(s.invariant, theta.dim), center)) continue;
      out.split = std::move(s);
      out.diagnosis = "transverse split";
      return out;
    }
  out.diagnosis = saw_nonlinear ? "split not constructible under linear restriction" : "no unit minor along the center";
  return out;
}

std::vector<Polynomial> invariant_generators(const DistributionGens& theta, const Ideal& i) {
  const std::size_t n = theta.nvars();
  if (!check_monomial_basis(theta, CoefficientRing::kQ).ok)
    throw PreconditionFailed("invariant generators need a monomial basis");
  const Point o = origin(n);
  for (const auto& x : theta.gens)
    for (const auto& f : i.generators())
      if (!locally_contains(i, x.apply(f), o)) throw PreconditionFailed("ideal is not invariant at the origin");
  std::vector<std::size_t> partial_vars;
  std::vector<const Derivation*> diagonal;
  for (const auto& x : theta.gens) {
    bool is_partial = false;
    for (std::size_t v = 0; v < n; ++v)
      if (x.coefficient(v) == Polynomial(n, 1)) {
        partial_vars.push_back(v);
        is_partial = true;
      }
    if (!is_partial) diagonal.push_back(&x);
  }
  // Coefficients in the partial variables.
  std::vector<Polynomial> stage = i.generators();
  for (auto v : partial_vars) {
    std::vector<Polynomial> next;
    for (const auto& f : stage)
      for (auto& c : f.coefficients_in(v))
        if (!c.is_zero()) next.push_back(std::move(c));
    stage = std::move(next);
  }
  // Group terms by joint weight under the diagonal fields.
  std::vector<Polynomial> out;
  auto push = [&](const Polynomial& h) {
    Polynomial p = h.primitive();
    for (const auto& g : out)
      if (g == p) return;
    out.push_back(std::move(p));
  };
  for (const auto& f : stage) {
    std::vector<std::pair<std::vector<Rational>, Polynomial>> groups;
    for (const auto& [m, c] : f.terms()) {
      std::vector<Rational> w;
      for (const auto* x : diagonal) {
        Rational k = 0;
        for (std::size_t v = 0; v < n; ++v) k += x->coefficient(v).coefficient(Monomial::variable(n, v)) * m[v];
        w.push_back(k);
      }
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == w; });
      if (it == groups.end()) {
        groups.emplace_back(w, Polynomial(n));
        it = groups.end() - 1;
      }
      it->second.add_term(m, c);
    }
    for (const auto& [w, h] : groups) push(h);
  }
  if (!locally_equal(Ideal(n, out), i, o)) throw ConsistencyFailure("invariant generators changed the ideal");
  return out;
}

}  // namespace folres
