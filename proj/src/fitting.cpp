#include "folres/fitting.hpp"

#include "folres/error.hpp"

namespace folres {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

namespace {

void push_unique(std::vector<Polynomial>& out, const Polynomial& f) {
  if (f.is_zero()) return;
  Polynomial m = f.monic();
  for (const auto& g : out)
    if (g == m) return;
  out.push_back(std::move(m));
}

}  // namespace

Ideal fitting_ideal(const DistributionGens& theta, const Ideal& i, std::size_t k) {
  const std::size_t n = theta.nvars();
  if (i.nvars() != n) throw DimensionMismatch("fitting ideal across variable contexts");
  if (k == 0) return Ideal::unit(n);
  const auto& fs = i.generators();
  std::vector<std::vector<Polynomial>> entries;
  for (const auto& x : theta.gens) {
    std::vector<Polynomial> row;
    for (const auto& f : fs) row.push_back(x.apply(f));
    entries.push_back(std::move(row));
  }
  std::vector<Polynomial> minors;
  for (const auto& rows : subsets(theta.gens.size(), k))
    for (const auto& cols : subsets(fs.size(), k)) {
      std::vector<std::vector<Polynomial>> sub;
      for (auto r : rows) {
        std::vector<Polynomial> row;
        for (auto c : cols) row.push_back(entries[r][c]);
        sub.push_back(std::move(row));
      }
      push_unique(minors, determinant(sub, Polynomial(n)));
    }
  return Ideal(n, std::move(minors));
}

bool is_invariant(const DistributionGens& theta, const Ideal& i) {
  for (const auto& x : theta.gens)
    for (const auto& f : i.generators())
      if (!i.contains(x.apply(f))) return false;
  return true;
}

bool is_totally_transverse(const DistributionGens& theta, const Ideal& i) {
  return (fitting_ideal(theta, i, theta.dim) + i).is_unit();
}

bool regular_at(const DistributionGens& theta, const Point& p) {
  Ideal m = Ideal::maximal(p);
  return (fitting_ideal(theta, m, theta.dim) + m).is_unit();
}

TangencyChain tangency_chain(const DistributionGens& theta, const Ideal& i, std::size_t max_steps) {
  if (max_steps == 0) throw PreconditionFailed("tangency chain needs at least one step");
  TangencyChain chain;
  chain.ideals.push_back(i.canonical());
  for (std::size_t step = 0; step < max_steps; ++step) {
    const Ideal& h = chain.ideals.back();
    std::vector<Polynomial> gens = h.generators();
    for (const auto& x : theta.gens)
      for (const auto& f : h.generators()) gens.push_back(x.apply(f));
    Ideal next = Ideal(h.nvars(), std::move(gens)).canonical();
    if (!next.contains(h)) throw ConsistencyFailure("tangency chain is not increasing");
    const bool same = h.contains(next);
    chain.ideals.push_back(std::move(next));
    if (same) {
      chain.stabilized = true;
      chain.stabilization_index = step;
      return chain;
    }
  }
  chain.stabilization_index = max_steps;
  return chain;
}

TgInvariant tg_invariant_at_point(const TangencyChain& chain, const Point& p) {
  if (!chain.stabilized) throw NotStabilized("tangency chain did not stabilize");
  const std::size_t s = chain.stabilization_index;
  // Local stabilization at p from step j on: p lies off V(H_j : H_{j+1}).
  std::size_t nu = 0;
  for (std::size_t j = s; j-- > 0;) {
    Ideal colon = ideal_quotient(chain.ideals[j], chain.ideals[j + 1]);
    bool vanishes = true;
    for (const auto& g : colon.generators()) vanishes = vanishes && g.evaluate(p) == 0;
    if (vanishes) {
      nu = j + 1;
      break;
    }
  }
  TgInvariant inv;
  inv.nu = nu;
  bool all_vanish = true;
  for (const auto& g : chain.ideals[nu].generators()) all_vanish = all_vanish && g.evaluate(p) == 0;
  inv.type = all_vanish ? 2 : 1;
  return inv;
}

Ideal differential_closure(const DistributionGens& theta, const Ideal& i, std::size_t max_steps) {
  TangencyChain chain = tangency_chain(theta, i, max_steps);
  if (!chain.stabilized)
    throw NotStabilized("differential closure did not stabilize within " + std::to_string(max_steps) + " steps");
  return chain.ideals[chain.stabilization_index];
}

MonomialityAnalysis analyze_monomiality(const DistributionGens& theta, CoefficientRing ring, const Point& p,
                                        const std::vector<std::string>* names) {
  MonomialityAnalysis out;
  if (regular_at(theta, p)) {
    out.monomial = true;
    out.method = "regular";
    out.diagnosis = "regular at the point";
    return out;
  }
  const bool at_origin = p == origin(theta.nvars());
  DistributionGens local = at_origin ? theta : translate_to_point(theta, p);
  auto basis = check_monomial_basis(local, ring, names);
  if (basis.ok) {
    out.monomial = true;
    out.method = "basis";
    out.diagnosis = "monomial basis";
    return out;
  }
  auto lin = monomialize_linear(local, ring);
  out.diagnosis = lin.diagnosis;
  if (lin.change) {
    out.monomial = true;
    out.method = "linear-change";
    out.change = std::move(lin.change);
    out.transformed = std::move(lin.transformed);
  }
  return out;
}

}  // namespace folres
