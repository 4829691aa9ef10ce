#include "folres/module.hpp"

#include <mutex>

#include "folres/error.hpp"
#include "folres/groebner.hpp"

namespace folres {

namespace {

const gb::TermOrder& pot_order() {
  static const gb::TermOrder ord(MonomialOrder::grevlex());
  return ord;
}

}  // namespace

struct Submodule::Cache {
  std::once_flag once;
  std::vector<ModuleVector> basis;
};

Submodule::Submodule(std::size_t nvars, std::size_t rank, std::vector<ModuleVector> gens)
    : nvars_(nvars), rank_(rank), gens_(std::move(gens)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : gens_) {
    if (g.size() != rank_) throw DimensionMismatch("module generator has wrong rank");
    for (const auto& c : g)
      if (c.nvars() != nvars_) throw DimensionMismatch("module generator in wrong variable count");
  }
}

const std::vector<ModuleVector>& Submodule::augmented_basis() const {
  std::call_once(cache_->once, [this] {
    const std::size_t m = gens_.size();
    std::vector<gb::Vec> vecs;
    for (std::size_t i = 0; i < m; ++i) {
      ModuleVector aug = gens_[i];
      aug.resize(rank_ + m, Polynomial(nvars_));
      aug[rank_ + i] = Polynomial(nvars_, 1);
      vecs.push_back(gb::from_components(aug, pot_order()));
    }
    gb::Options opts;
    opts.product_criterion = false;
    for (const auto& v : gb::reduced_basis(std::move(vecs), pot_order(), opts))
      cache_->basis.push_back(gb::to_components(v, rank_ + m, nvars_));
  });
  return cache_->basis;
}

std::optional<std::vector<Polynomial>> Submodule::express(const ModuleVector& v) const {
  if (v.size() != rank_) throw DimensionMismatch("module element has wrong rank");
  const std::size_t m = gens_.size();
  std::vector<gb::Vec> basis;
  for (const auto& g : augmented_basis()) basis.push_back(gb::from_components(g, pot_order()));
  ModuleVector aug = v;
  aug.resize(rank_ + m, Polynomial(nvars_));
  gb::Vec rem = gb::reduce(gb::from_components(aug, pot_order()), basis, pot_order());
  for (const auto& t : rem)
    if (t.comp < rank_) return std::nullopt;
  // rem = (0, c) means v = -sum c_i gens_i.
  std::vector<Polynomial> coeffs(m, Polynomial(nvars_));
  for (const auto& t : rem) coeffs[t.comp - rank_].add_term(t.mono, -t.coeff);
  return coeffs;
}

bool Submodule::contains(const ModuleVector& v) const { return express(v).has_value(); }

std::vector<std::vector<Polynomial>> Submodule::syzygies() const {
  std::vector<std::vector<Polynomial>> out;
  for (const auto& g : augmented_basis()) {
    bool head_zero = true;
    for (std::size_t i = 0; i < rank_ && head_zero; ++i) head_zero = g[i].is_zero();
    if (head_zero) out.emplace_back(g.begin() + static_cast<std::ptrdiff_t>(rank_), g.end());
  }
  return out;
}

}  // namespace folres
