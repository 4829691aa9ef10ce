#include "folres/ideal.hpp"

#include <mutex>

#include "folres/error.hpp"
#include "folres/groebner.hpp"

namespace folres {

GroebnerBasis groebner(std::size_t nvars, const std::vector<Polynomial>& gens, const MonomialOrder& ord) {
  gb::TermOrder tord(ord);
  std::vector<gb::Vec> vecs;
  for (const auto& g : gens) {
    if (g.nvars() != nvars) throw DimensionMismatch("generator in wrong variable count");
    if (!g.is_zero()) vecs.push_back(gb::from_polynomial(g, 0, tord));
  }
  GroebnerBasis G{nvars, ord, {}};
  for (const auto& v : gb::reduced_basis(std::move(vecs), tord)) G.elements.push_back(gb::to_polynomial(v, nvars));
  return G;
}

namespace {

std::vector<gb::Vec> as_vecs(const GroebnerBasis& G, const gb::TermOrder& tord) {
  std::vector<gb::Vec> out;
  for (const auto& g : G.elements) out.push_back(gb::from_polynomial(g, 0, tord));
  return out;
}

}  // namespace

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  if (f.nvars() != G.nvars) throw DimensionMismatch("normal form across variable contexts");
  gb::TermOrder tord(G.order);
  return gb::to_polynomial(gb::reduce(gb::from_polynomial(f, 0, tord), as_vecs(G, tord), tord), G.nvars);
}

bool verify_groebner(const GroebnerBasis& G) {
  gb::TermOrder tord(G.order);
  return gb::is_groebner(as_vecs(G, tord), tord);
}

struct Ideal::Cache {
  std::mutex mutex;
  std::vector<std::pair<MonomialOrder, std::unique_ptr<GroebnerBasis>>> entries;
};

Ideal::Ideal(std::size_t nvars, std::vector<Polynomial> gens) : nvars_(nvars), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    if (g.nvars() != nvars) throw DimensionMismatch("ideal generator in wrong variable count");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::maximal(const Point& p) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < p.size(); ++i)
    gens.push_back(Polynomial::variable(p.size(), i) - Polynomial(p.size(), p[i]));
  return Ideal(p.size(), std::move(gens));
}

Ideal Ideal::coordinate(std::size_t nvars, const std::vector<std::size_t>& vars) {
  std::vector<Polynomial> gens;
  for (auto v : vars) gens.push_back(Polynomial::variable(nvars, v));
  return Ideal(nvars, std::move(gens));
}

const GroebnerBasis& Ideal::basis(const MonomialOrder& ord) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    for (const auto& [o, b] : cache_->entries)
      if (o == ord) return *b;
  }
  // Computed outside the lock; concurrent fillers produce identical reduced
  // bases and the first insertion wins.
  auto G = std::make_unique<GroebnerBasis>(groebner(nvars_, gens_, ord));
  for (const auto& g : gens_)
    if (!folres::normal_form(g, *G).is_zero())
      throw ConsistencyFailure("cached basis does not contain a generator");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  for (const auto& [o, b] : cache_->entries)
    if (o == ord) return *b;
  cache_->entries.emplace_back(ord, std::move(G));
  return *cache_->entries.back().second;
}

Polynomial Ideal::normal_form(const Polynomial& f) const { return folres::normal_form(f, basis()); }

bool Ideal::contains(const Polynomial& f) const {
  if (f.nvars() != nvars_) throw DimensionMismatch("membership test across variable contexts");
  if (f.is_zero()) return true;
  return normal_form(f).is_zero();
}

bool Ideal::contains(const Ideal& other) const {
  for (const auto& g : other.gens_)
    if (!contains(g)) return false;
  return true;
}

bool Ideal::is_unit() const {
  const auto& G = basis();
  return G.elements.size() == 1 && G.elements.front().is_constant();
}

Ideal Ideal::operator+(const Ideal& other) const {
  if (other.nvars_ != nvars_) throw DimensionMismatch("ideal sum across variable contexts");
  std::vector<Polynomial> gens = gens_;
  gens.insert(gens.end(), other.gens_.begin(), other.gens_.end());
  return Ideal(nvars_, std::move(gens));
}

Ideal Ideal::operator*(const Ideal& other) const {
  if (other.nvars_ != nvars_) throw DimensionMismatch("ideal product across variable contexts");
  std::vector<Polynomial> gens;
  for (const auto& a : gens_)
    for (const auto& b : other.gens_) gens.push_back(a * b);
  return Ideal(nvars_, std::move(gens));
}

Ideal Ideal::times(const Polynomial& f) const {
  std::vector<Polynomial> gens;
  for (const auto& a : gens_) gens.push_back(a * f);
  return Ideal(nvars_, std::move(gens));
}

Ideal Ideal::canonical() const { return Ideal(nvars_, basis().elements); }

bool ideal_equal(const Ideal& a, const Ideal& b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("ideal comparison across variable contexts");
  return a.contains(b) && b.contains(a);
}

Ideal eliminate_leading(const Ideal& I, std::size_t k) {
  const auto& G = I.basis(MonomialOrder::elimination(k));
  std::vector<Polynomial> kept;
  for (const auto& g : G.elements) {
    bool free = true;
    for (const auto& [m, c] : g.terms())
      for (std::size_t i = 0; i < k && free; ++i)
        if (m[i] != 0) free = false;
    if (free) kept.push_back(g);
  }
  return Ideal(I.nvars(), std::move(kept));
}

Ideal ideal_intersection(const Ideal& I, const Ideal& J) {
  if (I.nvars() != J.nvars()) throw DimensionMismatch("intersection across variable contexts");
  const std::size_t n = I.nvars();
  const std::size_t m = n + 1;
  Polynomial t = Polynomial::variable(m, 0);
  Polynomial one_minus_t = Polynomial(m, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(t * g.embed(m, 1));
  for (const auto& g : J.generators()) gens.push_back(one_minus_t * g.embed(m, 1));
  Ideal elim = eliminate_leading(Ideal(m, std::move(gens)), 1);
  std::vector<Polynomial> out;
  for (const auto& g : elim.generators()) out.push_back(g.restrict_vars(n, 1));
  return Ideal(n, std::move(out));
}

Ideal ideal_quotient(const Ideal& I, const Ideal& J) {
  if (I.nvars() != J.nvars()) throw DimensionMismatch("quotient across variable contexts");
  const std::size_t n = I.nvars();
  Ideal result = Ideal::unit(n);
  bool first = true;
  for (const auto& g : J.generators()) {
    Ideal meet = ideal_intersection(I, Ideal(n, {g}));
    std::vector<Polynomial> q;
    // Every element of the intersection lies in (g), so division is exact.
    for (const auto& h : meet.generators()) q.push_back(h.divide_exact(g));
    Ideal part(n, std::move(q));
    result = first ? part : ideal_intersection(result, part);
    first = false;
  }
  return result.canonical();
}

bool locally_contains(const Ideal& I, const Polynomial& f, const Point& p) {
  if (I.contains(f)) return true;
  return (ideal_quotient(I, Ideal(I.nvars(), {f})) + Ideal::maximal(p)).is_unit();
}

bool locally_contains(const Ideal& I, const Ideal& J, const Point& p) {
  for (const auto& g : J.generators())
    if (!locally_contains(I, g, p)) return false;
  return true;
}

bool locally_equal(const Ideal& a, const Ideal& b, const Point& p) {
  return locally_contains(a, b, p) && locally_contains(b, a, p);
}

}  // namespace folres
