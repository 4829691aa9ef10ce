#include "folres/groebner.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <tuple>

#include "folres/error.hpp"

namespace folres::gb {

namespace {

std::mutex g_observer_mutex;
Observer g_observer;

void sort_terms(Vec& v, const TermOrder& ord) {
  std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return ord.compare(a, b) > 0; });
}

std::uint64_t sugar_of(const Vec& v) {
  std::uint64_t s = 0;
  for (const auto& t : v) s = std::max(s, t.mono.degree());
  return s;
}

void make_monic(Vec& v) {
  if (v.empty() || v.front().coeff == 1) return;
  Rational inv = 1 / v.front().coeff;
  for (auto& t : v) t.coeff *= inv;
}

const Vec* find_reducer(const Term& t, const std::vector<Vec>& basis) {
  for (const auto& g : basis)
    if (!g.empty() && g.front().comp == t.comp && g.front().mono.divides(t.mono)) return &g;
  return nullptr;
}

}  // namespace

Vec from_polynomial(const Polynomial& f, std::size_t comp, const TermOrder& ord) {
  Vec v;
  v.reserve(f.size());
  for (const auto& [m, c] : f.terms()) v.push_back({comp, m, c});
  if (ord.monomial_order().kind() != MonomialOrder::Kind::kGrevlex) sort_terms(v, ord);
  return v;
}

Vec from_components(const std::vector<Polynomial>& comps, const TermOrder& ord) {
  Vec v;
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (const auto& [m, c] : comps[i].terms()) v.push_back({i, m, c});
  sort_terms(v, ord);
  return v;
}

Polynomial to_polynomial(const Vec& v, std::size_t nvars) {
  Polynomial p(nvars);
  for (const auto& t : v) p.add_term(t.mono, t.coeff);
  return p;
}

std::vector<Polynomial> to_components(const Vec& v, std::size_t rank, std::size_t nvars) {
  std::vector<Polynomial> out(rank, Polynomial(nvars));
  for (const auto& t : v) out.at(t.comp).add_term(t.mono, t.coeff);
  return out;
}

Vec sub_mul(const Vec& f, const Rational& c, const Monomial& m, const Vec& g, const TermOrder& ord) {
  Vec out;
  out.reserve(f.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(f[i++]);
      continue;
    }
    Monomial gm = g[j].mono * m;
    if (i == f.size()) {
      out.push_back({g[j].comp, std::move(gm), -c * g[j].coeff});
      ++j;
      continue;
    }
    int cmp = ord.compare(f[i].comp, f[i].mono, g[j].comp, gm);
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      out.push_back({g[j].comp, std::move(gm), -c * g[j].coeff});
      ++j;
    } else {
      Rational s = f[i].coeff - c * g[j].coeff;
      if (s != 0) out.push_back({f[i].comp, f[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

Vec reduce(const Vec& f, const std::vector<Vec>& basis, const TermOrder& ord) {
  Vec rem;
  Vec cur = f;
  while (!cur.empty()) {
    const Term& lt = cur.front();
    if (const Vec* g = find_reducer(lt, basis)) {
      const Term& glt = g->front();
      cur = sub_mul(cur, lt.coeff / glt.coeff, lt.mono / glt.mono, *g, ord);
    } else {
      rem.push_back(lt);
      cur.erase(cur.begin());
    }
  }
  return rem;
}

Vec s_polynomial(const Vec& f, const Vec& g, const TermOrder& ord) {
  const Term& a = f.front();
  const Term& b = g.front();
  if (a.comp != b.comp) return {};
  Monomial l = a.mono.lcm(b.mono);
  Vec fa = sub_mul(Vec{}, -1 / a.coeff, l / a.mono, f, ord);
  return sub_mul(fa, 1 / b.coeff, l / b.mono, g, ord);
}

std::vector<Vec> reduced_basis(std::vector<Vec> gens, const TermOrder& ord, Options opts) {
  struct Pair {
    std::uint64_t sugar;
    std::size_t i, j;
    Monomial lcm;
    std::size_t comp;
  };
  std::vector<Vec> basis;
  std::vector<std::uint64_t> sugar;
  std::vector<Pair> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add_element = [&](Vec v, std::uint64_t s) {
    make_monic(v);
    const std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (basis[i].empty() || basis[i].front().comp != v.front().comp) continue;
      const Monomial& li = basis[i].front().mono;
      const Monomial& lk = v.front().mono;
      if (opts.product_criterion && li.coprime(lk)) continue;
      Monomial l = li.lcm(lk);
      std::uint64_t ps = std::max(sugar[i] + l.degree() - li.degree(), s + l.degree() - lk.degree());
      queue.push_back({ps, i, k, std::move(l), v.front().comp});
      pending.insert({i, k});
    }
    basis.push_back(std::move(v));
    sugar.push_back(s);
  };

  for (auto& g : gens) {
    if (g.empty()) continue;
    std::uint64_t s = sugar_of(g);
    Vec r = reduce(g, basis, ord);
    if (!r.empty()) add_element(std::move(r), s);
  }

  auto pair_less = [&](const Pair& a, const Pair& b) {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = ord.compare(a.comp, a.lcm, b.comp, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  };

  while (!queue.empty()) {
    auto best = std::min_element(queue.begin(), queue.end(), pair_less);
    Pair p = *best;
    queue.erase(best);
    pending.erase({p.i, p.j});

    // Buchberger's chain criterion.
    bool redundant = false;
    for (std::size_t k = 0; k < basis.size() && !redundant; ++k) {
      if (k == p.i || k == p.j || basis[k].front().comp != p.comp) continue;
      if (!basis[k].front().mono.divides(p.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (!pending.count(key(p.i, k)) && !pending.count(key(p.j, k))) redundant = true;
    }
    if (redundant) continue;

    Vec s = s_polynomial(basis[p.i], basis[p.j], ord);
    Vec r = reduce(s, basis, ord);
    if (!r.empty()) add_element(std::move(r), p.sugar);
  }

  // Minimalize: drop elements whose leading term is divisible by another's.
  std::vector<Vec> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Term& lt = basis[i].front();
    bool drop = false;
    for (std::size_t j = 0; j < basis.size() && !drop; ++j) {
      if (i == j) continue;
      const Term& o = basis[j].front();
      if (o.comp != lt.comp || !o.mono.divides(lt.mono)) continue;
      // Equal leading monomials: keep the earliest.
      drop = !(o.mono == lt.mono) || j < i;
    }
    if (!drop) minimal.push_back(basis[i]);
  }
  // Interreduce tails.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    Vec head{minimal[i].front()};
    Vec tail(minimal[i].begin() + 1, minimal[i].end());
    std::vector<Vec> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Vec rt = reduce(tail, others, ord);
    head.insert(head.end(), rt.begin(), rt.end());
    make_monic(head);
    minimal[i] = std::move(head);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const Vec& a, const Vec& b) { return ord.compare(a.front(), b.front()) > 0; });

  Observer obs;
  {
    std::lock_guard<std::mutex> lock(g_observer_mutex);
    obs = g_observer;
  }
  if (obs) obs(minimal, ord);
  return minimal;
}

bool is_groebner(const std::vector<Vec>& basis, const TermOrder& ord) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (basis[i].front().comp != basis[j].front().comp) continue;
      if (!reduce(s_polynomial(basis[i], basis[j], ord), basis, ord).empty()) return false;
    }
  return true;
}

void set_observer(Observer obs) {
  std::lock_guard<std::mutex> lock(g_observer_mutex);
  g_observer = std::move(obs);
}

}  // namespace folres::gb
