#include "folres/derivation.hpp"

#include <algorithm>
#include <functional>

#include "folres/error.hpp"
#include "folres/module.hpp"
#include "folres/text.hpp"

namespace folres {

Derivation::Derivation(std::vector<Polynomial> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& a : coeffs_)
    if (a.nvars() != coeffs_.size())
      throw DimensionMismatch("vector field coefficient in wrong variable count");
}

Derivation Derivation::zero(std::size_t nvars) { return Derivation(std::vector<Polynomial>(nvars, Polynomial(nvars))); }

Derivation Derivation::partial(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw IndexOutOfRange("partial derivative index out of range");
  Derivation d = zero(nvars);
  d.coeffs_[i] = Polynomial(nvars, 1);
  return d;
}

bool Derivation::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Polynomial& a) { return a.is_zero(); });
}

bool Derivation::vanishes_at(const Point& p) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Polynomial& a) { return a.evaluate(p) == 0; });
}

Polynomial Derivation::apply(const Polynomial& f) const {
  if (f.nvars() != nvars()) throw DimensionMismatch("vector field applied across variable contexts");
  Polynomial out(nvars());
  for (std::size_t i = 0; i < nvars(); ++i)
    if (!coeffs_[i].is_zero()) out += coeffs_[i] * f.derive(i);
  return out;
}

Derivation operator+(const Derivation& a, const Derivation& b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("sum of vector fields across contexts");
  std::vector<Polynomial> c = a.coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
  return Derivation(std::move(c));
}

Derivation operator-(const Derivation& a, const Derivation& b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("difference of vector fields across contexts");
  std::vector<Polynomial> c = a.coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs_[i];
  return Derivation(std::move(c));
}

Derivation operator*(const Polynomial& f, const Derivation& x) {
  std::vector<Polynomial> c;
  for (const auto& a : x.coeffs_) c.push_back(f * a);
  return Derivation(std::move(c));
}

Derivation operator*(const Rational& r, const Derivation& x) {
  std::vector<Polynomial> c;
  for (const auto& a : x.coeffs_) c.push_back(a * r);
  return Derivation(std::move(c));
}

Polynomial apply_derivation(const Derivation& x, const Polynomial& f) { return x.apply(f); }

Derivation lie_bracket(const Derivation& x, const Derivation& y) {
  if (x.nvars() != y.nvars()) throw DimensionMismatch("bracket across variable contexts");
  std::vector<Polynomial> c;
  for (std::size_t i = 0; i < x.nvars(); ++i) c.push_back(x.apply(y.coefficient(i)) - y.apply(x.coefficient(i)));
  return Derivation(std::move(c));
}

bool is_tangent_to_divisor(const Derivation& x, std::size_t i) {
  if (i >= x.nvars()) throw IndexOutOfRange("divisor variable out of range");
  const Polynomial& a = x.coefficient(i);
  return a.is_zero() || a.valuation_in(i) >= 1;
}

// ---------------------------------------------------------------------------

LaurentDerivation::LaurentDerivation(std::vector<LaurentPolynomial> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& a : coeffs_)
    if (a.nvars() != coeffs_.size()) throw DimensionMismatch("Laurent field coefficient in wrong variable count");
}

LaurentDerivation::LaurentDerivation(const Derivation& x, const std::vector<bool>& exceptional) {
  for (const auto& a : x.coefficients()) coeffs_.emplace_back(a, exceptional);
}

Monomial::Exponent LaurentDerivation::pole_order(std::size_t i) const {
  Monomial::Exponent k = 0;
  for (const auto& a : coeffs_) k = std::max(k, a.pole_order(i));
  return k;
}

bool LaurentDerivation::is_analytic() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const LaurentPolynomial& a) { return a.is_polynomial(); });
}

Derivation LaurentDerivation::to_derivation() const {
  std::vector<Polynomial> c;
  for (const auto& a : coeffs_) c.push_back(a.to_polynomial());
  return Derivation(std::move(c));
}

Monomial LaurentDerivation::pole_monomial() const {
  Monomial m(nvars());
  for (const auto& a : coeffs_) m = m.lcm(a.pole());
  return m;
}

Derivation LaurentDerivation::cleared_by(const Monomial& m) const {
  std::vector<Polynomial> c;
  for (const auto& a : coeffs_) c.push_back(a.cleared_by(m));
  return Derivation(std::move(c));
}

LaurentPolynomial LaurentDerivation::apply(const Polynomial& f) const {
  if (f.nvars() != nvars()) throw DimensionMismatch("Laurent field applied across contexts");
  if (coeffs_.empty()) return LaurentPolynomial(f, {});
  LaurentPolynomial out(Polynomial(nvars()), coeffs_.front().exceptional());
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    out = out + f.derive(i) * coeffs_[i];
  }
  return out;
}

LaurentPolynomial LaurentDerivation::apply(const LaurentPolynomial& f) const {
  if (f.nvars() != nvars()) throw DimensionMismatch("Laurent field applied across contexts");
  // d_i(N / x^p) = (x_i d_i N - p_i N) / (x^p x_i) when p_i > 0.
  const std::size_t n = nvars();
  LaurentPolynomial out(Polynomial(n), f.exceptional());
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i].is_zero()) continue;
    const Polynomial& num = f.numerator();
    LaurentPolynomial d;
    if (f.pole_order(i) == 0) {
      d = LaurentPolynomial(num.derive(i), f.pole(), f.exceptional());
    } else {
      Polynomial xi = Polynomial::variable(n, i);
      Polynomial top = xi * num.derive(i) - num * Rational(f.pole_order(i));
      d = LaurentPolynomial(std::move(top), f.pole() * Monomial::variable(n, i), f.exceptional());
    }
    out = out + coeffs_[i] * d;
  }
  return out;
}

// ---------------------------------------------------------------------------

DistributionGens::DistributionGens(std::vector<Derivation> g, std::size_t d) : gens(std::move(g)), dim(d) {
  if (gens.empty()) throw PreconditionFailed("a distribution needs at least one generator");
  for (const auto& x : gens)
    if (x.nvars() != gens.front().nvars()) throw DimensionMismatch("distribution generators disagree on dimension");
  if (dim == 0 || dim > nvars()) throw PreconditionFailed("leaf dimension must lie between 1 and the chart dimension");
}

namespace {

Submodule span_of(const DistributionGens& theta) {
  std::vector<ModuleVector> gens;
  for (const auto& x : theta.gens) gens.push_back(x.coefficients());
  return Submodule(theta.nvars(), theta.nvars(), std::move(gens));
}

}  // namespace

bool in_span(const DistributionGens& theta, const Derivation& x) { return span_of(theta).contains(x.coefficients()); }

InvolutivityReport check_involutive(const DistributionGens& theta) {
  InvolutivityReport rep;
  Submodule span = span_of(theta);
  for (std::size_t i = 0; i < theta.gens.size(); ++i)
    for (std::size_t j = i + 1; j < theta.gens.size(); ++j) {
      Derivation b = lie_bracket(theta.gens[i], theta.gens[j]);
      auto coeffs = span.express(b.coefficients());
      if (!coeffs) {
        rep.involutive = false;
        rep.offending_pair = {i, j};
        rep.offending_bracket = b;
        return rep;
      }
      rep.certificates.push_back(std::move(*coeffs));
    }
  return rep;
}

std::string to_string(CoefficientRing r) { return r == CoefficientRing::kZ ? "Z" : "Q"; }

namespace {

bool in_ring(const Rational& a, CoefficientRing ring) { return ring == CoefficientRing::kQ || is_integer(a); }

VarNames default_names(std::size_t n) {
  VarNames names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace

MonomialBasisReport check_monomial_basis(const DistributionGens& theta, CoefficientRing ring,
                                         const std::vector<std::string>* given) {
  const std::size_t n = theta.nvars();
  const VarNames names = given ? *given : default_names(n);
  auto var = [&](std::size_t i) { return names.at(i); };
  auto fail = [](std::size_t g, std::optional<std::size_t> v, std::string why) {
    MonomialBasisReport r;
    r.ok = false;
    r.generator = g;
    r.variable = v;
    r.reason = std::move(why);
    return r;
  };
  std::vector<bool> partial_of(n, false);
  std::vector<std::size_t> diagonal;
  for (std::size_t g = 0; g < theta.gens.size(); ++g) {
    const Derivation& x = theta.gens[g];
    if (x.is_zero()) return fail(g, std::nullopt, "zero generator");
    bool has_constant = false;
    for (std::size_t i = 0; i < n; ++i) has_constant = has_constant || x.coefficient(i).constant_term() != 0;
    if (has_constant) {
      std::optional<std::size_t> which;
      for (std::size_t i = 0; i < n; ++i) {
        const Polynomial& a = x.coefficient(i);
        if (a.is_zero()) continue;
        if (which || !(a == Polynomial(n, 1))) return fail(g, i, "regular generator is not a coordinate partial");
        which = i;
      }
      if (partial_of[*which]) return fail(g, which, "repeated coordinate partial");
      partial_of[*which] = true;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [m, c] : x.coefficient(i).terms()) {
        if (m == Monomial::variable(n, i)) {
          if (!in_ring(c, ring))
            return fail(g, i, "coefficient " + to_string(c) + " of " + var(i) + "*d/d" + var(i) + " not in " +
                                  to_string(ring));
          continue;
        }
        const std::string what = m.degree() == 1 ? "off-diagonal" : "nonlinear";
        return fail(g, i, what + " term " + format_monomial(m, names) + " in d/d" + var(i) + " coefficient");
      }
    }
    diagonal.push_back(g);
  }
  for (auto g : diagonal)
    for (std::size_t i = 0; i < n; ++i)
      if (partial_of[i] && !theta.gens[g].coefficient(i).is_zero())
        return fail(g, i, "diagonal generator moves the regular coordinate " + var(i));
  return {};
}

LinearPart linear_part(const Derivation& x) {
  const std::size_t n = x.nvars();
  LinearPart lp{linalg::Row(n, Rational(0)), linalg::zeros(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    lp.constant[i] = x.coefficient(i).constant_term();
    for (std::size_t j = 0; j < n; ++j) lp.linear[i][j] = x.coefficient(i).coefficient(Monomial::variable(n, j));
  }
  return lp;
}

// ---------------------------------------------------------------------------

CoordinateChange::CoordinateChange(linalg::Matrix m, Point t) : matrix_(std::move(m)), shift_(std::move(t)) {
  const std::size_t n = matrix_.size();
  if (shift_.size() != n) throw DimensionMismatch("translation has wrong length");
  auto inv = linalg::inverse(matrix_);
  if (!inv) throw PreconditionFailed("coordinate change matrix is not invertible");
  for (std::size_t k = 0; k < n; ++k) {
    Polynomial f(n, shift_[k]);
    for (std::size_t j = 0; j < n; ++j) f += Polynomial::variable(n, j) * matrix_[k][j];
    forward_.push_back(std::move(f));
  }
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial g(n);
    for (std::size_t k = 0; k < n; ++k)
      g += (Polynomial::variable(n, k) - Polynomial(n, shift_[k])) * (*inv)[j][k];
    inverse_.push_back(std::move(g));
  }
}

CoordinateChange CoordinateChange::identity(std::size_t n) { return CoordinateChange(linalg::identity(n), origin(n)); }

CoordinateChange CoordinateChange::affine(linalg::Matrix m, Point t) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw DimensionMismatch("coordinate change matrix must be square");
  return CoordinateChange(std::move(m), std::move(t));
}

CoordinateChange CoordinateChange::translation(const Point& p) {
  Point t;
  for (const auto& c : p) t.push_back(-c);
  return CoordinateChange(linalg::identity(p.size()), std::move(t));
}

bool CoordinateChange::is_identity() const {
  return matrix_ == linalg::identity(nvars()) && shift_ == origin(nvars());
}

Polynomial CoordinateChange::to_new(const Polynomial& f) const { return f.substitute(inverse_); }

Polynomial CoordinateChange::to_old(const Polynomial& g) const { return g.substitute(forward_); }

Derivation CoordinateChange::to_new(const Derivation& x) const {
  std::vector<Polynomial> c;
  for (const auto& y : forward_) c.push_back(to_new(x.apply(y)));
  return Derivation(std::move(c));
}

DistributionGens CoordinateChange::to_new(const DistributionGens& theta) const {
  std::vector<Derivation> gens;
  for (const auto& x : theta.gens) gens.push_back(to_new(x));
  return DistributionGens(std::move(gens), theta.dim);
}

Ideal CoordinateChange::to_new(const Ideal& i) const {
  std::vector<Polynomial> gens;
  for (const auto& g : i.generators()) gens.push_back(to_new(g));
  return Ideal(i.nvars(), std::move(gens));
}

CoordinateChange CoordinateChange::after(const CoordinateChange& other) const {
  linalg::Matrix m = linalg::multiply(matrix_, other.matrix_);
  Point t = linalg::apply(matrix_, other.shift_);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += shift_[i];
  return CoordinateChange(std::move(m), std::move(t));
}

DistributionGens translate_to_point(const DistributionGens& theta, const Point& p) {
  if (p.size() != theta.nvars()) throw DimensionMismatch("translation point has wrong dimension");
  return CoordinateChange::translation(p).to_new(theta);
}

// ---------------------------------------------------------------------------

namespace {

// Over Z a diagonal generator may be rescaled by a constant to clear
// denominators of its eigenvalues; the distribution it spans is unchanged.
DistributionGens clear_denominators(const DistributionGens& theta) {
  std::vector<Derivation> gens;
  for (const auto& x : theta.gens) {
    bool has_constant = false;
    Integer den = 1;
    for (const auto& a : x.coefficients())
      for (const auto& [m, c] : a.terms()) {
        has_constant = has_constant || m.is_one();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
      }
    gens.push_back(has_constant ? x : Rational(den) * x);
  }
  return DistributionGens(std::move(gens), theta.dim);
}

// Generators of the form c*d/dx_i are normalized to d/dx_i and their
// direction is removed from the other generators; the module is unchanged.
DistributionGens reduce_against_partials(const DistributionGens& theta) {
  std::vector<Derivation> gens = theta.gens;
  const std::size_t n = theta.nvars();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::optional<std::size_t> axis;
    bool constant_axis = true;
    for (std::size_t i = 0; i < n; ++i) {
      const Polynomial& a = gens[g].coefficient(i);
      if (a.is_zero()) continue;
      if (axis || !a.is_constant()) {
        constant_axis = false;
        break;
      }
      axis = i;
    }
    if (!axis || !constant_axis) continue;
    gens[g] = Derivation::partial(n, *axis);
    for (std::size_t h = 0; h < gens.size(); ++h) {
      if (h == g || gens[h].coefficient(*axis).is_zero()) continue;
      gens[h] = gens[h] - gens[h].coefficient(*axis) * gens[g];
    }
  }
  std::erase_if(gens, [](const Derivation& x) { return x.is_zero(); });
  if (gens.empty()) return theta;
  return DistributionGens(std::move(gens), theta.dim);
}

// Assigns each row to a distinct column where it is nonzero, preferring the
// row's pivot (first nonzero) column; returns the column per row.
std::optional<std::vector<std::size_t>> assign_columns(const linalg::Matrix& rows) {
  const std::size_t n = rows.size();
  std::vector<long> owner(n, -1);
  std::vector<std::size_t> col_of(n, 0);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t r, std::vector<bool>& seen) {
    for (std::size_t c = 0; c < n; ++c) {
      if (rows[r][c] == 0 || seen[c]) continue;
      seen[c] = true;
      if (owner[c] < 0 || augment(static_cast<std::size_t>(owner[c]), seen)) {
        owner[c] = static_cast<long>(r);
        col_of[r] = c;
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<bool> seen(n, false);
    if (!augment(r, seen)) return std::nullopt;
  }
  return col_of;
}

bool is_singular_at_origin(const Derivation& x) {
  for (const auto& a : x.coefficients())
    if (a.constant_term() != 0) return false;
  return true;
}

MonomializeResult try_change(const DistributionGens& theta, CoefficientRing ring, const CoordinateChange& change,
                             const std::string& failure) {
  MonomializeResult res;
  DistributionGens moved = reduce_against_partials(change.to_new(theta));
  if (ring == CoefficientRing::kZ) moved = clear_denominators(moved);
  if (!check_monomial_basis(moved, ring).ok) {
    res.diagnosis = failure;
    return res;
  }
  res.change = change;
  res.transformed = std::move(moved);
  res.diagnosis = change.is_identity() ? "already monomial" : "diagonalized by a linear change";
  return res;
}

// Rows of the new coordinates for constant fields: completes the constant
// vectors to a basis and inverts, so each field becomes a coordinate partial.
MonomializeResult straighten_constant_fields(const DistributionGens& theta, CoefficientRing ring) {
  const std::size_t n = theta.nvars();
  MonomializeResult res;
  linalg::Matrix cols;
  for (const auto& x : theta.gens) {
    LinearPart lp = linear_part(x);
    for (const auto& a : x.coefficients())
      if (a.degree() > 0) {
        res.diagnosis = "regular generator with nonconstant coefficients";
        return res;
      }
    cols.push_back(lp.constant);
  }
  if (linalg::rank(cols) < cols.size()) {
    res.diagnosis = "constant generators are linearly dependent";
    return res;
  }
  linalg::Matrix basis = cols;
  for (std::size_t j = 0; j < n && basis.size() < n; ++j) {
    linalg::Row e(n, Rational(0));
    e[j] = 1;
    basis.push_back(e);
    if (linalg::rank(basis) < basis.size()) basis.pop_back();
  }
  // Columns of q are the basis vectors; new = q^{-1} old.
  linalg::Matrix q = linalg::transpose(basis);
  auto p = linalg::inverse(q);
  return try_change(theta, ring, CoordinateChange::affine(*p, origin(n)), "constant generators not straightened");
}

}  // namespace

MonomializeResult monomialize_linear(const DistributionGens& theta, CoefficientRing ring) {
  const std::size_t n = theta.nvars();
  {
    DistributionGens reduced = reduce_against_partials(theta);
    DistributionGens scaled = ring == CoefficientRing::kZ ? clear_denominators(reduced) : reduced;
    if (check_monomial_basis(scaled, ring).ok) {
      MonomializeResult res;
      res.change = CoordinateChange::identity(n);
      res.transformed = std::move(scaled);
      res.diagnosis = "already monomial";
      return res;
    }
  }
  const Derivation* first = nullptr;
  for (const auto& x : theta.gens)
    if (is_singular_at_origin(x)) {
      first = &x;
      break;
    }
  if (first == nullptr) return straighten_constant_fields(theta, ring);

  MonomializeResult res;
  const linalg::Matrix a = linear_part(*first).linear;
  if (linalg::is_nilpotent(a)) {
    res.diagnosis = "nilpotent linear part";
    return res;
  }
  auto roots = linalg::rational_roots(linalg::characteristic_polynomial(a));
  unsigned found = 0;
  for (const auto& [r, mult] : roots) found += mult;
  if (found < n) {
    res.diagnosis = "non-rational eigenvalues";
    return res;
  }
  // New coordinates y = P x with P A = diag P: rows of P are left eigenvectors.
  linalg::Matrix rows;
  for (const auto& [lambda, mult] : roots) {
    linalg::Matrix shifted = linalg::transpose(a);
    for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= lambda;
    auto space = linalg::nullspace(shifted);
    if (space.size() < mult) {
      res.diagnosis = "not diagonalizable";
      return res;
    }
    for (const auto& v : linalg::rref(space).reduced) rows.push_back(linalg::primitive_integer(v));
  }
  auto cols = assign_columns(rows);
  linalg::Matrix p = linalg::zeros(n, n);
  for (std::size_t r = 0; r < n; ++r) p[(*cols)[r]] = rows[r];
  const bool linear_only = std::all_of(theta.gens.begin(), theta.gens.end(), [](const Derivation& x) {
    return std::all_of(x.coefficients().begin(), x.coefficients().end(),
                       [](const Polynomial& c) { return c.degree() <= 1; });
  });
  return try_change(theta, ring, CoordinateChange::affine(std::move(p), origin(n)),
                    linear_only ? "generators not simultaneously diagonal" : "nonvanishing nonlinear remainder");
}

}  // namespace folres
