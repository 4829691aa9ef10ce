#include "folres/linalg.hpp"

#include <algorithm>

#include "folres/error.hpp"

namespace folres::linalg {

Matrix identity(std::size_t n) {
  Matrix m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, Row(cols, Rational(0))); }

Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t = zeros(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  Matrix c = zeros(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw DimensionMismatch("matrix product shape mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

Row apply(const Matrix& a, const Row& v) {
  Row out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  }
  return out;
}

bool is_zero(const Matrix& a) {
  for (const auto& r : a)
    for (const auto& x : r)
      if (x != 0) return false;
  return true;
}

Echelon rref(const Matrix& a) {
  Echelon e{a, {}};
  Matrix& m = e.reduced;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

std::vector<Row> nullspace(const Matrix& a) {
  if (a.empty()) return {};
  const std::size_t cols = a[0].size();
  Echelon e = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Row> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Row v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix m = a;
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[c].size() != n) throw DimensionMismatch("determinant of a non-square matrix");
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return Matrix{};
  Matrix aug = zeros(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DimensionMismatch("inverse of a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.reduced[i][n + j];
  return inv;
}

std::vector<Rational> characteristic_polynomial(const Matrix& a) {
  // Faddeev-LeVerrier; exact over Q.
  const std::size_t n = a.size();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  Matrix m = zeros(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix am = multiply(a, m);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = std::move(am);
    Matrix amk = multiply(a, m);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk[i][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Synthetic division by (t - r); returns the quotient if r is a root.
std::optional<std::vector<Rational>> deflate(const std::vector<Rational>& c, const Rational& r) {
  const std::size_t n = c.size() - 1;
  std::vector<Rational> q(n, Rational(0));
  Rational acc = 0;
  for (std::size_t i = n + 1; i-- > 1;) {
    acc = acc * r + c[i];
    q[i - 1] = acc;
  }
  if (acc * r + c[0] != 0) return std::nullopt;
  return q;
}

}  // namespace

std::vector<std::pair<Rational, unsigned>> rational_roots(const std::vector<Rational>& coeffs) {
  std::vector<Rational> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::vector<std::pair<Rational, unsigned>> roots;
  if (c.size() <= 1) return roots;
  unsigned zero_mult = 0;
  while (c.front() == 0) {
    c.erase(c.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) roots.push_back({Rational(0), zero_mult});
  // Clear denominators so the rational root theorem applies.
  Integer den = 1;
  for (const auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> ic;
  for (const auto& x : c) ic.push_back(x.get_num() * (den / x.get_den()));
  for (const auto& p : positive_divisors(ic.front()))
    for (const auto& q : positive_divisors(ic.back()))
      for (int sign : {1, -1}) {
        Rational r(p * sign, q);
        r.canonicalize();
        if (r.get_den() != q) continue;  // already tried in lowest terms
        unsigned mult = 0;
        while (c.size() > 1) {
          auto d = deflate(c, r);
          if (!d) break;
          c = std::move(*d);
          ++mult;
        }
        if (mult > 0) roots.push_back({r, mult});
      }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return roots;
}

bool is_nilpotent(const Matrix& a) {
  auto c = characteristic_polynomial(a);
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

Row primitive_integer(const Row& v) {
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  Integer g = 0;
  for (const auto& x : v) {
    Integer num = x.get_num() * (den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return v;
  Rational scale(den, g);
  scale.canonicalize();
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0) scale = -scale;
      break;
    }
  Row out;
  for (const auto& x : v) out.push_back(x * scale);
  return out;
}

}  // namespace folres::linalg
