#pragma once

#include <optional>
#include <vector>

#include "folres/rational.hpp"

// Dense exact linear algebra over Q for the small matrices that arise from
// linear parts of vector fields and coordinate changes.
namespace folres::linalg {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

Matrix identity(std::size_t n);
Matrix zeros(std::size_t rows, std::size_t cols);
Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
Row apply(const Matrix& a, const Row& v);
bool is_zero(const Matrix& a);

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

/// Reduced row echelon form.
Echelon rref(const Matrix& a);
std::size_t rank(const Matrix& a);

/// Basis of {v : a v = 0}, one vector per free column.
std::vector<Row> nullspace(const Matrix& a);

Rational determinant(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

/// Coefficients c_0..c_n of det(t I - a), c_n = 1.
std::vector<Rational> characteristic_polynomial(const Matrix& a);

/// Distinct rational roots of sum c_i t^i with multiplicities, ascending.
std::vector<std::pair<Rational, unsigned>> rational_roots(const std::vector<Rational>& coeffs);

bool is_nilpotent(const Matrix& a);

/// Scales v to a primitive integer vector whose first nonzero entry is positive.
Row primitive_integer(const Row& v);

}  // namespace folres::linalg
