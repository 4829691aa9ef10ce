#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "folres/derivation.hpp"
#include "folres/laurent.hpp"
#include "folres/polynomial.hpp"

// Canonical textual syntax shared by the session language and reports:
// polynomials use + - * ^ over identifiers and rational literals; fields add
// the d/dx tokens, e.g. "d/dz + z*d/dx" or "(z - x)*d/dx".
namespace folres {

using VarNames = std::vector<std::string>;

/// Terms in grevlex-descending order, e.g. "-x' + z'", "2*x^2*y - 1/2".
std::string format_polynomial(const Polynomial& f, const VarNames& names);
std::string format_monomial(const Monomial& m, const VarNames& names);
/// Coordinate order, e.g. "(-2*x + 1)*d/dx - 2*y*d/dy + z*d/dz".
std::string format_derivation(const Derivation& x, const VarNames& names);
/// "(N)/(x^k)" or plain polynomial text when there is no pole.
std::string format_laurent(const LaurentPolynomial& f, const VarNames& names);
std::string format_laurent_derivation(const LaurentDerivation& x, const VarNames& names);
std::string format_list(const std::vector<Polynomial>& fs, const VarNames& names);

/// Parse errors carry the column inside `text` (line 1).
Polynomial parse_polynomial(std::string_view text, const VarNames& names);
std::vector<Polynomial> parse_polynomial_list(std::string_view text, const VarNames& names);
Derivation parse_derivation(std::string_view text, const VarNames& names);
std::vector<Derivation> parse_derivation_list(std::string_view text, const VarNames& names);

bool is_identifier(std::string_view s);

}  // namespace folres
