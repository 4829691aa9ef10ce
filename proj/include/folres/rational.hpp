#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace folres {

// Exact rationals. mpq_class keeps values canonical as long as every value is
// built through canonicalizing paths (arithmetic or parse_rational below).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-2", "1/2" into a canonical rational. Throws ParseError on junk.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// A point of an affine chart, one rational coordinate per chart variable.
using Point = std::vector<Rational>;

Point origin(std::size_t dim);

/// Parses a comma separated list of rationals, e.g. "0, 1/2, -3".
Point parse_point(std::string_view text);

}  // namespace folres
