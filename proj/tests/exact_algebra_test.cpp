#include <gtest/gtest.h>

#include "folres/error.hpp"
#include "folres/laurent.hpp"
#include "folres/polynomial.hpp"
#include "folres/text.hpp"
#include "test_util.hpp"

using namespace folres;
using namespace folres::testing;

TEST(Rational, ParsesToLowestTerms) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("0/5").get_den(), 1);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(P("x + y", kXY).evaluate({1, 2}), 3);
  EXPECT_EQ(P("x^2 - z").evaluate(origin(3)), 0);
  VarNames x{"x"};
  EXPECT_EQ(P("2*x - 3", x).evaluate({Rational(1, 2)}), -2);
}

TEST(Evaluate, DimensionMismatch) { EXPECT_THROW(P("x + y", kXY).evaluate({1}), DimensionMismatch); }

TEST(Derive, Examples) {
  EXPECT_EQ(P("x^2*y").derive(0), P("2*x*y"));
  EXPECT_EQ(P("x").derive(1), P("0"));
  EXPECT_EQ(P("x^2 - z").derive(0), P("2*x"));
  EXPECT_THROW(P("x").derive(3), IndexOutOfRange);
}

TEST(Substitute, Examples) {
  VarNames primed{"x'", "y'", "z'"};
  // x -> z'x' in the z-chart.
  std::map<std::size_t, Polynomial> chart{{0, P("z'*x'", primed)}};
  EXPECT_EQ(P("x").substitute(chart, 3), P("x'*z'", primed));
  std::vector<Polynomial> id{P("x"), P("y"), P("z")};
  EXPECT_EQ(P("x + y").substitute(id), P("x + y"));
  // 2x'-z' composed with the inverse change x' = (x + z)/2 gives back x.
  std::vector<Polynomial> inverse{P("1/2*x + 1/2*z"), P("y"), P("z")};
  EXPECT_EQ(P("2*x - z").substitute(inverse), P("x"));
}

TEST(Substitute, UnmappedVariable) {
  std::map<std::size_t, Polynomial> partial{{0, P("y")}};
  EXPECT_THROW(P("x + z").substitute(partial, 3), UnmappedVariable);
  EXPECT_THROW(P("x").substitute(std::vector<Polynomial>{P("x")}), UnmappedVariable);
}

TEST(ExactDivide, Examples) {
  VarNames primed{"x'", "y'", "z'"};
  EXPECT_EQ(P("x'*z'", primed).exact_divide_by_variable(2, 1), P("x'", primed));
  EXPECT_THROW(P("1").exact_divide_by_variable(0, 1), NotDivisible);
  EXPECT_EQ(P("x^2*y + x^3").exact_divide_by_variable(0, 2), P("y + x"));
}

TEST(DivideExact, PolynomialDivisor) {
  EXPECT_EQ(P("x^2 - y^2").divide_exact(P("x - y")), P("x + y"));
  EXPECT_THROW(P("x^2 + 1").divide_exact(P("x - y")), NotDivisible);
}

TEST(Text, CanonicalPrinting) {
  VarNames primed{"x'", "y'", "z'"};
  EXPECT_EQ(format_polynomial(P("z' - x'", primed), primed), "-x' + z'");
  EXPECT_EQ(format_polynomial(P("2*x^2*y - 1/2"), kXYZ), "2*x^2*y - 1/2");
  EXPECT_EQ(format_polynomial(P("0"), kXYZ), "0");
  EXPECT_EQ(format_derivation(D("z*d/dz + (1 - 2*x)*d/dx - 2*y*d/dy"), kXYZ), "(-2*x + 1)*d/dx - 2*y*d/dy + z*d/dz");
  EXPECT_EQ(format_derivation(D("-d/dx"), kXYZ), "-d/dx");
}

TEST(Text, RoundTripRandom) {
  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    Polynomial f = random_polynomial(rng, 3, 4, 5) * Rational(1, 1 + k % 4);
    EXPECT_EQ(P(format_polynomial(f, kXYZ)), f);
    Derivation x = random_derivation(rng, 3, 2, 3);
    EXPECT_EQ(D(format_derivation(x, kXYZ)), x);
  }
}

TEST(Text, PositionedErrors) {
  try {
    P("x + w");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(P("x +"), ParseError);
  EXPECT_THROW(P("d/dx"), ParseError);
  EXPECT_THROW(D("d/dx * d/dy"), ParseError);
}

TEST(Properties, RingAxioms) {
  std::mt19937 rng(11);
  for (int k = 0; k < 200; ++k) {
    Polynomial f = random_polynomial(rng, 3, 3, 4);
    Polynomial g = random_polynomial(rng, 3, 3, 4);
    Polynomial h = random_polynomial(rng, 3, 3, 4);
    EXPECT_EQ((f + g) * h, f * h + g * h);
    EXPECT_EQ(f * g, g * f);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_TRUE((f - f).is_zero());
  }
}

TEST(Properties, Leibniz) {
  std::mt19937 rng(12);
  for (int k = 0; k < 200; ++k) {
    Polynomial f = random_polynomial(rng, 3, 3, 4);
    Polynomial g = random_polynomial(rng, 3, 3, 4);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ((f * g).derive(i), f * g.derive(i) + g * f.derive(i));
  }
}

TEST(Properties, SubstituteIsRingHomomorphism) {
  std::mt19937 rng(13);
  for (int k = 0; k < 100; ++k) {
    std::vector<Polynomial> images;
    for (int i = 0; i < 3; ++i) images.push_back(random_polynomial(rng, 3, 2, 3));
    Polynomial f = random_polynomial(rng, 3, 2, 3);
    Polynomial g = random_polynomial(rng, 3, 2, 3);
    EXPECT_EQ((f + g).substitute(images), f.substitute(images) + g.substitute(images));
    EXPECT_EQ((f * g).substitute(images), f.substitute(images) * g.substitute(images));
  }
}

TEST(Properties, ExactDivisionInvertsMultiplication) {
  std::mt19937 rng(14);
  for (int k = 0; k < 200; ++k) {
    Polynomial f = random_polynomial(rng, 3, 3, 4);
    std::size_t i = static_cast<std::size_t>(k % 3);
    Monomial::Exponent e = static_cast<Monomial::Exponent>(k % 4);
    Polynomial shifted = f.times_monomial(Monomial::variable(3, i, e), 1);
    EXPECT_EQ(shifted.exact_divide_by_variable(i, e), f);
  }
}

TEST(Laurent, CanonicalizationCancelsOnePole) {
  std::vector<bool> ex{false, false, true};
  Polynomial z = P("z");
  LaurentPolynomial f(P("x + y"), Monomial::variable(3, 2, 2), ex);
  EXPECT_EQ(f.pole_order(2), 2u);
  LaurentPolynomial g = z * f;
  EXPECT_EQ(g.pole_order(2), 1u);
  EXPECT_EQ(g.numerator(), P("x + y"));
  EXPECT_EQ((z * g).to_polynomial(), P("x + y"));
}

TEST(Laurent, RandomizedPoleReduction) {
  std::mt19937 rng(15);
  std::vector<bool> ex{true, false, true};
  for (int k = 0; k < 100; ++k) {
    Polynomial f = random_polynomial(rng, 3, 3, 4);
    if (f.is_zero()) continue;
    std::size_t i = k % 2 == 0 ? 0 : 2;
    LaurentPolynomial lf(f, Monomial::variable(3, i, 3), ex);
    if (lf.pole_order(i) == 0) continue;
    LaurentPolynomial once = Polynomial::variable(3, i) * lf;
    EXPECT_EQ(once.pole_order(i) + 1, lf.pole_order(i));
  }
}

TEST(Laurent, PoleOnlyOnExceptional) {
  EXPECT_THROW(LaurentPolynomial(P("x"), Monomial::variable(3, 0), {false, false, true}), PreconditionFailed);
}
