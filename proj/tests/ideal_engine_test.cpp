#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "folres/error.hpp"
#include "folres/groebner.hpp"
#include "folres/ideal.hpp"
#include "test_util.hpp"

using namespace folres;
using namespace folres::testing;

namespace {

std::vector<Polynomial> basis_of(const std::string& gens, MonomialOrder ord, const VarNames& names = kXYZ) {
  return groebner(names.size(), parse_polynomial_list(gens, names), ord).elements;
}

}  // namespace

TEST(Groebner, Examples) {
  EXPECT_EQ(basis_of("x", MonomialOrder::lex()), std::vector<Polynomial>{P("x")});
  auto g = basis_of("x*y - 1, y^2 - 1", MonomialOrder::lex(), kXY);
  EXPECT_EQ(g, (std::vector<Polynomial>{P("x - y", kXY), P("y^2 - 1", kXY)}));
  EXPECT_TRUE(groebner(3, {}, MonomialOrder::grevlex()).elements.empty());
  EXPECT_TRUE(groebner(3, {Polynomial(3)}, MonomialOrder::grevlex()).elements.empty());
}

TEST(Groebner, Certificate) {
  auto G = groebner(3, parse_polynomial_list("x^2 - y*z, x*y - z^2, x*z - y^2 + 1", kXYZ), MonomialOrder::grevlex());
  EXPECT_TRUE(verify_groebner(G));
  auto L = groebner(3, G.elements, MonomialOrder::lex());
  EXPECT_TRUE(verify_groebner(L));
}

TEST(NormalForm, Examples) {
  auto G = groebner(3, {P("x")}, MonomialOrder::grevlex());
  EXPECT_TRUE(normal_form(P("x^2"), G).is_zero());
  EXPECT_EQ(normal_form(P("1"), G), P("1"));
  auto H = groebner(3, {P("x - y")}, MonomialOrder::grevlex());
  EXPECT_EQ(normal_form(P("x + y"), H), P("2*y"));
}

TEST(Contains, Examples) {
  EXPECT_TRUE(I("x, y").contains(P("x + y")));
  EXPECT_FALSE(I("x^2 - z, y").contains(P("x")));
  EXPECT_TRUE(I("y").contains(P("0")));
  EXPECT_THROW(I("y").contains(P("x", kXY)), DimensionMismatch);
}

TEST(IdealEqual, Examples) {
  EXPECT_TRUE(ideal_equal(I("2*x, x^2 - z"), I("x, z")));
  EXPECT_FALSE(ideal_equal(I("x"), I("x^2")));
  EXPECT_TRUE(ideal_equal(I("x + y, x - y"), I("x, y")));
}

TEST(IdealQuotient, Examples) {
  EXPECT_TRUE(ideal_equal(ideal_quotient(I("x*y"), I("x")), I("y")));
  EXPECT_TRUE(ideal_equal(ideal_quotient(I("x"), I("1")), I("x")));
  EXPECT_TRUE(ideal_equal(ideal_quotient(I("x^2, x*y"), I("x")), I("x, y")));
  EXPECT_TRUE(ideal_quotient(I("x, y"), I("x, y, z")).contains(P("x")));
}

TEST(IdealIntersection, Basic) {
  EXPECT_TRUE(ideal_equal(ideal_intersection(I("x"), I("y")), I("x*y")));
  EXPECT_TRUE(ideal_equal(ideal_intersection(I("x^2, y"), I("x")), I("x^2, x*y")));
}

TEST(UnitIdeal, Examples) {
  EXPECT_TRUE(I("x, 1 + x").is_unit());
  EXPECT_FALSE(I("x, y").is_unit());
  EXPECT_TRUE(I("3").is_unit());
  EXPECT_FALSE(I("").is_unit());
}

TEST(Properties, NormalFormDecidesMembership) {
  std::mt19937 rng(21);
  for (int k = 0; k < 60; ++k) {
    std::vector<Polynomial> gens;
    for (int i = 0; i < 2; ++i) gens.push_back(random_polynomial(rng, 3, 2, 3));
    Ideal J(3, gens);
    // Inside: a random combination.
    Polynomial in(3);
    for (const auto& g : gens) in += random_polynomial(rng, 3, 2, 2) * g;
    EXPECT_TRUE(J.contains(in));
    EXPECT_TRUE(J.normal_form(in).is_zero());
    Polynomial f = random_polynomial(rng, 3, 3, 3);
    EXPECT_EQ(J.contains(f), J.normal_form(f).is_zero());
  }
}

TEST(Properties, MonomialIdealsMatchDivisibility) {
  // Every monomial of degree <= 3 in 2 variables as a generator candidate;
  // ideals from pairs, membership of every monomial of degree <= 4.
  std::vector<Monomial> monos;
  for (unsigned a = 0; a <= 3; ++a)
    for (unsigned b = 0; a + b <= 3; ++b) monos.push_back(Monomial(std::vector<Monomial::Exponent>{a, b}));
  std::vector<Monomial> probes;
  for (unsigned a = 0; a <= 4; ++a)
    for (unsigned b = 0; a + b <= 4; ++b) probes.push_back(Monomial(std::vector<Monomial::Exponent>{a, b}));
  for (std::size_t i = 0; i < monos.size(); ++i)
    for (std::size_t j = i; j < monos.size(); ++j) {
      Ideal J(2, {Polynomial(monos[i], 1), Polynomial(monos[j], 1)});
      for (const auto& m : probes) {
        bool oracle = monos[i].divides(m) || monos[j].divides(m);
        EXPECT_EQ(J.contains(Polynomial(m, 1)), oracle);
      }
    }
}

TEST(Properties, EqualityIsOrderIndependent) {
  std::mt19937 rng(22);
  for (int k = 0; k < 30; ++k) {
    std::vector<Polynomial> gens{random_polynomial(rng, 3, 2, 3), random_polynomial(rng, 3, 2, 3)};
    Ideal J(3, gens);
    std::vector<Polynomial> more = gens;
    more.push_back(gens[0] * random_polynomial(rng, 3, 1, 2) + gens[1]);
    Ideal K(3, more);
    EXPECT_TRUE(ideal_equal(J, J));
    EXPECT_EQ(ideal_equal(J, K), ideal_equal(K, J));
    // Same ideal under lex: compare reduced bases.
    EXPECT_EQ(J.basis(MonomialOrder::lex()).elements, Ideal(3, J.basis().elements).basis(MonomialOrder::lex()).elements);
  }
}

TEST(Properties, QuotientCharacterization) {
  std::mt19937 rng(23);
  for (int k = 0; k < 25; ++k) {
    Ideal A(3, {random_polynomial(rng, 3, 2, 2), random_polynomial(rng, 3, 2, 2)});
    Ideal B(3, {random_polynomial(rng, 3, 1, 2)});
    if (B.is_zero()) continue;
    Ideal Q = ideal_quotient(A, B);
    // Every generator of Q multiplies B into A.
    for (const auto& q : Q.generators())
      for (const auto& b : B.generators()) EXPECT_TRUE(A.contains(q * b));
    // Conversely, random elements f with f*B in A belong to Q.
    for (int t = 0; t < 5; ++t) {
      Polynomial f = random_polynomial(rng, 3, 2, 3);
      bool in_a = true;
      for (const auto& b : B.generators()) in_a = in_a && A.contains(f * b);
      EXPECT_EQ(Q.contains(f), in_a);
    }
  }
}

TEST(Observer, SeesEveryBasis) {
  int seen = 0;
  gb::set_observer([&](const std::vector<gb::Vec>& b, const gb::TermOrder& o) {
    ++seen;
    EXPECT_TRUE(gb::is_groebner(b, o));
  });
  (void)ideal_equal(I("x*y - z, y^2 - x"), I("x*y - z, y^2 - x, y*z - x^2"));
  gb::set_observer(nullptr);
  EXPECT_GT(seen, 0);
}

TEST(Cache, ConcurrentFillAgrees) {
  Ideal J = I("x^2 - y*z, y^2 - x*z, z^2 - x*y");
  std::vector<std::thread> threads;
  std::vector<std::vector<Polynomial>> results(4);
  for (int t = 0; t < 4; ++t) threads.emplace_back([&, t] { results[t] = J.basis().elements; });
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) EXPECT_EQ(results[t], results[0]);
}

TEST(Local, MembershipAtPoint) {
  Ideal i = I("y + x*y");
  EXPECT_FALSE(i.contains(P("y")));
  EXPECT_TRUE(locally_contains(i, P("y"), origin(3)));
  EXPECT_FALSE(locally_contains(i, P("y"), Point{-1, 0, 0}));
  EXPECT_TRUE(locally_equal(i, I("y"), origin(3)));
  EXPECT_FALSE(locally_contains(I("x, y"), P("z"), origin(3)));
}
