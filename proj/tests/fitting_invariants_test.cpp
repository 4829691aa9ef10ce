#include <gtest/gtest.h>

#include <random>

#include "folres/error.hpp"
#include "folres/fitting.hpp"
#include "test_util.hpp"

using namespace folres;
using namespace folres::testing;

TEST(Fitting, Examples) {
  auto theta = Theta("d/dx, d/dy", 2);
  EXPECT_TRUE(fitting_ideal(theta, I("x"), 1).is_unit());
  Ideal f2 = fitting_ideal(theta, I("x"), 2);
  EXPECT_TRUE(f2.is_zero());
  EXPECT_TRUE(I("x").contains(f2));
  Ideal f1 = fitting_ideal(theta, I("x^2 - z"), 1);
  EXPECT_TRUE(ideal_equal(f1, I("x")));
  EXPECT_TRUE(ideal_equal(f1 + I("x^2 - z"), I("x, z")));
}

TEST(Fitting, TooFewRowsGivesZero) {
  EXPECT_TRUE(fitting_ideal(Theta("d/dx", 1), I("x, y"), 2).is_zero());
}

TEST(Invariant, Examples) {
  EXPECT_TRUE(is_invariant(Theta("d/dx", 1), I("y")));
  EXPECT_FALSE(is_invariant(Theta("d/dz + z*d/dx", 1), I("x, y")));
  EXPECT_TRUE(is_invariant(Theta("x*d/dx - y*d/dy", 1), I("x, y")));
}

TEST(Transverse, Examples) {
  EXPECT_TRUE(is_totally_transverse(Theta("d/dx, d/dy", 2), I("x, y")));
  EXPECT_TRUE(is_totally_transverse(Theta("d/dx", 1), I("x, y")));
  EXPECT_FALSE(is_totally_transverse(Theta("d/dx", 1), I("y")));
}

TEST(Chain, Examples) {
  auto c = tangency_chain(Theta("d/dz + z*d/dx", 1), I("x, y"));
  ASSERT_TRUE(c.stabilized);
  EXPECT_EQ(c.stabilization_index, 2u);
  EXPECT_TRUE(ideal_equal(c.ideals[0], I("x, y")));
  EXPECT_TRUE(ideal_equal(c.ideals[1], I("x, y, z")));
  EXPECT_TRUE(c.ideals[2].is_unit());

  auto inv = tangency_chain(Theta("d/dx", 1), I("y"));
  ASSERT_TRUE(inv.stabilized);
  EXPECT_EQ(inv.stabilization_index, 0u);
  EXPECT_TRUE(ideal_equal(inv.ideals[1], I("y")));

  auto one = tangency_chain(Theta("d/dx", 1), I("x"));
  ASSERT_TRUE(one.stabilized);
  EXPECT_EQ(one.stabilization_index, 1u);
  EXPECT_TRUE(one.ideals[1].is_unit());
}

TEST(Chain, MaxStepsReportsUnstabilized) {
  auto c = tangency_chain(Theta("d/dz + z*d/dx", 1), I("x, y"), 1);
  EXPECT_FALSE(c.stabilized);
  EXPECT_THROW(tg_invariant_at_point(c, origin(3)), NotStabilized);
  EXPECT_THROW(differential_closure(Theta("d/dz + z*d/dx", 1), I("x, y"), 1), NotStabilized);
}

TEST(TgInvariant, Examples) {
  auto a = tg_invariant_at_point(tangency_chain(Theta("d/dz + z*d/dx", 1), I("x, y")), origin(3));
  EXPECT_EQ(a.nu, 2u);
  EXPECT_EQ(a.type, 1);
  auto b = tg_invariant_at_point(tangency_chain(Theta("d/dx", 1), I("y")), origin(3));
  EXPECT_EQ(b.nu, 0u);
  EXPECT_EQ(b.type, 2);
  auto c = tg_invariant_at_point(tangency_chain(Theta("d/dx", 1, kXY), I("x*y", kXY)), Point{0, 1});
  EXPECT_EQ(c.nu, 1u);
  EXPECT_EQ(c.type, 1);
}

TEST(Closure, Examples) {
  EXPECT_TRUE(differential_closure(Theta("d/dz + z*d/dx", 1), I("x, y")).is_unit());
  EXPECT_TRUE(ideal_equal(differential_closure(Theta("d/dx", 1), I("y")), I("y")));
  EXPECT_TRUE(ideal_equal(differential_closure(Theta("x*d/dx - y*d/dy", 1), I("x + y")), I("x, y")));
}

TEST(Regularity, Criterion) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    Point p{coord(rng), coord(rng), coord(rng)};
    EXPECT_TRUE(regular_at(Theta("d/dx, d/dy", 2), p));
    EXPECT_TRUE(regular_at(Theta("d/dx, d/dy, d/dz", 3), p));
  }
  EXPECT_FALSE(regular_at(Theta("x*d/dx", 1), origin(3)));
  EXPECT_TRUE(regular_at(Theta("x*d/dx", 1), Point{1, 0, 0}));
}

TEST(Properties, ChainMonotoneAndClosureInvariant) {
  std::mt19937 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    DistributionGens theta({random_derivation(rng, 3, 1, 2)}, 1);
    if (theta.gens[0].is_zero()) continue;
    Ideal i(3, {random_polynomial(rng, 3, 2, 2), random_polynomial(rng, 3, 2, 2)});
    auto chain = tangency_chain(theta, i);
    for (std::size_t k = 0; k + 1 < chain.ideals.size(); ++k) EXPECT_TRUE(chain.ideals[k + 1].contains(chain.ideals[k]));
    if (!chain.stabilized) continue;
    EXPECT_TRUE(is_invariant(theta, differential_closure(theta, i)));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(Properties, GeneratorIndependence) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    DistributionGens theta({random_derivation(rng, 3, 1, 2), random_derivation(rng, 3, 1, 2)}, 2);
    Polynomial f = random_polynomial(rng, 3, 2, 3), g = random_polynomial(rng, 3, 2, 3);
    Ideal i(3, {f, g});
    Polynomial a = random_polynomial(rng, 3, 1, 2), b = random_polynomial(rng, 3, 1, 2);
    Ideal i_more(3, {f, g, a * f + b * g});
    DistributionGens theta_more = theta;
    theta_more.gens.push_back(a * theta.gens[0] + b * theta.gens[1]);
    for (std::size_t k = 1; k <= 2; ++k) {
      Ideal base = fitting_ideal(theta, i, k) + i;
      EXPECT_TRUE(ideal_equal(base, fitting_ideal(theta, i_more, k) + i_more));
      EXPECT_TRUE(ideal_equal(base, fitting_ideal(theta_more, i, k) + i));
    }
  }
}

TEST(Properties, MtgConsistency) {
  struct Case {
    std::string field, ideal;
  };
  for (const auto& c : std::vector<Case>{{"d/dz + z*d/dx", "x, y"}, {"d/dx", "x^2 + y"}, {"d/dx + x*d/dy", "y - x^3"}}) {
    auto chain = tangency_chain(Theta(c.field, 1), I(c.ideal));
    auto tg = tg_invariant_at_point(chain, origin(3));
    ASSERT_EQ(tg.type, 1) << c.field;
    ASSERT_GE(tg.nu, 1u);
    EXPECT_FALSE(chain.ideals[tg.nu - 1].is_unit());
    EXPECT_TRUE(chain.ideals[tg.nu].is_unit());
  }
}

TEST(Monomiality, Analysis) {
  auto reg = analyze_monomiality(Theta("z*d/dz + (1 - 2*x)*d/dx - 2*y*d/dy", 1), CoefficientRing::kZ, origin(3));
  EXPECT_TRUE(reg.monomial);
  EXPECT_EQ(reg.method, "regular");
  auto basis = analyze_monomiality(Theta("z*d/dz - x*d/dx - y*d/dy", 1), CoefficientRing::kZ, origin(3));
  EXPECT_TRUE(basis.monomial);
  EXPECT_EQ(basis.method, "basis");
  auto lin = analyze_monomiality(Theta("z*d/dz + (z - x)*d/dx - y*d/dy", 1), CoefficientRing::kZ, origin(3));
  EXPECT_TRUE(lin.monomial);
  EXPECT_EQ(lin.method, "linear-change");
  auto nil = analyze_monomiality(Theta("x*z*d/dz + (z - x)*x*d/dx - z*y*d/dy", 1), CoefficientRing::kZ, origin(3));
  EXPECT_FALSE(nil.monomial);
  EXPECT_EQ(nil.diagnosis, "nilpotent linear part");
}
