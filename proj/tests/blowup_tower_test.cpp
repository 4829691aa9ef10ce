#include <gtest/gtest.h>

#include <random>

#include "folres/blowup.hpp"
#include "folres/error.hpp"
#include "folres/fitting.hpp"
#include "test_util.hpp"

using namespace folres;
using namespace folres::testing;

namespace {

const VarNames kXYp{"x", "y'"};
const VarNames kXVW{"x", "v", "w"};

ChartMap chart(std::size_t n, std::vector<std::size_t> center, std::size_t c) {
  return blowup_chart(n, BlowupCenter{std::move(center), std::nullopt}, c);
}

FoliatedChart make_chart(const std::string& fields, const std::string& ideal, const VarNames& names = kXYZ) {
  return FoliatedChart{names, Theta(fields, 1, names), I(ideal, names), {}};
}

}  // namespace

TEST(Chart, Examples) {
  auto m = chart(3, {0, 1, 2}, 2);
  EXPECT_EQ(m.images(), (std::vector<Polynomial>{P("x*z"), P("y*z"), P("z")}));
  auto m2 = chart(3, {0, 1}, 0);
  EXPECT_EQ(m2.images(), (std::vector<Polynomial>{P("x"), P("x*y"), P("z")}));
  EXPECT_THROW(chart(3, {0, 1}, 2), PreconditionFailed);
  EXPECT_THROW(chart(3, {}, 0), PreconditionFailed);
  EXPECT_THROW(chart(3, {0, 4}, 0), IndexOutOfRange);
}

TEST(Transforms, Ideals) {
  auto m = chart(3, {0, 1, 2}, 2);
  EXPECT_TRUE(ideal_equal(total_transform_ideal(I("x, y"), m), I("x*z, y*z")));
  EXPECT_TRUE(total_transform_ideal(I("1"), m).is_unit());
  EXPECT_TRUE(ideal_equal(total_transform_ideal(I("z"), m), I("z")));
  EXPECT_TRUE(ideal_equal(controlled_transform_ideal(I("x, y"), m), I("x, y")));
  EXPECT_THROW(controlled_transform_ideal(I("x + 1"), m), OrderOneViolation);
  EXPECT_TRUE(controlled_transform_ideal(I("x"), chart(3, {0, 1}, 0)).is_unit());
}

TEST(Pullback, Examples) {
  auto m = chart(3, {0, 1, 2}, 2);
  auto p = pullback_derivation(D("d/dz + z*d/dx"), m);
  EXPECT_EQ(p.pole_order(2), 1u);
  Monomial z = Monomial::variable(3, 2);
  // (1/z)(z d/dz - x d/dx - y d/dy) + d/dx
  EXPECT_EQ(p.cleared_by(z), D("z*d/dz - x*d/dx - y*d/dy + z*d/dx"));

  auto m2 = chart(2, {0, 1}, 0);
  auto euler = pullback_derivation(D("x*d/dx + y*d/dy", kXY), m2);
  EXPECT_TRUE(euler.is_analytic());
  EXPECT_EQ(euler.to_derivation(), D("x*d/dx", kXY));
  auto dx = pullback_derivation(D("d/dx", kXY), m2);
  EXPECT_EQ(dx.pole_order(0), 1u);
  EXPECT_EQ(dx.cleared_by(Monomial::variable(2, 0)), D("x*d/dx - y*d/dy", kXY));
}

TEST(Pullback, DefiningIdentityAndPoleBound) {
  std::mt19937 rng(21);
  const std::vector<std::pair<std::vector<std::size_t>, std::size_t>> centers{
      {{0, 1, 2}, 0}, {{0, 1, 2}, 2}, {{0, 1}, 1}, {{1, 2}, 2}, {{0}, 0}};
  for (int trial = 0; trial < 30; ++trial) {
    const auto& [s, c] = centers[static_cast<std::size_t>(trial) % centers.size()];
    auto m = chart(3, s, c);
    Derivation x = random_derivation(rng, 3, 2, 3);
    Polynomial f = random_polynomial(rng, 3, 3, 4);
    auto p = pullback_derivation(x, m);
    EXPECT_LE(p.pole_order(c), 1u);
    LaurentPolynomial lhs = p.apply(m.pullback(f));
    EXPECT_TRUE(lhs.is_polynomial());
    EXPECT_EQ(lhs.to_polynomial(), m.pullback(x.apply(f)));
  }
}

TEST(Adapted, Examples) {
  auto m = chart(3, {0, 1, 2}, 2);
  auto theta = Theta("d/dz + z*d/dx", 1);
  auto rep = admissibility_report(theta, I("x, y, z"));
  auto split = transverse_split(theta, I("x, y, z"), rep).split;
  ASSERT_TRUE(split.has_value());
  DivisorLedger ledger = push_ledger({}, m, 1);
  auto out = adapted_strict_transform(theta, &*split, m, ledger);
  ASSERT_EQ(out.gens.size(), 1u);
  EXPECT_EQ(out.gens[0], D("z*d/dz + (z - x)*d/dx - y*d/dy"));

  auto m2 = chart(2, {0, 1}, 0);
  auto inv = adapted_strict_transform(Theta("x*d/dx + y*d/dy", 1, kXY), nullptr, m2, push_ledger({}, m2, 1));
  EXPECT_EQ(inv.gens[0], D("x*d/dx", kXY));

  auto t2 = Theta("d/dx", 1, kXY);
  auto s2 = transverse_split(t2, I("x, y", kXY), admissibility_report(t2, I("x, y", kXY))).split;
  ASSERT_TRUE(s2.has_value());
  auto tr = adapted_strict_transform(t2, &*s2, m2, push_ledger({}, m2, 1));
  EXPECT_EQ(tr.gens[0], D("x*d/dx - y*d/dy", kXY));
}

TEST(Adapted, RejectsWrongCertificate) {
  // Treating a transverse center as invariant leaves a pole.
  auto m = chart(2, {0, 1}, 0);
  EXPECT_THROW(adapted_strict_transform(Theta("d/dx", 1, kXY), nullptr, m, {}), ConsistencyFailure);
}

TEST(Syzygies, Examples) {
  auto m = chart(3, {0, 1}, 0);
  std::vector<LaurentDerivation> in{pullback_derivation(D("d/dx", kXVW), m), pullback_derivation(D("d/dv", kXVW), m)};
  auto w = strict_closure_syzygies(in, m);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0], D("d/dx", kXVW));

  EXPECT_TRUE(strict_closure_syzygies({in[0]}, m).empty());

  auto point = chart(3, {0, 1, 2}, 0);
  std::vector<LaurentDerivation> in2{pullback_derivation(D("d/dx"), point), pullback_derivation(D("d/dy"), point)};
  EXPECT_TRUE(strict_closure_syzygies(in2, point).empty());
}

TEST(Ledger, PushForward) {
  DivisorLedger l{{"initial", 2}, {"initial", 1}};
  auto m = chart(3, {0, 1, 2}, 2);
  auto out = push_ledger(l, m, 1);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_FALSE(out[0].variable.has_value());
  EXPECT_EQ(out[1].variable, 1u);
  EXPECT_EQ(out[2].origin, "exceptional step 1");
  EXPECT_EQ(out[2].variable, 2u);
  auto change = CoordinateChange::affine({{2, 0, -1}, {0, 1, 0}, {0, 0, 1}}, origin(3));
  auto moved = push_ledger(out, change);
  EXPECT_EQ(moved[2].variable, 2u);
  auto mixed = push_ledger({{"initial", 0}}, change);
  EXPECT_FALSE(mixed[0].variable.has_value());
}

TEST(KSheaf, Examples) {
  auto c0 = make_chart("d/dz + z*d/dx", "x, y");
  Tower t(c0);
  EXPECT_EQ(k_sheaf(t, 1).exponents, (std::vector<long>{0, 0, 0}));
  auto r1 = blow_up(c0, BlowupCenter{{0, 1, 2}, std::nullopt}, 2, 1, primed(kXYZ));
  Tower t1 = t.extended(TowerStep{r1.map, std::nullopt}, r1.next);
  EXPECT_TRUE(ideal_equal(k_sheaf(t1, 1).ideal(), I("z")));
  EXPECT_TRUE(k_sheaf(t1, 0).ideal().is_unit());
  EXPECT_EQ(k_sheaf(t1, -1).exponents, (std::vector<long>{0, 0, -1}));
  EXPECT_THROW(k_sheaf(t1, -1).monomial(), PreconditionFailed);
  auto r2 = blow_up(r1.next, BlowupCenter{{0, 1, 2}, std::nullopt}, 2, 2, primed(r1.next.names));
  Tower t2 = t1.extended(TowerStep{r2.map, std::nullopt}, r2.next);
  EXPECT_EQ(k_sheaf(t2, 1).exponents, (std::vector<long>{0, 0, 2}));
}

TEST(Tower, ExtensionIsIndependent) {
  auto c0 = make_chart("d/dz + z*d/dx", "x, y");
  Tower base(c0);
  auto r = blow_up(c0, BlowupCenter{{0, 1, 2}, std::nullopt}, 2, 1, primed(kXYZ));
  auto a = base.extended(TowerStep{r.map, std::nullopt}, r.next);
  auto b = base.extended(TowerStep{std::nullopt, CoordinateChange::identity(3)}, c0);
  EXPECT_EQ(base.charts().size(), 1u);
  EXPECT_EQ(a.blowup_count(), 1u);
  EXPECT_EQ(b.blowup_count(), 0u);
  EXPECT_EQ(a.pull_to_current(P("x")), P("x*z"));
  EXPECT_THROW(base.extended(TowerStep{}, c0), PreconditionFailed);
}

TEST(BlowUp, WorkedExample) {
  auto c0 = make_chart("d/dz + z*d/dx", "x, y");
  auto r1 = blow_up(c0, BlowupCenter{{0, 1, 2}, std::nullopt}, 2, 1, primed(kXYZ));
  EXPECT_EQ(r1.mode, TransformMode::kSplit);
  EXPECT_TRUE(ideal_equal(r1.total, I("x*z, y*z")));
  EXPECT_TRUE(ideal_equal(r1.controlled, I("x, y")));
  EXPECT_EQ(r1.next.theta.gens[0], D("z*d/dz + (z - x)*d/dx - y*d/dy"));

  auto r2 = blow_up(r1.next, BlowupCenter{{0, 1, 2}, std::nullopt}, 2, 2, primed(r1.next.names));
  EXPECT_EQ(r2.mode, TransformMode::kInvariant);
  EXPECT_EQ(r2.next.theta.gens[0], D("z*d/dz + (1 - 2*x)*d/dx - 2*y*d/dy"));
  EXPECT_TRUE(ideal_equal(r2.controlled, I("x, y")));

  auto r3 = blow_up(r2.next, BlowupCenter{{0, 1}, std::nullopt}, 1, 3, primed(r2.next.names));
  EXPECT_EQ(r3.mode, TransformMode::kSplit);
  EXPECT_TRUE(r3.controlled.is_unit());
  EXPECT_EQ(r3.next.theta.gens[0], D("y*z*d/dz + d/dx - 2*y^2*d/dy"));
  for (bool t : r3.tangent) EXPECT_TRUE(t);
  ASSERT_EQ(r3.next.ledger.size(), 3u);
  EXPECT_FALSE(r3.next.ledger[0].variable.has_value());
  EXPECT_EQ(r3.next.ledger[1].variable, 2u);
  EXPECT_EQ(r3.next.ledger[2].variable, 1u);
}

TEST(BlowUp, BadCentersGiveNilpotentCandidates) {
  auto c0 = make_chart("d/dz + z*d/dx", "x, y");
  auto bad = blow_up(c0, BlowupCenter{{0, 1}, std::nullopt}, 0, 1, primed(kXYZ));
  EXPECT_FALSE(bad.admissibility.admissible);
  EXPECT_EQ(bad.mode, TransformMode::kCandidate);
  EXPECT_EQ(bad.next.theta.gens[0], D("x*z*d/dx - y*z*d/dy + x*d/dz"));
  EXPECT_EQ(monomialize_linear(bad.next.theta, CoefficientRing::kZ).diagnosis, "nilpotent linear part");

  auto r1 = blow_up(c0, BlowupCenter{{0, 1, 2}, std::nullopt}, 2, 1, primed(kXYZ));
  auto bad2 = blow_up(r1.next, BlowupCenter{{0, 1}, std::nullopt}, 0, 2, primed(r1.next.names));
  EXPECT_FALSE(bad2.admissibility.admissible);
  EXPECT_EQ(bad2.next.theta.gens[0], D("x*z*d/dz + (z - x)*x*d/dx - z*y*d/dy"));
  EXPECT_EQ(monomialize_linear(bad2.next.theta, CoefficientRing::kZ).diagnosis, "nilpotent linear part");
}

TEST(Identities, FittingTransform) {
  std::mt19937 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 20; ++trial) {
    DistributionGens theta({random_derivation(rng, 3, 1, 2), random_derivation(rng, 3, 1, 2)}, 2);
    Ideal i(3, {random_polynomial(rng, 3, 2, 3), random_polynomial(rng, 3, 2, 3)});
    std::vector<std::size_t> s{0, 1, 2};
    if (trial % 2 == 1) s = {0, 1};
    if (!admissibility_report(theta, Ideal::coordinate(3, s)).admissible) continue;
    auto m = chart(3, s, s.back());
    for (std::size_t k = 1; k <= 2; ++k) {
      auto r = check_fitting_transform(theta, i, k, m, {random_polynomial(rng, 3, 1, 2)});
      EXPECT_TRUE(r.holds);
    }
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

TEST(Identities, ChainOnWorkedExample) {
  auto c0 = make_chart("d/dz + z*d/dx", "x, y");
  auto r1 = blow_up(c0, BlowupCenter{{0, 1, 2}, std::nullopt}, 2, 1, primed(kXYZ));
  Tower t = Tower(c0).extended(TowerStep{r1.map, std::nullopt}, r1.next);
  auto check = check_chain_identity(t, 2);
  EXPECT_TRUE(check.holds);
}

TEST(Preservation, InvariantCenterKeepsInvariance) {
  // theta = x d/dx - y d/dy + d/dz, I = (x, y) invariant; center V(x, y).
  auto c0 = make_chart("x*d/dx - y*d/dy", "x*y");
  for (std::size_t c : {0u, 1u}) {
    auto r = blow_up(c0, BlowupCenter{{0, 1}, std::nullopt}, c, 1, primed(kXYZ));
    EXPECT_EQ(r.mode, TransformMode::kInvariant);
    EXPECT_TRUE(is_invariant(r.next.theta, r.controlled));
  }
}
