#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "refl4/inversive.hpp"
#include "test_support.hpp"

namespace refl4 {
namespace {

using testing::q;
using testing::v4;

const Vec4 kOrigin = v4(0);

TEST(SphereToInversive, UnitSphere) {
  const auto s = sphere_to_inversive(Sphere(kOrigin, 1));
  EXPECT_EQ(s, (InversiveVector{0, 0, 0, 0, -1, 0}));
}

TEST(SphereToInversive, SmallSphere) {
  const auto s = sphere_to_inversive(Sphere(kOrigin, q(1, 6)));
  // (|c|² − r² ∓ 1)/2 with |c|² − r² = −1/6.
  EXPECT_EQ(s, (InversiveVector{0, 0, 0, 0, q(-7, 12), q(5, 12)}));
  EXPECT_EQ(lorentz_product(s, s), q(1, 6));
}

TEST(PointToInversive, OriginAndInfinity) {
  const auto p = point_to_inversive(Vec4(kOrigin));
  EXPECT_EQ(p, (InversiveVector{0, 0, 0, 0, q(-1, 2), q(1, 2)}));
  EXPECT_EQ(lorentz_product(p, p), 0);
  const auto inf = point_to_inversive(ExtendedPoint::infinity());
  EXPECT_EQ(inf, (InversiveVector{0, 0, 0, 0, 1, 1}));
  EXPECT_TRUE(inversive_to_point(inf).is_infinity());
}

TEST(LorentzProduct, Examples) {
  const auto unit = sphere_to_inversive(Sphere(kOrigin, 1));
  EXPECT_EQ(lorentz_product(unit, unit), 1);
  const auto a = sphere_to_inversive(Sphere(kOrigin, q(1, 6)));
  const auto b = sphere_to_inversive(Sphere(v4(1), q(1, 6)));
  EXPECT_EQ(lorentz_product(a, b), q(-1, 3));  // (1/6 + 1/6 − 1)/2
  // ⟨p̂,σ⟩ = (r² − |p − c|²)/2: positive for the origin inside the unit ball.
  EXPECT_EQ(lorentz_product(point_to_inversive(Vec4(kOrigin)), unit), q(1, 2));
}

TEST(ClassifyPair, VertexCenterIsPiOverThree) {
  const auto pc = classify_pair(Sphere(kOrigin, q(1, 6)), Sphere(v4(q(1, 2), q(1, 2)), q(1, 6)));
  EXPECT_EQ(pc.relation, PairRelation::Intersecting);
  EXPECT_EQ(pc.distance_sq, q(1, 2));
  EXPECT_EQ(pc.cos_sign, 1);
  EXPECT_EQ(pc.cos_sq, q(1, 4));
  EXPECT_EQ(pc.coxeter_order, 3);
  EXPECT_EQ(pc.angle_string(), "pi/3");
}

TEST(ClassifyPair, MidpointCenterIsRightAngle) {
  const auto pc = classify_pair(Sphere(v4(q(1, 2)), q(1, 12)), Sphere(v4(q(1, 2), q(1, 2)), q(1, 6)));
  EXPECT_EQ(pc.relation, PairRelation::Intersecting);
  EXPECT_EQ(pc.cos_numerator, 0);
  EXPECT_EQ(pc.coxeter_order, 2);
}

TEST(ClassifyPair, VertexVertexDisjoint) {
  const auto pc = classify_pair(Sphere(kOrigin, q(1, 6)), Sphere(v4(1), q(1, 6)));
  EXPECT_EQ(pc.relation, PairRelation::Disjoint);
  EXPECT_FALSE(pc.coxeter_order);
}

TEST(ClassifyPair, MidpointAdjacentVertexHasZeroNumerator) {
  const auto pc = classify_pair(Sphere(v4(q(1, 2)), q(1, 12)), Sphere(kOrigin, q(1, 6)));
  EXPECT_EQ(pc.distance_sq, q(1, 4));
  EXPECT_EQ(pc.cos_numerator, 0);  // 1/4 − 1/12 − 1/6
  EXPECT_EQ(pc.coxeter_order, 2);
}

TEST(ClassifyPair, TangentNestedAndCoincident) {
  EXPECT_EQ(classify_pair(Sphere(kOrigin, 1), Sphere(v4(2), 1)).relation, PairRelation::ExternallyTangent);
  EXPECT_EQ(classify_pair(Sphere(kOrigin, 4), Sphere(v4(1), 1)).relation, PairRelation::InternallyTangent);
  EXPECT_EQ(classify_pair(Sphere(kOrigin, 9), Sphere(v4(1), 1)).relation, PairRelation::Nested);
  EXPECT_EQ(classify_pair(Sphere(kOrigin, 4), Sphere(kOrigin, 1)).relation, PairRelation::Nested);
  EXPECT_THROW(classify_pair(Sphere(kOrigin, 1), Sphere(kOrigin, 1)), Error);
  EXPECT_THROW(Sphere(kOrigin, 0), Error);
}

TEST(CoxeterOrder, RationalTable) {
  EXPECT_EQ(coxeter_order(0, 0), 2);
  EXPECT_EQ(coxeter_order(1, q(1, 4)), 3);
  EXPECT_EQ(coxeter_order(1, q(1, 2)), 4);
  EXPECT_EQ(coxeter_order(1, q(3, 4)), 6);
  EXPECT_FALSE(coxeter_order(-1, q(1, 4)));  // 2π/3
  EXPECT_FALSE(coxeter_order(1, q(1, 3)));
  EXPECT_FALSE(coxeter_order(1, q(3, 4), 5));  // beyond the search bound
}

TEST(Reflection, InvolutionLorentzAndDeterminant) {
  const auto r = reflection_matrix(Sphere(kOrigin, 1));
  EXPECT_TRUE((r * r).is_identity());
  EXPECT_TRUE(r.is_lorentz());
  EXPECT_EQ(r.determinant(), -1);
  // Vectors orthogonal to σ are fixed.
  const auto other = sphere_to_inversive(Sphere(v4(1), 1));
  const auto s2 = sphere_to_inversive(Sphere(v4(2), 3));
  EXPECT_EQ(lorentz_product(s2, sphere_to_inversive(Sphere(kOrigin, 1))), 0);
  EXPECT_EQ(r * s2, s2);
  EXPECT_NE(r * other, other);
}

TEST(Reflection, MapsPointByInversion) {
  const auto r = reflection_matrix(Sphere(kOrigin, q(1, 6)));
  EXPECT_EQ(apply_to_point(r, Vec4(v4(1))), ExtendedPoint(v4(q(1, 6))));
}

TEST(ApplyToPoint, UnitInversion) {
  const auto r = reflection_matrix(Sphere(kOrigin, 1));
  EXPECT_EQ(apply_to_point(r, Vec4(v4(2))), ExtendedPoint(v4(q(1, 2))));
  EXPECT_TRUE(apply_to_point(r, Vec4(kOrigin)).is_infinity());
  EXPECT_EQ(apply_to_point(r, ExtendedPoint::infinity()), ExtendedPoint(kOrigin));
}

TEST(MoebiusMatrix, KeyRoundTripAndPower) {
  std::mt19937_64 rng(3);
  const auto a = reflection_matrix(testing::random_sphere(rng));
  const auto b = reflection_matrix(testing::random_sphere(rng));
  const auto m = a * b * a;
  EXPECT_EQ(MoebiusMatrix::from_key(m.canonical_key()), m);
  EXPECT_EQ(m.canonical_key(), (a * (b * a)).canonical_key());
  EXPECT_EQ((a * b).power(3), a * b * a * b * a * b);
  EXPECT_THROW(MoebiusMatrix::from_key("xyz"), Error);
}

// Floating-point oracle for the exterior angle.
TEST(ClassifyPairProperty, SymmetricAndMatchesFloatOracle) {
  std::mt19937_64 rng(2024);
  int intersecting = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Sphere a = testing::random_sphere(rng), b = testing::random_sphere(rng);
    if (a == b) continue;
    const auto ab = classify_pair(a, b), ba = classify_pair(b, a);
    ASSERT_EQ(ab.relation, ba.relation);
    ASSERT_EQ(ab.cos_sq, ba.cos_sq);
    ASSERT_EQ(ab.coxeter_order, ba.coxeter_order);

    const double d = std::sqrt(to_double(distance_sq(a.center, b.center)));
    const double r1 = std::sqrt(to_double(a.radius_sq)), r2 = std::sqrt(to_double(b.radius_sq));
    if (ab.relation == PairRelation::ExternallyTangent || ab.relation == PairRelation::InternallyTangent) continue;
    const bool float_intersects = d < r1 + r2 && d > std::abs(r1 - r2);
    ASSERT_EQ(float_intersects, ab.is_intersecting()) << trial;
    if (!float_intersects) continue;
    ++intersecting;
    const double angle = std::acos((d * d - r1 * r1 - r2 * r2) / (2 * r1 * r2));
    const double exact = std::acos(ab.cos_sign * std::sqrt(to_double(ab.cos_sq)));
    EXPECT_NEAR(angle, exact, 1e-9);
  }
  EXPECT_GT(intersecting, 50);
}

TEST(InversiveProperty, InsidePredicateAndInversionFormula) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const Sphere s = testing::random_sphere(rng);
    const Vec4 p = testing::random_point(rng);
    const Rational side = lorentz_product(point_to_inversive(p), sphere_to_inversive(s));
    EXPECT_EQ(side > 0, distance_sq(p, s.center) < s.radius_sq);
    EXPECT_EQ(side == 0, distance_sq(p, s.center) == s.radius_sq);

    const auto r = reflection_matrix(s);
    ASSERT_TRUE((r * r).is_identity());
    ASSERT_TRUE(r.is_lorentz());
    const auto image = apply_to_point(r, p);
    const Rational d2 = distance_sq(p, s.center);
    if (d2 == 0) {
      EXPECT_TRUE(image.is_infinity());
      continue;
    }
    const Vec4 classical = add(s.center, scale(s.radius_sq / d2, sub(p, s.center)));
    EXPECT_EQ(image, ExtendedPoint(classical));
    // Null vectors stay null.
    EXPECT_EQ(lorentz_product(r * point_to_inversive(p), r * point_to_inversive(p)), 0);
  }
}

TEST(InversiveProperty, CoxeterPairsHaveExactOrder) {
  // Pairs realising π/2 and π/3 from the square construction, translated.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec4 t = testing::random_point(rng, 3, 2);
    const Sphere v(t, q(1, 6));
    const Sphere c(add(t, v4(q(1, 2), q(1, 2))), q(1, 6));
    const Sphere m(add(t, v4(q(1, 2))), q(1, 12));
    for (const auto& [a, b] : {std::pair{v, c}, std::pair{m, c}, std::pair{m, v}}) {
      const auto pc = classify_pair(a, b);
      ASSERT_TRUE(pc.coxeter_order);
      const auto prod = reflection_matrix(a) * reflection_matrix(b);
      for (int k = 1; k < *pc.coxeter_order; ++k) EXPECT_FALSE(prod.power(k).is_identity());
      EXPECT_TRUE(prod.power(*pc.coxeter_order).is_identity());
    }
  }
}

TEST(BallsCommonPoint, Examples) {
  const Sphere vertex(kOrigin, q(1, 6)), mid(v4(q(1, 2)), q(1, 12)), center(v4(q(1, 2), q(1, 2)), q(1, 6));
  const Sphere one[] = {vertex};
  EXPECT_TRUE(balls_common_point(one));
  const Sphere disjoint[] = {vertex, Sphere(v4(1), q(1, 6))};
  EXPECT_FALSE(balls_common_point(disjoint));
  const Sphere triple[] = {vertex, mid, center};
  const auto meet = intersect_balls(triple);
  EXPECT_TRUE(meet.nonempty);
  for (const auto& s : triple) EXPECT_TRUE(s.contains(meet.point));

  // Dense-grid numeric cross-check near the square corner.
  bool found = false;
  const int n = 200;
  for (int i = 0; i <= n && !found; ++i)
    for (int j = 0; j <= n && !found; ++j) {
      const double x = 0.5 * i / n, y = 0.5 * j / n;
      found = x * x + y * y <= 1.0 / 6 && (x - 0.5) * (x - 0.5) + y * y <= 1.0 / 12 &&
              (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5) <= 1.0 / 6;
    }
  EXPECT_TRUE(found);
  EXPECT_THROW(intersect_balls(std::span<const Sphere>{}), Error);
}

// Exact decision against independent checks: pairs via classify_pair, and for
// larger sets the witness must lie in every ball while numeric random search
// never beats the reported min-max power.
TEST(BallsCommonPointProperty, AgreesWithIndependentChecks) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> k_dist(2, 4);
    const int k = k_dist(rng);
    std::vector<Sphere> balls;
    for (int i = 0; i < k; ++i) balls.push_back(testing::random_sphere(rng));
    const auto meet = intersect_balls(balls);
    if (k == 2 && !(balls[0] == balls[1])) {
      EXPECT_EQ(meet.nonempty, classify_pair(balls[0], balls[1]).relation != PairRelation::Disjoint);
    }
    if (meet.nonempty)
      for (const auto& s : balls) EXPECT_TRUE(s.contains(meet.point));
    const double best = to_double(meet.min_power);
    std::array<double, 4> x{};
    for (int i = 0; i < 4; ++i) x[i] = to_double(meet.point[i]);
    for (int probe = 0; probe < 200; ++probe) {
      std::array<double, 4> y = x;
      for (auto& c : y) c += 0.05 * jitter(rng);
      double worst = -1e300;
      for (const auto& s : balls) {
        double d2 = 0;
        for (int i = 0; i < 4; ++i) d2 += (y[i] - to_double(s.center[i])) * (y[i] - to_double(s.center[i]));
        worst = std::max(worst, d2 - to_double(s.radius_sq));
      }
      EXPECT_GE(worst, best - 1e-9);
    }
  }
}

}  // namespace
}  // namespace refl4
