#include <gtest/gtest.h>

#include <random>
#include <set>

#include "refl4/coxeter.hpp"
#include "test_support.hpp"

namespace refl4 {
namespace {

using testing::q;
using testing::v4;

struct SquareFixture : ::testing::Test {
  BallConfiguration conf = generate_configuration(testing::single_square());
  GroupPresentation pres = presentation_from_audit(audit(conf));
};

TEST(ReduceMod, Examples) {
  EXPECT_EQ(reduce_mod(q(1, 2), 5), 3u);
  EXPECT_EQ(reduce_mod(q(-1), 7), 6u);
  EXPECT_EQ(reduce_mod(q(5, 12), 7), 1u);  // 12⁻¹ = 3 mod 7, 5·3 = 15
  EXPECT_EQ(reduce_mod(q(0), 11), 0u);
  EXPECT_THROW(reduce_mod(q(1, 10), 5), Error);
}

TEST(IsPrime, SmallAndLarge) {
  std::set<std::uint64_t> small;
  for (std::uint64_t n = 0; n < 200; ++n)
    if (is_prime(n)) small.insert(n);
  std::set<std::uint64_t> sieve;
  for (std::uint64_t n = 2; n < 200; ++n) {
    bool composite = false;
    for (std::uint64_t d = 2; d * d <= n; ++d) composite = composite || n % d == 0;
    if (!composite) sieve.insert(n);
  }
  EXPECT_EQ(small, sieve);
  EXPECT_TRUE(is_prime(2305843009213693951ull));   // 2^61 − 1
  EXPECT_FALSE(is_prime(3215031751ull));           // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_F(SquareFixture, RejectsBadPrimes) {
  EXPECT_THROW(congruence_quotient(conf, pres, 2), Error);
  EXPECT_THROW(congruence_quotient(conf, pres, 3), Error);
  EXPECT_THROW(congruence_quotient(conf, pres, 9), Error);
  EXPECT_THROW(congruence_quotient(conf, pres, 1), Error);
}

TEST_F(SquareFixture, GeneratorImages) {
  const auto fq = congruence_quotient(conf, pres, 5);
  EXPECT_TRUE(fq.homomorphism_ok);
  EXPECT_TRUE(fq.relation_failures.empty());
  ASSERT_EQ(fq.images.size(), 9u);
  std::set<std::array<std::uint64_t, 36>> distinct;
  for (std::size_t g = 0; g < 9; ++g) {
    EXPECT_EQ(fq.images[g].determinant(), 4u);
    EXPECT_EQ(fq.determinant_signs[g], -1);
    EXPECT_FALSE(fq.images[g].is_identity());
    EXPECT_TRUE((fq.images[g] * fq.images[g]).is_identity());
    distinct.insert(fq.images[g].entries);
  }
  EXPECT_EQ(distinct.size(), 9u);
  EXPECT_GT(fq.order_bound, 9u);
}

TEST_F(SquareFixture, ImageIsMultiplicative) {
  const auto fq = congruence_quotient(conf, pres, 7);
  const ReflectionGenerators gens(conf);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> gen(0, 8), len(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    Word a(len(rng)), b(len(rng));
    for (auto& g : a) g = static_cast<std::uint16_t>(gen(rng));
    for (auto& g : b) g = static_cast<std::uint16_t>(gen(rng));
    Word ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const auto ia = quotient_image(fq, a), ib = quotient_image(fq, b), iab = quotient_image(fq, ab);
    EXPECT_EQ(iab.matrix, ia.matrix * ib.matrix);
    EXPECT_EQ(iab.determinant_sign, ia.determinant_sign * ib.determinant_sign);
    EXPECT_EQ(iab.matrix, ModMatrix::reduce(gens.product(ab), 7));
  }
}

TEST(FiniteOrder, Examples) {
  const Sphere v(v4(0), q(1, 6)), c(v4(q(1, 2), q(1, 2)), q(1, 6)), m(v4(q(1, 2)), q(1, 12));
  EXPECT_EQ(finite_order(MoebiusMatrix::identity()), 1);
  EXPECT_EQ(finite_order(reflection_matrix(v)), 2);
  EXPECT_EQ(finite_order(reflection_matrix(v) * reflection_matrix(c)), 3);
  EXPECT_EQ(finite_order(reflection_matrix(m) * reflection_matrix(c)), 2);
  EXPECT_FALSE(finite_order(reflection_matrix(v) * reflection_matrix(Sphere(v4(1), q(1, 6)))));
  EXPECT_FALSE(finite_order(reflection_matrix(v) * reflection_matrix(c), 2));
}

TEST_F(SquareFixture, TorsionSurvives) {
  const auto fq = congruence_quotient(conf, pres, 5);
  const auto check = torsion_survival_check(conf, fq, 3);
  EXPECT_TRUE(check.ok);
  EXPECT_EQ(check.elements, 1u + 9u + 60u + 380u);
  EXPECT_GT(check.finite_order_elements, 9u);
  std::size_t total = 0;
  for (const auto& [order, count] : check.order_histogram) {
    EXPECT_TRUE(order == 1 || order == 2 || order == 3 || order == 6) << order;
    total += count;
  }
  EXPECT_EQ(total, check.finite_order_elements);
}

TEST(Quotient, DihedralGroupEmbeds) {
  const auto conf =
      BallConfiguration::from_spheres({Sphere(v4(0), q(1, 6)), Sphere(v4(q(1, 2), q(1, 2)), q(1, 6))});
  const auto pres = presentation_from_audit(audit(conf));
  const auto fq = congruence_quotient(conf, pres, 7);
  const auto check = torsion_survival_check(conf, fq, 3);
  EXPECT_TRUE(check.ok);
  EXPECT_EQ(check.elements, 6u);
  EXPECT_EQ(check.finite_order_elements, 6u);
  EXPECT_EQ(fq.order_bound, 6u);
}

}  // namespace
}  // namespace refl4
