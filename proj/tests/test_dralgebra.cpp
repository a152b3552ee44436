#include <gtest/gtest.h>

#include "drspace/dralgebra.hpp"
#include "drspace/random.hpp"

using namespace drspace;

namespace {

SolvVec rand_vec(const DamekRicci& g, Sampler& rng) { return g.random(rng); }

}  // namespace

class AlgebraTest : public ::testing::TestWithParam<std::pair<unsigned, unsigned>> {};

TEST_P(AlgebraTest, BracketIsALieBracket) {
  const auto [dz, dv] = GetParam();
  const DamekRicci g(dz, dv);
  Sampler rng(dz * 100 + dv);
  for (int k = 0; k < 50; ++k) {
    const SolvVec x = rand_vec(g, rng), y = rand_vec(g, rng), z = rand_vec(g, rng);
    EXPECT_LE((bracket(g, x, y) + bracket(g, y, x)).norm(), 1e-12);
    const SolvVec jac = bracket(g, x, bracket(g, y, z)) + bracket(g, y, bracket(g, z, x)) +
                        bracket(g, z, bracket(g, x, y));
    EXPECT_LE(jac.norm(), 1e-11);
  }
}

TEST_P(AlgebraTest, AActsWithWeightsHalfAndOne) {
  const auto [dz, dv] = GetParam();
  const DamekRicci g(dz, dv);
  Sampler rng(7);
  const Vector u = rng.gaussian(dv), x = rng.gaussian(dz);
  const SolvVec au = bracket(g, g.unit_a(), g.from_v(u));
  const SolvVec ax = bracket(g, g.unit_a(), g.from_z(x));
  EXPECT_LE((au.v - 0.5 * u).norm(), 1e-15);
  EXPECT_LE((ax.z - x).norm(), 1e-15);
}

TEST_P(AlgebraTest, HeisenbergIdentities) {
  const auto [dz, dv] = GetParam();
  const DamekRicci g(dz, dv);
  const HeisenbergReport r = verify_heisenberg_identities(g, 200, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.residual_norm_identity, 1e-11);
}

TEST_P(AlgebraTest, KSquareSpectrumInMinusOneZero) {
  const auto [dz, dv] = GetParam();
  if (dz < 2) GTEST_SKIP() << "Y^perp is trivial";
  const DamekRicci g(dz, dv);
  Sampler rng(11);
  const KOperator k = k_operator(g, rng.gaussian(dv), rng.gaussian(dz));
  EXPECT_LE(max_abs(k.matrix + k.matrix.transpose()), 1e-11);  // K is skew
  for (const auto& e : k_square_spectrum(k)) {
    EXPECT_GE(e.mu, -1.0 - 1e-9);
    EXPECT_LE(e.mu, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Modules, AlgebraTest,
                         ::testing::Values(std::make_pair(1u, 2u), std::make_pair(2u, 4u), std::make_pair(3u, 4u),
                                           std::make_pair(5u, 8u), std::make_pair(7u, 8u), std::make_pair(7u, 16u),
                                           std::make_pair(8u, 16u)));

TEST(KOperator, OctonionicCaseIsMinusIdentity) {
  const DamekRicci g(7, 8);
  Sampler rng(2);
  const ZMinusOne z = k_square_minus1_space(g, rng.gaussian(8), rng.gaussian(7));
  EXPECT_EQ(z.dim(), 6);
  EXPECT_LE(z.equivalence_residual, 1e-10);
}

TEST(KOperator, QuaternionicCaseHasFullMinusOneSpace) {
  const DamekRicci g(3, 4);
  Sampler rng(3);
  const ZMinusOne z = k_square_minus1_space(g, rng.gaussian(4), rng.gaussian(3));
  EXPECT_EQ(z.dim(), 2);
  EXPECT_LE(z.k_invariance_residual, 1e-10);
}

TEST(KOperator, RejectsZeroInputs) {
  const DamekRicci g(2, 4);
  EXPECT_THROW(k_operator(g, Vector::Zero(4), Vector::Ones(2)), DomainError);
  EXPECT_THROW(k_operator(g, Vector::Ones(4), Vector::Zero(2)), DomainError);
}

TEST(DamekRicci, FlatCoordinatesRoundTrip) {
  const DamekRicci g(5, 8);
  Sampler rng(4);
  const SolvVec t = g.random(rng);
  const SolvVec back = g.unflatten(g.flatten(t));
  EXPECT_EQ((back - t).norm(), 0.0);
  EXPECT_EQ(g.flat_a()(g.dim() - 1), 1.0);
  EXPECT_THROW(g.unflatten(Vector::Zero(3)), DomainError);
}

TEST(DamekRicci, BracketPairing) {
  // <[U, W], Z> = <J_Z U, W>
  const DamekRicci g(6, 8);
  Sampler rng(5);
  const Vector u = rng.gaussian(8), w = rng.gaussian(8), z = rng.gaussian(6);
  EXPECT_NEAR(g.bracket_v(u, w).dot(z), (g.J(z) * u).dot(w), 1e-12);
}
