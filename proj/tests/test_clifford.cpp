#include <gtest/gtest.h>

#include "drspace/clifford.hpp"
#include "drspace/random.hpp"

using namespace drspace;

namespace {

Octonion random_octonion(Sampler& rng) { return Octonion::from(rng.gaussian(8)); }

// Radon-Hurwitz numbers rho(n), tabulated independently: the max number of
// pointwise independent vector fields on S^(n-1), plus one.
unsigned radon_hurwitz(unsigned n) {
  unsigned k = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++k;
  }
  static const unsigned small[4] = {1, 2, 4, 8};
  return 8 * (k / 4) + small[k % 4];
}

}  // namespace

TEST(Clifford, CenterBoundMatchesRadonHurwitz) {
  for (unsigned dv = 1; dv <= 128; ++dv) EXPECT_EQ(max_center_dim(dv), radon_hurwitz(dv) - 1) << dv;
  EXPECT_EQ(max_center_dim(16), 8u);
  EXPECT_EQ(max_center_dim(8), 7u);
  EXPECT_EQ(max_center_dim(6), 1u);
  EXPECT_THROW(max_center_dim(0), DomainError);
}

TEST(Clifford, OctonionIsAComposition) {
  Sampler rng(1);
  for (int k = 0; k < 50; ++k) {
    const Octonion a = random_octonion(rng), b = random_octonion(rng);
    EXPECT_NEAR((a * b).norm(), a.norm() * b.norm(), 1e-12);
  }
}

TEST(Clifford, OctonionAlternativeAndMoufang) {
  Sampler rng(2);
  for (int k = 0; k < 30; ++k) {
    const Octonion a = random_octonion(rng), b = random_octonion(rng), c = random_octonion(rng);
    EXPECT_LE(((a * a) * b - a * (a * b)).norm(), 1e-12);
    EXPECT_LE(((b * a) * a - b * (a * a)).norm(), 1e-12);
    // a(b(ac)) = ((ab)a)c
    EXPECT_LE((a * (b * (a * c)) - ((a * b) * a) * c).norm(), 1e-11);
  }
}

TEST(Clifford, OctonionsAreNotAssociative) {
  const Octonion e1 = Octonion::unit(1), e2 = Octonion::unit(2), e4 = Octonion::unit(4);
  EXPECT_GT(((e1 * e2) * e4 - e1 * (e2 * e4)).norm(), 1.0);
}

TEST(Clifford, ConjugationIsAntiAutomorphism) {
  Sampler rng(3);
  const Octonion a = random_octonion(rng), b = random_octonion(rng);
  EXPECT_LE(((a * b).conj() - b.conj() * a.conj()).norm(), 1e-12);
}

TEST(Clifford, AnticommutatorOnEveryAdmissiblePair) {
  for (unsigned dv : {2u, 4u, 8u, 16u})
    for (unsigned dz = 1; dz <= max_center_dim(dv); ++dz) {
      const CliffordModule m = build_module(dz, dv);
      EXPECT_LE(anticommutator_residual(m), 1e-12) << dz << "," << dv;
      for (const auto& j : m.generators) {
        EXPECT_TRUE(is_skew(j));
        EXPECT_LE(max_abs(j.transpose() * j - Operator::Identity(dv, dv)), 1e-12);
      }
    }
}

TEST(Clifford, RejectsBeyondTheBound) {
  EXPECT_THROW(build_module(9, 16), DomainError);
  EXPECT_THROW(build_module(2, 6), DomainError);
  EXPECT_THROW(build_module(3, 8, {1}), DomainError);
  EXPECT_THROW(build_module(3, 8, {1, 2}), DomainError);
}

TEST(Clifford, JOpIsLinearAndSquaresToMinusNorm) {
  const CliffordModule m = build_module(5, 8);
  Sampler rng(4);
  const Vector z = rng.gaussian(5);
  const Operator j = j_op(m, z);
  EXPECT_LE(max_abs(j * j + z.squaredNorm() * Operator::Identity(8, 8)), 1e-12);
  EXPECT_THROW(j_op(m, rng.gaussian(4)), DomainError);
}

TEST(Clifford, PurelyImaginaryOctonionAction) {
  Sampler rng(5);
  Vector z = rng.gaussian(8);
  z(0) = 0.0;
  const OctonionPair w{random_octonion(rng), random_octonion(rng)};
  const OctonionPair jw = j_from_octonions(Octonion::from(z), w);
  const OctonionPair jjw = j_from_octonions(Octonion::from(z), jw);
  // J_Z^2 = -|Z|^2
  EXPECT_LE((jjw.first + z.squaredNorm() * w.first).norm(), 1e-11);
  EXPECT_LE((jjw.second + z.squaredNorm() * w.second).norm(), 1e-11);
  z(0) = 1.0;
  EXPECT_THROW(j_from_octonions(Octonion::from(z), w), DomainError);
}

TEST(Clifford, SymmetricSpaceFlags) {
  EXPECT_TRUE(is_symmetric_space(build_module(1, 4)));
  EXPECT_TRUE(is_symmetric_space(build_module(7, 8)));
  EXPECT_TRUE(is_symmetric_space(build_module(3, 8, {1, 1})));
  EXPECT_FALSE(is_symmetric_space(build_module(3, 8, {1, -1})));
  EXPECT_FALSE(is_symmetric_space(build_module(2, 4)));
  EXPECT_FALSE(is_symmetric_space(build_module(7, 16)));
}

TEST(Clifford, AdmissibleDimensionsRespectBound) {
  const auto dims = admissible_dimensions(16);
  for (const auto& [dz, dv] : dims) EXPECT_LE(dz, max_center_dim(dv));
  EXPECT_NE(std::find(dims.begin(), dims.end(), std::make_pair(8u, 16u)), dims.end());
  EXPECT_EQ(std::find(dims.begin(), dims.end(), std::make_pair(9u, 16u)), dims.end());
}
