#include <gtest/gtest.h>

#include <algorithm>
#include <memory>

#include "drspace/spectrum.hpp"

using namespace drspace;

namespace {

std::shared_ptr<const CurvatureContext> context(unsigned dz, unsigned dv) {
  return std::make_shared<const CurvatureContext>(DamekRicci(dz, dv));
}

// Roots of a monic cubic from its companion matrix, independent of bisection.
std::vector<double> companion_roots(double c0, double c1, double c2) {
  Operator m = Operator::Zero(3, 3);
  m(1, 0) = 1.0;
  m(2, 1) = 1.0;
  m(0, 2) = -c0;
  m(1, 2) = -c1;
  m(2, 2) = -c2;
  Eigen::EigenSolver<Operator> es(m);
  std::vector<double> r;
  for (int i = 0; i < 3; ++i) r.push_back(es.eigenvalues()(i).real());
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST(Cubics, AlphaRootsAgreeWithCompanion) {
  for (double v : {0.1, 0.3, 0.5}) {
    const double y = 0.4 * (1 - v);
    const AlphaCubic c = alpha_cubic(-0.25, v, y);
    const double q = c.q.get_d();
    const auto eta = companion_roots(-q, 0.0, 3.0);
    for (int l = 0; l < 3; ++l) {
      EXPECT_NEAR(c.eta[l], eta[l], 1e-10);
      EXPECT_NEAR(c.alpha[l], (eta[l] - 1.0) / 4.0, 1e-10);
      const double a = c.alpha[l];
      EXPECT_NEAR((a + 1) * (a + 0.25) * (a + 0.25), q / 64.0, 1e-13);
    }
  }
}

TEST(Cubics, AlphaDomain) {
  EXPECT_THROW(alpha_cubic(0.5, 0.3, 0.3), DomainError);
  EXPECT_THROW(alpha_cubic(-0.5, 0.6, 0.6), DomainError);
  EXPECT_THROW(alpha_cubic(-1.0, 0.3, 0.3), DomainError);
}

TEST(Cubics, FCubicInterlacingAndCompanion) {
  for (int k = 1; k < 25; ++k) {
    const Rational q = make_rational(k, 100);
    const FCubic f = f_cubic_roots(q);
    EXPECT_TRUE(f.interlacing) << q.get_str();
    EXPECT_GT(f.f_zero, 0);
    EXPECT_LT(f.f_minus_q, 0);
    const double qd = q.get_d();
    const auto r = companion_roots(qd * qd, 9.0 / 16.0, 1.5);
    for (int l = 0; l < 3; ++l) EXPECT_NEAR(f.alpha[l], r[l], 1e-8);
  }
  EXPECT_THROW(f_cubic_roots(Rational(1, 4)), DomainError);
}

TEST(NormalFrame, CaseClassificationAndValidation) {
  const auto c = context(2, 4);
  Sampler rng(1);
  EXPECT_EQ(random_frame(c, rng).kind(), FrameCase::General);
  EXPECT_EQ(random_frame(c, rng, true, false, true).kind(), FrameCase::NoZ);
  EXPECT_EQ(random_frame(c, rng, true, true, false).kind(), FrameCase::NoA);
  EXPECT_EQ(random_frame(c, rng, false, true, true).kind(), FrameCase::NoV);
  EXPECT_THROW(NormalFrame(c, Vector::Ones(4), Vector::Zero(2), 0.0), DomainError);
}

TEST(NormalFrame, DimensionRelation) {
  // d_v = d_p + 2 d_z - d_{-1} whenever V, Y != 0
  for (auto [dz, dv] : {std::pair{2u, 4u}, {3u, 4u}, {5u, 8u}, {6u, 8u}, {7u, 16u}, {8u, 16u}}) {
    const auto c = context(dz, dv);
    Sampler rng(dz + dv);
    for (int k = 0; k < 5; ++k) EXPECT_EQ(random_frame(c, rng).dimension_defect(), 0) << dz << "," << dv;
  }
}

class SpectrumTest : public ::testing::TestWithParam<std::pair<unsigned, unsigned>> {};

TEST_P(SpectrumTest, JacobiSpectrumIsClassified) {
  const auto [dz, dv] = GetParam();
  const auto c = context(dz, dv);
  Sampler rng(10 * dz + dv);
  for (int k = 0; k < 5; ++k) {
    const NormalFrame f = random_frame(c, rng);
    const SpectralReport r = xi_spectrum(f);
    EXPECT_LE(r.classification_gap, 1e-9);
    EXPECT_TRUE(r.multiplicity_match);
    EXPECT_LE(r.max_certificate_residual(), 1e-9);
    EXPECT_LE(r.max_homothety_spread(), 1e-9);
    EXPECT_LE(r.range_violation, 1e-12);
    // independent: the numeric spectrum of R_xi on xi^perp lies in [-1, 0]
    const auto e = eig_sym(restrict_to(c->jacobi(f.xi()), f.tangent_basis()));
    EXPECT_GE(e.values.minCoeff(), -1.0 - 1e-12);
    EXPECT_LE(e.values.maxCoeff(), 1e-12);
  }
}

TEST_P(SpectrumTest, SpecialCasesStillClassified) {
  const auto [dz, dv] = GetParam();
  const auto c = context(dz, dv);
  Sampler rng(3);
  for (const auto& f : {random_frame(c, rng, true, false, true), random_frame(c, rng, true, true, false),
                        random_frame(c, rng, false, true, true)}) {
    const SpectralReport r = xi_spectrum(f);
    EXPECT_LE(r.classification_gap, 1e-9) << to_string(f.kind());
    EXPECT_LE(r.l_minus1_residual, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Modules, SpectrumTest,
                         ::testing::Values(std::make_pair(1u, 2u), std::make_pair(2u, 4u), std::make_pair(5u, 8u),
                                           std::make_pair(6u, 8u), std::make_pair(7u, 16u), std::make_pair(8u, 16u)));

TEST(Psi, HomothetyRatioMatchesNorms) {
  const auto c = context(5, 8);
  Sampler rng(4);
  const NormalFrame f = random_frame(c, rng);
  const SpectralReport r = xi_spectrum(f);
  ASSERT_FALSE(r.families.empty());
  for (const auto& fam : r.families)
    for (int l = 0; l < 3; ++l) EXPECT_LE(fam.homothety_formula[l], 1e-9);
}
