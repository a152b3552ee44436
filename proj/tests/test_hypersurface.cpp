#include <gtest/gtest.h>

#include <memory>

#include "drspace/hypersurface.hpp"

using namespace drspace;

namespace {

std::shared_ptr<const CurvatureContext> context(unsigned dz, unsigned dv) {
  return std::make_shared<const CurvatureContext>(DamekRicci(dz, dv));
}

}  // namespace

TEST(Hypersurface, CodazziCombinationIsAnIdentity) { EXPECT_TRUE(codazzi_combination_residue().is_zero()); }

TEST(Hypersurface, CandidatesSolveGaussBlockwise) {
  const auto c = context(2, 4);
  Sampler rng(1);
  const NormalFrame f = random_frame(c, rng);
  const auto geom = frame_geometry(f, xi_spectrum(f));
  std::size_t seen = 0;
  for (double C : c_grid(-2.0, 0.0, 0.05))
    for (const auto& cand : shape_candidates(geom, C)) {
      ++seen;
      const CandidateCheck chk = check_candidate(cand);
      const double scale = std::max(1.0, cand.H * cand.H);
      EXPECT_LE(chk.gauss / scale, 1e-9);
      EXPECT_LE(chk.symmetry, 1e-12);
      EXPECT_LE(chk.trace / scale, 1e-9);
      EXPECT_LE(chk.adapted, 1e-9);
      EXPECT_LE(cand.trace_defect() / scale, 1e-9);
    }
  EXPECT_GT(seen, 0u);
}

TEST(Hypersurface, AssembledCandidateReproducesNoZRoots) {
  // xi = V + sA, s^2 = 2C + 1: block roots are (1+s^2)/(2s), s/2 and (1-2s^2)/(2s)
  const auto c = context(2, 4);
  const double s = 0.7, v = 1 - s * s, C = (s * s - 1) / 2, H = -C / s;
  Vector V = Vector::Zero(4);
  V(0) = std::sqrt(v);
  const NormalFrame f(c, V, Vector::Zero(2), s);
  const auto geom = frame_geometry(f, xi_spectrum(f));
  std::vector<int> split;
  for (std::size_t b = 0; b < geom->block_alpha.size(); ++b)
    split.push_back(geom->block_alpha[b] < -0.5 ? geom->block_dim[b] : geom->block_dim[b] - 1);
  const ShapeCandidate cand = assemble_candidate(geom, H, C, split);
  EXPECT_LE(check_candidate(cand).gauss, 1e-12);
  const double rho_minus = (1 + s * s) / (2 * s), rho1 = s / 2, rho2 = (1 - 2 * s * s) / (2 * s);
  for (std::size_t i = 0; i < cand.lambda.size(); ++i) {
    const double l = cand.lambda[i];
    const double best = std::min({std::abs(l - rho_minus), std::abs(l - rho1), std::abs(l - rho2)});
    EXPECT_LE(best, 1e-12);
  }
  // the trace identity is what fails
  EXPECT_GT(cand.trace_defect(), 1.0);
}

TEST(Hypersurface, AssembleRejectsComplexRoots) {
  const auto c = context(2, 4);
  Sampler rng(2);
  const NormalFrame f = random_frame(c, rng);
  const auto geom = frame_geometry(f, xi_spectrum(f));
  std::vector<int> split(geom->block_alpha.size(), 0);
  EXPECT_THROW(assemble_candidate(geom, 0.0, -2.0, split), DomainError);
  EXPECT_THROW(assemble_candidate(geom, 0.0, 0.0, {}), DomainError);
}

TEST(Hypersurface, ProbeFloorIsPositive) {
  ProbeOptions opt;
  opt.frames = 3;
  opt.c_step = 0.05;
  opt.seed = 5;
  const ProbeReport r = probe_hypersurface(context(2, 4), opt);
  EXPECT_EQ(r.frames.size(), 3u);
  EXPECT_GT(r.candidates, 0u);
  EXPECT_GT(r.floor, 1e-6);
  EXPECT_LE(r.max_gauss_defect, 1e-9);
}

TEST(Hypersurface, ProbeIsDeterministic) {
  ProbeOptions opt;
  opt.frames = 2;
  opt.c_step = 0.1;
  opt.seed = 9;
  const ProbeReport a = probe_hypersurface(context(2, 4), opt), b = probe_hypersurface(context(2, 4), opt);
  EXPECT_EQ(a.floor, b.floor);
  EXPECT_EQ(a.candidates, b.candidates);
}

TEST(Hypersurface, ConnectionCoefficientsAreSkew) {
  ConnectionCoefficients g(3);
  g.set(0, 2, 1, 0.5);
  EXPECT_EQ(*g.get(0, 1, 2), -0.5);
  EXPECT_EQ(*g.get(0, 2, 1), 0.5);
  EXPECT_EQ(*g.get(1, 1, 1), 0.0);
  EXPECT_FALSE(g.get(1, 0, 2).has_value());
}
