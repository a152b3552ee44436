#include <gtest/gtest.h>

#include <memory>

#include "drspace/curvature.hpp"
#include "drspace/random.hpp"

using namespace drspace;

namespace {

// Koszul formula for left-invariant fields, built only from the bracket:
// 2 <nabla_X Y, Z> = <[X, Y], Z> - <[Y, Z], X> + <[Z, X], Y>.
Vector koszul(const DamekRicci& g, const Vector& x, const Vector& y) {
  const Eigen::Index n = g.dim();
  Vector out(n);
  const SolvVec X = g.unflatten(x), Y = g.unflatten(y);
  for (Eigen::Index c = 0; c < n; ++c) {
    const SolvVec Z = g.unflatten(Vector::Unit(n, c));
    out(c) = 0.5 * (bracket(g, X, Y).dot(Z) - bracket(g, Y, Z).dot(X) + bracket(g, Z, X).dot(Y));
  }
  return out;
}

// R(X, Y) Z from the Koszul connection matrices.
Vector koszul_riemann(const DamekRicci& g, const Vector& x, const Vector& y, const Vector& z) {
  const auto nab = [&](const Vector& a, const Vector& b) { return koszul(g, a, b); };
  const Vector xy = g.flatten(bracket(g, g.unflatten(x), g.unflatten(y)));
  // nabla_X (nabla_Y Z) for left-invariant data is nab(x, nab(y, z))
  return nab(x, nab(y, z)) - nab(y, nab(x, z)) - nab(xy, z);
}

}  // namespace

class CurvatureTest : public ::testing::TestWithParam<std::pair<unsigned, unsigned>> {
protected:
  std::shared_ptr<const CurvatureContext> ctx() const {
    const auto [dz, dv] = GetParam();
    return std::make_shared<const CurvatureContext>(DamekRicci(dz, dv));
  }
};

TEST_P(CurvatureTest, ConnectionMatchesKoszul) {
  const auto c = ctx();
  const DamekRicci& g = c->algebra();
  Sampler rng(1);
  for (int k = 0; k < 40; ++k) {
    const Vector x = rng.gaussian(g.dim()), y = rng.gaussian(g.dim());
    EXPECT_LE((c->nabla_op(x) * y - koszul(g, x, y)).norm(), 1e-12);
  }
}

TEST_P(CurvatureTest, CurvatureMatchesKoszul) {
  const auto c = ctx();
  const DamekRicci& g = c->algebra();
  Sampler rng(2);
  for (int k = 0; k < 20; ++k) {
    const Vector x = rng.gaussian(g.dim()), y = rng.gaussian(g.dim()), z = rng.gaussian(g.dim());
    EXPECT_LE((c->riemann(x, y, z) - koszul_riemann(g, x, y, z)).norm(), 1e-11);
  }
}

TEST_P(CurvatureTest, AxiomsAndSymmetries) {
  const auto c = ctx();
  const ConnectionAxioms ax = check_connection_axioms(*c, 300, 3);
  EXPECT_LE(ax.metric, 1e-12);
  EXPECT_LE(ax.torsion, 1e-12);
  const TensorSymmetries ts = check_tensor_symmetries(*c, 100, 4);
  EXPECT_LE(ts.jacobi_crosscheck, 1e-10);
  EXPECT_LE(ts.first_bianchi, 1e-10);
  EXPECT_LE(ts.pair_symmetry, 1e-10);
  EXPECT_LE(ts.second_bianchi, 1e-10);
}

TEST_P(CurvatureTest, EinsteinConstantFromAdA) {
  // Ric(A, A) = -tr(ad_A^2) = -(d_v/4 + d_z) since ad_A is symmetric
  const auto c = ctx();
  const DamekRicci& g = c->algebra();
  const double expected = -(g.d_v() / 4.0 + g.d_z());
  EXPECT_NEAR(c->ricci(g.flat_a()), expected, 1e-12);
  const RicciIsotropy ri = ricci_isotropy(*c, 200, 5);
  EXPECT_NEAR(ri.mean, expected, 1e-10);
  EXPECT_LE(ri.stdev, 1e-10);
}

TEST_P(CurvatureTest, SectionalCurvatureNonpositive) {
  const auto c = ctx();
  const DamekRicci& g = c->algebra();
  Sampler rng(6);
  for (int k = 0; k < 100; ++k) {
    const Vector x = rng.gaussian(g.dim()), y = rng.gaussian(g.dim());
    const double area = x.squaredNorm() * y.squaredNorm() - x.dot(y) * x.dot(y);
    const double sec = c->riemann4(x, y, y, x) / area;
    EXPECT_LE(sec, 1e-12);
    EXPECT_GE(sec, -1.0 - 1e-12);
  }
}

TEST_P(CurvatureTest, JacobiOfAHasEigenvaluesQuarterAndOne) {
  // R_A = -(ad_A)^2 on the v and z parts
  const auto c = ctx();
  const DamekRicci& g = c->algebra();
  const Operator r = c->jacobi(g.flat_a());
  for (unsigned i = 0; i < g.d_v(); ++i) EXPECT_NEAR(r(i, i), -0.25, 1e-14);
  for (unsigned i = 0; i < g.d_z(); ++i) EXPECT_NEAR(r(g.d_v() + i, g.d_v() + i), -1.0, 1e-14);
}

INSTANTIATE_TEST_SUITE_P(Modules, CurvatureTest,
                         ::testing::Values(std::make_pair(1u, 2u), std::make_pair(2u, 4u), std::make_pair(3u, 4u),
                                           std::make_pair(5u, 8u), std::make_pair(6u, 8u), std::make_pair(7u, 8u),
                                           std::make_pair(7u, 16u), std::make_pair(8u, 16u)));

TEST(Curvature, ComplexHyperbolicPinching) {
  // d_z = 1 is complex hyperbolic space: sectional curvature fills [-1, -1/4]
  const auto c = std::make_shared<const CurvatureContext>(DamekRicci(1, 2));
  const DamekRicci& g = c->algebra();
  const Vector v = g.flat_v(Vector::Unit(2, 0)), jv = g.flat_v(g.J(Vector::Unit(1, 0)) * Vector::Unit(2, 0));
  EXPECT_NEAR(c->riemann4(v, jv, jv, v), -1.0, 1e-14);
  const Vector a = g.flat_a();
  EXPECT_NEAR(c->riemann4(v, a, a, v), -0.25, 1e-14);
}

TEST(Curvature, NilpotentPartIsNotEinstein) {
  for (auto [dz, dv] : {std::pair{1u, 2u}, {2u, 4u}, {7u, 8u}, {8u, 16u}}) {
    const NilpotentRicci r = ricci_heisenberg(build_module(dz, dv));
    EXPECT_TRUE(r.sign_split) << dz << "," << dv;
    EXPECT_FALSE(r.flat);
  }
  // abelian control
  const NilpotentRicci flat = nilpotent_ricci(4, {Operator::Zero(4, 4)});
  EXPECT_TRUE(flat.flat);
}

TEST(Curvature, HeisenbergRicciClosedForm) {
  // Ric on v = -(d_z/2) and on z = d_v/4 for unit generators
  const NilpotentRicci r = ricci_heisenberg(build_module(3, 8));
  for (double e : r.v_eigenvalues) EXPECT_NEAR(e, -1.5, 1e-12);
  for (double e : r.z_eigenvalues) EXPECT_NEAR(e, 2.0, 1e-12);
}
