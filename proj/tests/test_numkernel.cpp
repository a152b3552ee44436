#include <gtest/gtest.h>

#include <cmath>

#include "drspace/linalg.hpp"
#include "drspace/mpoly.hpp"
#include "drspace/random.hpp"
#include "drspace/rational.hpp"
#include "drspace/roots.hpp"

using namespace drspace;

TEST(Rational, MakeRationalCanonicalizes) {
  EXPECT_EQ(make_rational(4, 16), Rational(1, 4));
  EXPECT_EQ(make_rational(-18, -28), Rational(9, 14));
  EXPECT_EQ(pow_rational(Rational(-2, 3), 3), Rational(-8, 27));
  EXPECT_EQ(pow_rational(Rational(5), 0), Rational(1));
}

TEST(Rational, ToRationalIsExactForBinaryDoubles) {
  EXPECT_EQ(to_rational(0.375), Rational(3, 8));
  EXPECT_EQ(to_rational(-1.5), Rational(-3, 2));
}

TEST(MPoly, RingIdentities) {
  const MPoly x = var("x"), y = var("y");
  EXPECT_TRUE(((x + y).pow(2) - (x * x + 2 * x * y + y * y)).is_zero());
  EXPECT_TRUE(((x - y) * (x + y) - (x * x - y * y)).is_zero());
  EXPECT_EQ((x * y).degree("x"), 1u);
  EXPECT_TRUE((x - x).is_zero());
}

TEST(MPoly, SubstituteAndEvaluate) {
  const MPoly x = var("x"), y = var("y");
  const MPoly p = x * x * y + 3 * y - 1;
  EXPECT_EQ(p.evaluate({{"x", Rational(2)}, {"y", Rational(1, 2)}}), Rational(2 + Rational(3, 2) - 1));
  EXPECT_TRUE((p.substitute("y", x) - (x.pow(3) + 3 * x - 1)).is_zero());
}

TEST(MPoly, ReduceModMonic) {
  // t^5 mod t^2 + 1 = t
  const MPoly t = var("t");
  EXPECT_TRUE((poly_reduce(t.pow(5), "t", t * t + 1) - t).is_zero());
  EXPECT_THROW(poly_reduce(t, "t", 2 * t * t + 1), DomainError);
}

TEST(MPoly, DivideExact) {
  const MPoly x = var("x"), y = var("y");
  const auto q = divide_exact((x - y) * (x * x + y), x - y);
  ASSERT_TRUE(q.has_value());
  EXPECT_TRUE((*q - (x * x + y)).is_zero());
  EXPECT_FALSE(divide_exact(x * x + 1, x - 1).has_value());
}

TEST(MPoly, ElementaryRewriteMatchesNewtonIdentity) {
  // x^2 + y^2 + z^2 = e1^2 - 2 e2
  const MPoly x = var("x"), y = var("y"), z = var("z");
  const MPoly e = to_elementary(x * x + y * y + z * z, {"x", "y", "z"}, {"e1", "e2", "e3"});
  EXPECT_TRUE((e - (var("e1").pow(2) - 2 * var("e2"))).is_zero());
  EXPECT_THROW(to_elementary(x, {"x", "y"}, {"e1", "e2"}), DomainError);
}

TEST(MPoly, SymmetricEliminateUsesCubicVieta) {
  // roots of t^3 + 3t^2 - q: e1 = -3, e2 = 0, e3 = q; sum of squares = 9
  const MPoly a = var("a"), b = var("b"), c = var("c");
  const MPoly r = symmetric_eliminate(a * a + b * b + c * c, {"a", "b", "c"});
  EXPECT_TRUE((r - 9).is_zero());
  const MPoly prod = symmetric_eliminate(a * b * c, {"a", "b", "c"});
  EXPECT_TRUE((prod - var("q")).is_zero());
}

TEST(MPoly, SubstituteFractionClearsDenominator) {
  // x^2 + 1 at x = 1/2 times 2^2 = 5
  const MPoly x = var("x");
  const MPoly r = substitute_fraction(x * x + 1, "x", MPoly(1), MPoly(2));
  EXPECT_TRUE((r - 5).is_zero());
}

TEST(Roots, ResultantAgainstRootProduct) {
  // Res(x^2 - 1, x - 2) = prod over roots of x^2-1 of (r - 2) up to sign: (1-2)(-1-2) = 3
  const UPoly a{{Rational(-1), Rational(0), Rational(1)}}, b{{Rational(-2), Rational(1)}};
  EXPECT_EQ(abs(resultant(a, b)), Rational(3));
  // shared root 1
  const UPoly c{{Rational(-1), Rational(1)}};
  EXPECT_EQ(resultant(a, c), Rational(0));
}

TEST(Roots, BisectSqrtTwo) {
  const UPoly p{{Rational(-2), Rational(0), Rational(1)}};
  const RootBracket r = bisect_root(p, Rational(1), Rational(2));
  EXPECT_NEAR(r.mid(), std::sqrt(2.0), 1e-14);
  EXPECT_LE(r.lo * r.lo, Rational(2));
  EXPECT_GE(r.hi * r.hi, Rational(2));
}

TEST(Linalg, EigenDecompositionOfKnownMatrix) {
  Operator m(3, 3);
  m << 2, 1, 0, 1, 2, 0, 0, 0, 3;
  const auto e = eig_sym(m);
  EXPECT_NEAR(e.values(0), 1.0, 1e-14);
  EXPECT_NEAR(e.values(1), 3.0, 1e-14);
  EXPECT_NEAR(e.values(2), 3.0, 1e-14);
  ASSERT_EQ(e.clusters.size(), 2u);
  EXPECT_EQ(e.clusters[1].basis.cols(), 2);
}

TEST(Linalg, KernelComplementProjector) {
  Sampler rng(3);
  const Operator a = rng.gaussian(5) * rng.gaussian(6).transpose();  // rank 1
  const Operator k = kernel(a);
  EXPECT_EQ(k.cols(), 5);
  EXPECT_LE(max_abs(a * k), 1e-12);
  const Operator b = orthonormalize(rng.orthogonal(6).leftCols(2));
  const Operator c = complement(b, 6);
  EXPECT_EQ(c.cols(), 4);
  EXPECT_LE(max_abs(b.transpose() * c), 1e-12);
  EXPECT_LE(max_abs(projector(b) + projector(c) - Operator::Identity(6, 6)), 1e-12);
  EXPECT_LE(containment_residual(b, span_union(b, c)), 1e-12);
}

TEST(Random, SameSeedSameStream) {
  Sampler a(9), b(9);
  EXPECT_EQ(a.gaussian(4), b.gaussian(4));
  EXPECT_EQ(a.uniform(), b.uniform());
}
