#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "drspace/dralgebra.hpp"
#include "drspace/linalg.hpp"
#include "drspace/random.hpp"

namespace drspace {

/// Levi-Civita connection and curvature of the left-invariant metric.  All
/// vectors are identified with left-invariant fields; `nab_[a]` is the matrix
/// of T -> nabla_{e_a} T~ in flat coordinates.
class CurvatureContext {
public:
  explicit CurvatureContext(DamekRicci g) : g_(std::move(g)) {
    const Eigen::Index n = g_.dim();
    nab_.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index a = 0; a < n; ++a) {
      const SolvVec ea = g_.unflatten(Vector::Unit(n, a));
      Operator m(n, n);
      for (Eigen::Index b = 0; b < n; ++b) m.col(b) = g_.flatten(nabla(ea, g_.unflatten(Vector::Unit(n, b))));
      nab_.push_back(std::move(m));
    }
  }

  const DamekRicci& algebra() const { return g_; }
  Eigen::Index dim() const { return g_.dim(); }

  /// nabla_{T1} T2~ for T1 = V + Y + sA, T2 = U + X + rA.
  SolvVec nabla(const SolvVec& t1, const SolvVec& t2) const {
    g_.check(t1.v, t1.z);
    g_.check(t2.v, t2.z);
    const Vector& V = t1.v; const Vector& Y = t1.z;
    const Vector& U = t2.v; const Vector& X = t2.z;
    const double r = t2.a;
    SolvVec out;
    out.v = -0.5 * (g_.J(X) * V) - 0.5 * (g_.J(Y) * U) - 0.5 * r * V;
    out.z = -0.5 * g_.bracket_v(U, V) - r * Y;
    out.a = 0.5 * U.dot(V) + X.dot(Y);
    return out;
  }

  /// Matrix of T' -> nabla_T T'~.
  Operator nabla_op(const Vector& t) const {
    Operator m = Operator::Zero(dim(), dim());
    for (Eigen::Index a = 0; a < dim(); ++a)
      if (t(a) != 0.0) m += t(a) * nab_[static_cast<std::size_t>(a)];
    return m;
  }

  /// Matrix of T' -> nabla_{T'} xi~ (Nomizu operator of xi).
  Operator nomizu(const Vector& xi) const {
    Operator m(dim(), dim());
    for (Eigen::Index a = 0; a < dim(); ++a) m.col(a) = nab_[static_cast<std::size_t>(a)] * xi;
    return m;
  }

  /// R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y].
  Operator riemann_op(const Vector& x, const Vector& y) const {
    const Operator nx = nabla_op(x), ny = nabla_op(y);
    const Vector xy = g_.flatten(bracket(g_, g_.unflatten(x), g_.unflatten(y)));
    return nx * ny - ny * nx - nabla_op(xy);
  }

  Vector riemann(const Vector& x, const Vector& y, const Vector& z) const { return riemann_op(x, y) * z; }

  SolvVec riemann(const SolvVec& x, const SolvVec& y, const SolvVec& z) const {
    return g_.unflatten(riemann(g_.flatten(x), g_.flatten(y), g_.flatten(z)));
  }

  /// <R(X, Y) Z, W>.
  double riemann4(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const {
    return riemann(x, y, z).dot(w);
  }

  /// Y -> R(Y, T) T, assembled from the connection.
  Operator jacobi_assembled(const Vector& t) const {
    Operator m(dim(), dim());
    for (Eigen::Index b = 0; b < dim(); ++b) m.col(b) = riemann(Vector::Unit(dim(), b), t, t);
    return m;
  }

  /// Closed form of R_{T1} T2 with T1 = V + Y + sA, T2 = U + X + rA.
  SolvVec jacobi_apply(const SolvVec& t1, const SolvVec& t2) const {
    const Vector& V = t1.v; const Vector& Y = t1.z; const double s = t1.a;
    const Vector& U = t2.v; const Vector& X = t2.z; const double r = t2.a;
    const double n1 = t1.squared_norm(), ip = t1.dot(t2), vv = V.squaredNorm();
    const Vector jyv = g_.J(Y) * V;
    const Vector uv = g_.bracket_v(U, V);
    SolvVec out;
    out.v = 0.75 * (g_.J(X) * jyv) + 0.75 * (g_.J(uv) * V) + 0.75 * r * jyv - 0.75 * s * (g_.J(X) * V) -
            0.25 * n1 * U + (0.75 * X.dot(Y) + 0.25 * ip) * V;
    out.z = -0.75 * g_.bracket_v(U, jyv) + 0.75 * s * uv - (n1 - 0.75 * vv) * X + ip * Y;
    out.a = 0.75 * U.dot(jyv) - r * (n1 - 0.75 * vv) + s * (ip - 0.75 * U.dot(V));
    return out;
  }

  /// Jacobi operator R_T from the closed form.
  Operator jacobi(const Vector& t) const {
    const SolvVec t1 = g_.unflatten(t);
    Operator m(dim(), dim());
    for (Eigen::Index b = 0; b < dim(); ++b)
      m.col(b) = g_.flatten(jacobi_apply(t1, g_.unflatten(Vector::Unit(dim(), b))));
    return m;
  }

  Operator jacobi(const SolvVec& t) const { return jacobi(g_.flatten(t)); }

  /// (nabla_{T_k} R~)(X, Y, Z, W) for left-invariant arguments.
  double nabla_riemann(const Vector& tk, const Vector& x, const Vector& y, const Vector& z,
                       const Vector& w) const {
    const Operator n = nabla_op(tk);
    return -riemann4(n * x, y, z, w) - riemann4(x, n * y, z, w) - riemann4(x, y, n * z, w) -
           riemann4(x, y, z, n * w);
  }

  /// Ric(T, T) = trace of the Jacobi operator R_T.
  double ricci(const Vector& t) const { return jacobi_assembled(t).trace(); }

private:
  DamekRicci g_;
  std::vector<Operator> nab_;
};

// ---------------------------------------------------------------------------
// Diagnostics

struct ConnectionAxioms {
  double metric = 0.0;   // <nabla_T T2, T3> + <T2, nabla_T T3>
  double torsion = 0.0;  // nabla_T1 T2 - nabla_T2 T1 - [T1, T2]
  std::size_t samples = 0;
};

inline ConnectionAxioms check_connection_axioms(const CurvatureContext& ctx, std::size_t samples,
                                                std::uint64_t seed) {
  const DamekRicci& g = ctx.algebra();
  Sampler rng(seed);
  ConnectionAxioms r;
  r.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const SolvVec t1 = g.random(rng), t2 = g.random(rng), t3 = g.random(rng);
    const double m = ctx.nabla(t1, t2).dot(t3) + t2.dot(ctx.nabla(t1, t3));
    r.metric = std::max(r.metric, std::abs(m));
    const SolvVec tor = ctx.nabla(t1, t2) - ctx.nabla(t2, t1) - bracket(g, t1, t2);
    r.torsion = std::max(r.torsion, tor.norm());
  }
  return r;
}

struct TensorSymmetries {
  double jacobi_crosscheck = 0.0;  // |R(Y,X)X - R_X Y| (closed form)
  double antisymmetry = 0.0;
  double first_bianchi = 0.0;
  double pair_symmetry = 0.0;
  double second_bianchi = 0.0;
  std::size_t samples = 0;
};

inline TensorSymmetries check_tensor_symmetries(const CurvatureContext& ctx, std::size_t samples,
                                                std::uint64_t seed, bool with_second_bianchi = true) {
  const DamekRicci& g = ctx.algebra();
  Sampler rng(seed);
  TensorSymmetries r;
  r.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const Vector x = g.flatten(g.random(rng)), y = g.flatten(g.random(rng));
    const Vector z = g.flatten(g.random(rng)), w = g.flatten(g.random(rng));
    const Vector assembled = ctx.riemann(y, x, x);
    const Vector closed = g.flatten(ctx.jacobi_apply(g.unflatten(x), g.unflatten(y)));
    r.jacobi_crosscheck = std::max(r.jacobi_crosscheck, (assembled - closed).norm());
    r.antisymmetry = std::max(r.antisymmetry, (ctx.riemann(x, y, z) + ctx.riemann(y, x, z)).norm());
    const Vector b1 = ctx.riemann(x, y, z) + ctx.riemann(y, z, x) + ctx.riemann(z, x, y);
    r.first_bianchi = std::max(r.first_bianchi, b1.norm());
    r.pair_symmetry =
        std::max(r.pair_symmetry, std::abs(ctx.riemann4(x, y, z, w) - ctx.riemann4(z, w, x, y)));
    if (with_second_bianchi) {
      const Vector t = g.flatten(g.random(rng));
      const double b2 = ctx.nabla_riemann(t, x, y, z, w) + ctx.nabla_riemann(x, y, t, z, w) +
                        ctx.nabla_riemann(y, t, x, z, w);
      r.second_bianchi = std::max(r.second_bianchi, std::abs(b2));
    }
  }
  return r;
}

struct RicciIsotropy {
  double mean = 0.0;
  double stdev = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Ric(T, T) / |T|^2 over random unit T.
inline RicciIsotropy ricci_isotropy(const CurvatureContext& ctx, std::size_t samples, std::uint64_t seed) {
  Sampler rng(seed);
  std::vector<double> vals;
  vals.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) vals.push_back(ctx.ricci(rng.unit(ctx.dim())));
  RicciIsotropy r;
  r.samples = samples;
  r.seed = seed;
  if (vals.empty()) return r;
  for (double x : vals) r.mean += x;
  r.mean /= static_cast<double>(vals.size());
  for (double x : vals) r.stdev += (x - r.mean) * (x - r.mean);
  r.stdev = std::sqrt(r.stdev / static_cast<double>(vals.size()));
  return r;
}

// ---------------------------------------------------------------------------
// The nilpotent group n = v + z.  Same connection with every A-term removed.

struct NilpotentRicci {
  std::vector<double> v_eigenvalues;
  std::vector<double> z_eigenvalues;
  double cross_block = 0.0;  // max |Ric(v, z)|
  bool sign_split = false;   // Ric < 0 on v and Ric > 0 on z
  bool flat = false;
};

/// Ricci operator of the metric 2-step nilpotent algebra with <[U,W], Z_i> =
/// <J_i U, W>.  The generators need not satisfy the Clifford relations; zero
/// generators give the abelian algebra.
inline NilpotentRicci nilpotent_ricci(unsigned d_v, const std::vector<Operator>& gens) {
  const Eigen::Index dv = d_v, dz = static_cast<Eigen::Index>(gens.size()), n = dv + dz;
  auto jz = [&](const Vector& z) {
    Operator j = Operator::Zero(dv, dv);
    for (Eigen::Index i = 0; i < dz; ++i) j += z(i) * gens[static_cast<std::size_t>(i)];
    return j;
  };
  auto br = [&](const Vector& u, const Vector& w) {
    Vector out(dz);
    for (Eigen::Index i = 0; i < dz; ++i) out(i) = (gens[static_cast<std::size_t>(i)] * u).dot(w);
    return out;
  };
  auto nab = [&](const Vector& t1, const Vector& t2) {
    const Vector V = t1.head(dv), Y = t1.tail(dz), U = t2.head(dv), X = t2.tail(dz);
    Vector out(n);
    out << -0.5 * (jz(X) * V) - 0.5 * (jz(Y) * U), -0.5 * br(U, V);
    return out;
  };
  auto lie = [&](const Vector& t1, const Vector& t2) {
    Vector out = Vector::Zero(n);
    out.tail(dz) = br(t1.head(dv), t2.head(dv));
    return out;
  };

  std::vector<Operator> N;
  for (Eigen::Index a = 0; a < n; ++a) {
    Operator m(n, n);
    for (Eigen::Index b = 0; b < n; ++b) m.col(b) = nab(Vector::Unit(n, a), Vector::Unit(n, b));
    N.push_back(std::move(m));
  }
  auto nop = [&](const Vector& t) {
    Operator m = Operator::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) m += t(a) * N[static_cast<std::size_t>(a)];
    return m;
  };

  // Ric(e_a, e_b) = sum_c <R(e_c, e_a) e_b, e_c>
  Operator ric = Operator::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const Vector ec = Vector::Unit(n, c);
    for (Eigen::Index a = 0; a < n; ++a) {
      const Vector ea = Vector::Unit(n, a);
      const Operator r = nop(ec) * nop(ea) - nop(ea) * nop(ec) - nop(lie(ec, ea));
      ric.row(a) += r.row(c);
    }
  }
  ric = 0.5 * (ric + ric.transpose());

  NilpotentRicci out;
  out.cross_block = dz ? max_abs(ric.block(0, dv, dv, dz)) : 0.0;
  const Eigen::SelfAdjointEigenSolver<Operator> ev(ric.topLeftCorner(dv, dv));
  for (Eigen::Index i = 0; i < dv; ++i) out.v_eigenvalues.push_back(ev.eigenvalues()(i));
  if (dz) {
    const Eigen::SelfAdjointEigenSolver<Operator> ez(ric.bottomRightCorner(dz, dz));
    for (Eigen::Index i = 0; i < dz; ++i) out.z_eigenvalues.push_back(ez.eigenvalues()(i));
  }
  const double tiny = 1e-12;
  const bool v_neg = !out.v_eigenvalues.empty() &&
                     *std::max_element(out.v_eigenvalues.begin(), out.v_eigenvalues.end()) < -tiny;
  const bool z_pos = !out.z_eigenvalues.empty() &&
                     *std::min_element(out.z_eigenvalues.begin(), out.z_eigenvalues.end()) > tiny;
  out.sign_split = v_neg && z_pos;
  out.flat = max_abs(ric) <= tiny;
  return out;
}

inline NilpotentRicci ricci_heisenberg(const CliffordModule& m) { return nilpotent_ricci(m.d_v, m.generators); }

// ---------------------------------------------------------------------------
// Totally geodesic subalgebras

struct ClosureReport {
  double curvature = 0.0;   // distance of R(h, h) h from h
  double connection = 0.0;  // distance of nabla_h h~ from h
  double nabla_curvature = 0.0;  // max |(nabla_h R)(h, h, h, h')| over h' in h^perp
};

/// Closure of span(basis) under R, nabla and nabla R; basis columns in flat coordinates.
inline ClosureReport subalgebra_closure(const CurvatureContext& ctx, const Operator& basis) {
  const Operator h = orthonormalize(basis);
  const Operator perp = complement(h, ctx.dim());
  const Operator p = Operator::Identity(ctx.dim(), ctx.dim()) - projector(h);
  ClosureReport r;
  const Eigen::Index m = h.cols();
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) {
      const Operator rab = ctx.riemann_op(h.col(a), h.col(b));
      r.curvature = std::max(r.curvature, max_abs(p * rab * h));
      if (b == 0) r.connection = std::max(r.connection, max_abs(p * ctx.nabla_op(h.col(a)) * h));
    }
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b)
        for (Eigen::Index c = 0; c < m; ++c)
          for (Eigen::Index w = 0; w < perp.cols(); ++w)
            r.nabla_curvature = std::max(
                r.nabla_curvature,
                std::abs(ctx.nabla_riemann(h.col(k), h.col(a), h.col(b), h.col(c), perp.col(w))));
  return r;
}

/// max |(nabla_h R)(h, h, h, h)| over an orthonormal basis of h.
inline double parallel_curvature_defect(const CurvatureContext& ctx, const Operator& basis) {
  const Operator h = orthonormalize(basis);
  const Eigen::Index m = h.cols();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Operator n = ctx.nabla_op(h.col(k));
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b) {
        // (nabla_k R)(X, Y) as an operator, compressed to h
        const Vector x = h.col(a), y = h.col(b);
        const Operator dr = n * ctx.riemann_op(x, y) - ctx.riemann_op(x, y) * n -
                            ctx.riemann_op(n * x, y) - ctx.riemann_op(x, n * y);
        worst = std::max(worst, max_abs(h.transpose() * dr * h));
      }
  }
  return worst;
}

}  // namespace drspace
