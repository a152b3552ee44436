#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "drspace/curvature.hpp"
#include "drspace/dralgebra.hpp"
#include "drspace/linalg.hpp"
#include "drspace/rational.hpp"
#include "drspace/roots.hpp"

namespace drspace {

// ---------------------------------------------------------------------------
// Cubics

/// Roots eta of p(t) = t^3 + 3t^2 - q and alpha = (eta - 1)/4, ascending.
struct AlphaCubic {
  double mu = 0.0, v = 0.0, y = 0.0;
  Rational q;
  std::array<RootBracket, 3> eta_brackets;
  std::array<double, 3> eta{};
  std::array<double, 3> alpha{};
};

inline UPoly eta_cubic(const Rational& q) { return {{-q, Rational(0), Rational(3), Rational(1)}}; }

/// q = 27 v^2 y (1 + mu), evaluated exactly from the binary doubles.
inline Rational cubic_q(double mu, double v, double y) {
  return Rational(27) * to_rational(v) * to_rational(v) * to_rational(y) * (1 + to_rational(mu));
}

namespace detail {

/// Roots for any parameters with 0 < q < 4 (three simple real roots).
inline AlphaCubic alpha_cubic_roots(double mu, double v, double y) {
  AlphaCubic c;
  c.mu = std::min(mu, 0.0);
  c.v = v;
  c.y = y;
  c.q = cubic_q(c.mu, v, y);
  const UPoly p = eta_cubic(c.q);
  // p(-3) = -q < 0, p(-2) = 4 - q > 0, p(0) = -q < 0, p(1) = 4 - q > 0 for 0 < q < 4
  const std::array<std::pair<long, long>, 3> br{{{-3, -2}, {-2, 0}, {0, 1}}};
  for (std::size_t l = 0; l < 3; ++l) {
    c.eta_brackets[l] = bisect_root(p, Rational(br[l].first), Rational(br[l].second));
    c.eta[l] = c.eta_brackets[l].mid();
    c.alpha[l] = (c.eta[l] - 1.0) / 4.0;
  }
  return c;
}

}  // namespace detail

inline AlphaCubic alpha_cubic(double mu, double v, double y) {
  if (!(mu > -1.0) || mu > 1e-9) throw DomainError("alpha_cubic: mu must lie in (-1, 0]");
  if (!(v > 0.0) || !(y > 0.0) || !(v + y < 1.0))
    throw DomainError("alpha_cubic: need v, y > 0 and v + y < 1");
  return detail::alpha_cubic_roots(mu, v, y);
}

/// f(t) = t^3 + 3/2 t^2 + 9/16 t + q^2 with certified root intervals.
struct FCubic {
  Rational q;
  std::array<RootBracket, 3> brackets;
  std::array<double, 3> alpha{};
  Rational f_zero, f_minus_q;
  bool interlacing = false;  // -1 < a1 < -3/4 < a2 < -1/4 < a3 <= 0
};

inline UPoly f_cubic(const Rational& q) {
  return {{q * q, Rational(9, 16), Rational(3, 2), Rational(1)}};
}

inline FCubic f_cubic_roots(const Rational& q) {
  if (!(q > 0) || !(q < Rational(1, 4))) throw DomainError("f_cubic_roots: q must lie in (0, 1/4)");
  FCubic c;
  c.q = q;
  const UPoly f = f_cubic(q);
  c.f_zero = f(Rational(0));
  c.f_minus_q = f(Rational(-q));
  // f(-1) = q^2 - 1/16 < 0, f(-3/4) = q^2 > 0, f(-1/4) = q^2 - 1/16 < 0, f(-q) < 0 < f(0)
  c.brackets[0] = bisect_root(f, Rational(-1), Rational(-3, 4));
  c.brackets[1] = bisect_root(f, Rational(-3, 4), Rational(-1, 4));
  c.brackets[2] = bisect_root(f, Rational(-q), Rational(0));
  for (std::size_t l = 0; l < 3; ++l) c.alpha[l] = c.brackets[l].mid();
  c.interlacing = c.brackets[0].lo > -1 && c.brackets[0].hi < Rational(-3, 4) &&
                  c.brackets[1].lo > Rational(-3, 4) && c.brackets[1].hi < Rational(-1, 4) &&
                  c.brackets[2].lo > Rational(-1, 4) && c.brackets[2].hi <= 0 && c.f_zero > 0 &&
                  c.f_minus_q < 0;
  return c;
}

inline FCubic f_cubic_roots(double q) { return f_cubic_roots(to_rational(q)); }

// ---------------------------------------------------------------------------
// Normal frames

enum class FrameCase { General, NoZ, NoA, NoV, Axis };

inline const char* to_string(FrameCase c) {
  switch (c) {
    case FrameCase::General: return "general";
    case FrameCase::NoZ: return "no-z";
    case FrameCase::NoA: return "no-a";
    case FrameCase::NoV: return "no-v";
    case FrameCase::Axis: return "axis";
  }
  return "?";
}

/// Unit normal xi = V + Y + sA together with the subspaces built from it.
/// Bases are orthonormal; `p`, `z_minus1` are in v- and z-coordinates, the
/// rest in flat coordinates.
class NormalFrame {
public:
  NormalFrame(std::shared_ptr<const CurvatureContext> ctx, const Vector& V, const Vector& Y, double s,
              const Tolerances& tol = {})
      : ctx_(std::move(ctx)), V_(V), Y_(Y), s_(s), tol_(tol) {
    const DamekRicci& g = ctx_->algebra();
    g.check(V, Y);
    const double nrm2 = V.squaredNorm() + Y.squaredNorm() + s * s;
    if (std::abs(nrm2 - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "NormalFrame: xi must be a unit vector (|xi|^2 = " << nrm2 << ")";
      throw DomainError(os.str());
    }
    xi_ = g.flatten(g.make(V, Y, s));
    const bool hv = V.norm() > 0.0, hy = Y.norm() > 0.0, hs = s != 0.0;
    if (hv && hy) kase_ = hs ? FrameCase::General : FrameCase::NoA;
    else if (hv) kase_ = FrameCase::NoZ;
    else if (hy) kase_ = FrameCase::NoV;
    else kase_ = FrameCase::Axis;

    jyv_ = g.J(Y) * V;
    // p = {U | [U,V] = [U,J_Y V] = 0, U perp V, J_Y V}
    Operator stacked(2 * g.d_z() + 2, g.d_v());
    for (unsigned c = 0; c < g.d_v(); ++c) {
      const Vector e = Vector::Unit(g.d_v(), c);
      stacked.col(c) << g.bracket_v(e, V), g.bracket_v(e, jyv_), e.dot(V), e.dot(jyv_);
    }
    p_ = kernel(stacked, tol.rank);

    s4_ = orthonormalize(as_cols({g.flat_a(), g.flat_v(V), g.flat_z(Y), g.flat_v(jyv_)}));
    z_minus1_ = Operator(g.d_z(), 0);
    if (hv && hy) {
      k_ = std::make_shared<KOperator>(k_operator(g, V, Y));
      k2_ = k_square_spectrum(*k_, tol);
      for (const auto& e : k2_)
        if (std::abs(e.mu + 1.0) <= tol.cluster) z_minus1_ = e.basis;
      t0_ = (g.flat_v(jyv_) + s * g.flat_z(Y) - Y.squaredNorm() * g.flat_a()) / Y.norm();
    }
    if (hv) q_ = (s * g.flat_v(V) - V.squaredNorm() * g.flat_a()) / V.norm();
  }

  const CurvatureContext& context() const { return *ctx_; }
  std::shared_ptr<const CurvatureContext> context_ptr() const { return ctx_; }
  const DamekRicci& algebra() const { return ctx_->algebra(); }
  const Tolerances& tolerances() const { return tol_; }

  const Vector& V() const { return V_; }
  const Vector& Y() const { return Y_; }
  double s() const { return s_; }
  double v() const { return V_.squaredNorm(); }
  double y() const { return Y_.squaredNorm(); }
  const Vector& xi() const { return xi_; }
  FrameCase kind() const { return kase_; }
  const Vector& jyv() const { return jyv_; }

  const Operator& s4() const { return s4_; }
  const Operator& p() const { return p_; }
  const Operator& z_minus1() const { return z_minus1_; }
  /// v_{-1} = J_{z_{-1}} V in flat coordinates.
  Operator v_minus1() const {
    const DamekRicci& g = algebra();
    Operator out(g.dim(), z_minus1_.cols());
    for (Eigen::Index c = 0; c < z_minus1_.cols(); ++c) out.col(c) = g.flat_v(g.J(z_minus1_.col(c)) * V_);
    return orthonormalize(out);
  }
  bool has_k() const { return static_cast<bool>(k_); }
  const KOperator& k() const {
    if (!k_) throw DomainError("NormalFrame: K is defined only when V and Y are nonzero");
    return *k_;
  }
  const std::vector<KSquareEigenspace>& k_square() const { return k2_; }
  Vector k_apply(const Vector& z) const { return apply_k(algebra(), V_, Y_, z); }
  /// T0 (defined when V, Y != 0) and Q (defined when V != 0), flat coordinates.
  const Vector& t0() const { return t0_; }
  const Vector& q_vector() const { return q_; }

  /// Orthonormal basis of xi^perp, flat coordinates.
  Operator tangent_basis() const { return canonical_basis(complement(xi_, algebra().dim())); }

  /// d_v - (d_p + 2 d_z - d_{-1}); zero when V, Y != 0.
  long dimension_defect() const {
    const DamekRicci& g = algebra();
    return static_cast<long>(g.d_v()) -
           (static_cast<long>(p_.cols()) + 2 * static_cast<long>(g.d_z()) - static_cast<long>(z_minus1_.cols()));
  }

private:
  static Operator as_cols(const std::vector<Vector>& vs) {
    Operator m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vs[i];
    return m;
  }

  std::shared_ptr<const CurvatureContext> ctx_;
  Vector V_, Y_;
  double s_;
  Tolerances tol_;
  Vector xi_, jyv_, t0_, q_;
  FrameCase kase_ = FrameCase::General;
  Operator s4_, p_, z_minus1_;
  std::shared_ptr<KOperator> k_;
  std::vector<KSquareEigenspace> k2_;
};

/// Random unit normal with the requested components switched on.
inline NormalFrame random_frame(std::shared_ptr<const CurvatureContext> ctx, Sampler& rng, bool with_v = true,
                                bool with_y = true, bool with_a = true, const Tolerances& tol = {}) {
  const DamekRicci& g = ctx->algebra();
  Vector V = with_v ? rng.gaussian(g.d_v()) : Vector::Zero(g.d_v());
  Vector Y = with_y ? rng.gaussian(g.d_z()) : Vector::Zero(g.d_z());
  double s = with_a ? rng.normal() : 0.0;
  const double n = std::sqrt(V.squaredNorm() + Y.squaredNorm() + s * s);
  V /= n;
  Y /= n;
  s /= n;
  // absorb rounding so that |xi| = 1 to working precision
  const double fix = 1.0 / std::sqrt(V.squaredNorm() + Y.squaredNorm() + s * s);
  return NormalFrame(std::move(ctx), fix * V, fix * Y, fix * s, tol);
}

// ---------------------------------------------------------------------------
// psi maps

/// psi_l(Z) = eta nu Z + 3 nu J_Z J_Y V - 9 v |Y| J_{KZ} V - 3 s eta J_Z V,
/// nu = eta + 3v, with eta = 4 alpha + 1.
inline Vector psi_vector(const NormalFrame& f, double eta, const Vector& z) {
  const DamekRicci& g = f.algebra();
  const double v = f.v(), nu = eta + 3.0 * v;
  const Vector kz = f.k_apply(z);
  const Vector vpart = 3.0 * nu * (g.J(z) * f.jyv()) - 9.0 * v * f.Y().norm() * (g.J(kz) * f.V()) -
                       3.0 * f.s() * eta * (g.J(z) * f.V());
  return g.flatten(g.make(vpart, eta * nu * z, 0.0));
}

/// Closed form of |psi_l(Z)|^2 / |Z|^2 on z_mu.
inline double psi_homothety_ratio(double eta, double mu, double v, double y, double s) {
  const double nu = eta + 3.0 * v;
  return eta * eta * nu * nu + 9.0 * nu * nu * y * v - 81.0 * mu * v * v * v * y + 9.0 * s * s * eta * eta * v +
         54.0 * nu * mu * v * v * y;
}

inline Vector psi_map(const NormalFrame& f, const KSquareEigenspace& zmu, double eta, const Vector& z,
                      double tol = 1e-7) {
  const Vector off = z - zmu.basis * (zmu.basis.transpose() * z);
  if (off.norm() > tol * std::max(1.0, z.norm()))
    throw DomainError("psi_map: Z does not lie in the eigenspace z_mu of K^2");
  return psi_vector(f, eta, z);
}

// ---------------------------------------------------------------------------
// Spectrum of R_xi on xi^perp

struct SpectralEigenspace {
  double alpha = 0.0;
  Operator basis;  // flat coordinates
  std::size_t multiplicity() const { return static_cast<std::size_t>(basis.cols()); }
};

struct CubicFamily {
  double mu = 0.0;
  Eigen::Index dim = 0;  // dim z_mu
  AlphaCubic cubic;
  std::array<double, 3> psi_residual{};        // |(R_xi - alpha) psi| / |psi|
  std::array<double, 3> homothety_spread{};    // relative spread of |psi Z|^2/|Z|^2
  std::array<double, 3> homothety_formula{};   // relative gap to the closed form
  bool psi_certified = false;  // psi vectors checked (s != 0 only)
};

struct SpectralReport {
  FrameCase kind = FrameCase::General;
  std::vector<SpectralEigenspace> eigenspaces;  // ascending alpha
  EigenDecomposition numeric;                   // in the tangent basis
  double reconstruction = 0.0;

  std::vector<double> predicted;                // with multiplicity
  double classification_gap = 0.0;  // max distance of a numeric eigenvalue to the predicted set
  bool multiplicity_match = false;
  double range_violation = 0.0;     // distance of eigenvalues outside [-1, 0]

  double l_minus1_residual = 0.0;   // explicit L_{-1} vectors
  double l_quarter_residual = 0.0;  // explicit L_{-1/4} vectors
  Eigen::Index l_minus1_dim = 0, l_quarter_dim = 0;
  double decomposition_residual = 0.0;  // L_{-1} + L_{-1/4} + R xi vs s4 + p + z_{-1} + v_{-1}
  double p_jy_invariance = 0.0;
  std::vector<CubicFamily> families;

  double max_certificate_residual() const {
    double w = std::max(l_minus1_residual, l_quarter_residual);
    for (const auto& f : families)
      for (std::size_t l = 0; l < 3; ++l) w = std::max(w, f.psi_residual[l]);
    return w;
  }
  double max_homothety_spread() const {
    double w = 0.0;
    for (const auto& f : families)
      for (std::size_t l = 0; l < 3; ++l) w = std::max({w, f.homothety_spread[l], f.homothety_formula[l]});
    return w;
  }
};

namespace detail {

inline double eigen_residual(const Operator& r, double alpha, const Vector& w) {
  const double n = w.norm();
  if (n == 0.0) return 0.0;
  return (r * w - alpha * w).norm() / n;
}

inline double max_eigen_residual(const Operator& r, double alpha, const std::vector<Vector>& ws) {
  double worst = 0.0;
  for (const auto& w : ws) worst = std::max(worst, eigen_residual(r, alpha, w));
  return worst;
}

}  // namespace detail

inline SpectralReport xi_spectrum(const NormalFrame& f) {
  const DamekRicci& g = f.algebra();
  const CurvatureContext& ctx = f.context();
  const Tolerances& tol = f.tolerances();
  const Operator R = ctx.jacobi(f.xi());
  const Operator B = f.tangent_basis();

  SpectralReport rep;
  rep.kind = f.kind();
  rep.numeric = eig_sym(restrict_to(R, B), tol);
  rep.reconstruction = rep.numeric.residual;
  for (const auto& c : rep.numeric.clusters) {
    rep.eigenspaces.push_back({c.value, B * c.basis});
    rep.range_violation = std::max({rep.range_violation, c.value - 0.0, -1.0 - c.value});
  }
  rep.range_violation = std::max(rep.range_violation, 0.0);

  const double v = f.v(), y = f.y(), s = f.s(), ny = std::sqrt(y);
  auto add = [&](double a, Eigen::Index m) { rep.predicted.insert(rep.predicted.end(), static_cast<std::size_t>(m), a); };

  if (f.kind() == FrameCase::General || f.kind() == FrameCase::NoA) {
    const Operator& zm1 = f.z_minus1();
    std::vector<Vector> lm1{f.t0()}, lq;
    for (Eigen::Index c = 0; c < zm1.cols(); ++c) {
      const Vector Z = zm1.col(c);
      const Vector jv = g.J(ny * f.k_apply(Z) - s * Z) * f.V();
      lm1.push_back(g.flatten(g.make(jv, (v - 1.0) * Z, 0.0)));
      lq.push_back(g.flatten(g.make(jv, v * Z, 0.0)));
    }
    // s4 cap span(xi, T0)^perp
    const Operator xt = orthonormalize((Operator(g.dim(), 2) << f.xi(), f.t0()).finished());
    const Operator s4q = orthonormalize(f.s4() - projector(xt) * f.s4());
    for (Eigen::Index c = 0; c < s4q.cols(); ++c) lq.push_back(s4q.col(c));
    for (Eigen::Index c = 0; c < f.p().cols(); ++c) lq.push_back(g.flat_v(f.p().col(c)));
    rep.l_minus1_residual = detail::max_eigen_residual(R, -1.0, lm1);
    rep.l_quarter_residual = detail::max_eigen_residual(R, -0.25, lq);
    rep.l_minus1_dim = 1 + zm1.cols();
    rep.l_quarter_dim = 2 + f.p().cols() + zm1.cols();
    add(-1.0, rep.l_minus1_dim);
    add(-0.25, rep.l_quarter_dim);

    // L_{-1} + L_{-1/4} + R xi = s4 + p + z_{-1} + v_{-1}
    Operator lhs = (Operator(g.dim(), 1) << f.xi()).finished();
    for (const auto& e : rep.eigenspaces)
      if (std::abs(e.alpha + 1.0) <= 1e-6 || std::abs(e.alpha + 0.25) <= 1e-6) lhs = span_union(lhs, e.basis);
    Operator rhs = span_union(f.s4(), g.embed_v(f.p()));
    rhs = span_union(rhs, g.embed_z(zm1));
    rhs = span_union(rhs, f.v_minus1());
    rep.decomposition_residual = std::max(containment_residual(lhs, rhs), containment_residual(rhs, lhs));
    if (lhs.cols() != rhs.cols()) rep.decomposition_residual = std::max(rep.decomposition_residual, 1.0);

    for (const auto& e : f.k_square()) {
      if (std::abs(e.mu + 1.0) <= tol.cluster) continue;
      CubicFamily fam;
      fam.mu = std::min(e.mu, 0.0);
      fam.dim = e.basis.cols();
      fam.cubic = f.kind() == FrameCase::General ? alpha_cubic(fam.mu, v, y) : detail::alpha_cubic_roots(fam.mu, v, y);
      for (std::size_t l = 0; l < 3; ++l) {
        const double eta = fam.cubic.eta[l], alpha = fam.cubic.alpha[l];
        const double closed = psi_homothety_ratio(eta, fam.mu, v, y, s);
        double lo = INFINITY, hi = -INFINITY;
        std::vector<Vector> ws;
        for (Eigen::Index c = 0; c < e.basis.cols(); ++c) {
          const Vector Z = e.basis.col(c);
          const Vector w = psi_map(f, e, eta, Z, 1e-6);
          ws.push_back(w);
          const double ratio = w.squaredNorm() / Z.squaredNorm();
          lo = std::min(lo, ratio);
          hi = std::max(hi, ratio);
          fam.homothety_formula[l] =
              std::max(fam.homothety_formula[l], std::abs(ratio - closed) / std::max(1.0, std::abs(closed)));
        }
        // also a generic combination inside z_mu
        if (e.basis.cols() > 1) {
          const Vector Z = e.basis * Vector::LinSpaced(e.basis.cols(), 1.0, 2.0);
          const double ratio = psi_vector(f, eta, Z).squaredNorm() / Z.squaredNorm();
          lo = std::min(lo, ratio);
          hi = std::max(hi, ratio);
        }
        fam.homothety_spread[l] = (hi - lo) / std::max(1.0, std::abs(hi));
        fam.psi_certified = f.kind() == FrameCase::General;
        if (fam.psi_certified) fam.psi_residual[l] = detail::max_eigen_residual(R, alpha, ws);
        add(alpha, fam.dim);
      }
      rep.families.push_back(std::move(fam));
    }
  } else if (f.kind() == FrameCase::NoZ) {
    std::vector<Vector> lm1, lq{f.q_vector()};
    for (unsigned i = 0; i < g.d_z(); ++i) {
      const Vector Z = Vector::Unit(g.d_z(), i);
      const Vector jz = g.J(Z) * f.V();
      lm1.push_back(g.flatten(g.make(jz, s * Z, 0.0)));
      lq.push_back(g.flatten(g.make(-s * jz, v * Z, 0.0)));
    }
    for (Eigen::Index c = 0; c < f.p().cols(); ++c) lq.push_back(g.flat_v(f.p().col(c)));
    rep.l_minus1_residual = detail::max_eigen_residual(R, -1.0, lm1);
    rep.l_quarter_residual = detail::max_eigen_residual(R, -0.25, lq);
    rep.l_minus1_dim = g.d_z();
    rep.l_quarter_dim = g.d_z() + 1 + f.p().cols();
    add(-1.0, rep.l_minus1_dim);
    add(-0.25, rep.l_quarter_dim);
  } else if (f.kind() == FrameCase::Axis) {
    add(-0.25, g.d_v());
    add(-1.0, g.d_z());
    rep.l_minus1_dim = g.d_z();
    rep.l_quarter_dim = g.d_v();
  }

  // p is J_Y-invariant
  if (f.p().cols()) {
    const Operator jp = g.J(f.Y()) * f.p();
    rep.p_jy_invariance = containment_residual(jp.colwise().normalized(), f.p());
  }

  if (!rep.predicted.empty()) {
    std::sort(rep.predicted.begin(), rep.predicted.end());
    for (Eigen::Index i = 0; i < rep.numeric.values.size(); ++i) {
      double best = INFINITY;
      for (double a : rep.predicted) best = std::min(best, std::abs(rep.numeric.values(i) - a));
      rep.classification_gap = std::max(rep.classification_gap, best);
    }
    rep.multiplicity_match = static_cast<Eigen::Index>(rep.predicted.size()) == rep.numeric.values.size();
    if (rep.multiplicity_match)
      for (std::size_t i = 0; i < rep.predicted.size(); ++i)
        if (std::abs(rep.predicted[i] - rep.numeric.values(static_cast<Eigen::Index>(i))) > 1e-7)
          rep.multiplicity_match = false;
  }
  return rep;
}

}  // namespace drspace
