#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "drspace/clifford.hpp"
#include "drspace/linalg.hpp"
#include "drspace/random.hpp"

namespace drspace {

/// Element V + Y + sA of s = v + z + RA.
struct SolvVec {
  Vector v;
  Vector z;
  double a = 0.0;

  static SolvVec zero(unsigned d_v, unsigned d_z) {
    return {Vector::Zero(d_v), Vector::Zero(d_z), 0.0};
  }

  double dot(const SolvVec& o) const { return v.dot(o.v) + z.dot(o.z) + a * o.a; }
  double squared_norm() const { return dot(*this); }
  double norm() const { return std::sqrt(squared_norm()); }

  friend SolvVec operator+(SolvVec x, const SolvVec& y) {
    x.v += y.v;
    x.z += y.z;
    x.a += y.a;
    return x;
  }
  friend SolvVec operator-(SolvVec x, const SolvVec& y) {
    x.v -= y.v;
    x.z -= y.z;
    x.a -= y.a;
    return x;
  }
  friend SolvVec operator*(double c, SolvVec x) {
    x.v *= c;
    x.z *= c;
    x.a *= c;
    return x;
  }
};

/// The metric solvable Lie algebra of a Damek-Ricci space.  Coordinates of the
/// flat representation are ordered v (0..d_v-1), z (d_v..d_v+d_z-1), A (last).
class DamekRicci {
public:
  explicit DamekRicci(CliffordModule module) : module_(std::move(module)) {
    if (module_.d_z == 0 || module_.d_v == 0)
      throw DomainError("DamekRicci: both z and v must have positive dimension");
    symmetric_ = is_symmetric_space(module_);
  }

  DamekRicci(unsigned d_z, unsigned d_v, std::vector<int> flags = {})
      : DamekRicci(build_module(d_z, d_v, std::move(flags))) {}

  const CliffordModule& module() const { return module_; }
  unsigned d_v() const { return module_.d_v; }
  unsigned d_z() const { return module_.d_z; }
  /// n + 1 = d_v + d_z + 1.
  Eigen::Index dim() const { return module_.d_v + module_.d_z + 1; }
  Eigen::Index a_index() const { return dim() - 1; }
  bool symmetric() const { return symmetric_; }

  Operator J(const Vector& z) const { return j_op(module_, z); }

  /// [U, W] for U, W in v:  <[U, W], Z> = <J_Z U, W>.
  Vector bracket_v(const Vector& u, const Vector& w) const {
    Vector out(module_.d_z);
    for (unsigned i = 0; i < module_.d_z; ++i) out(i) = (module_.generators[i] * u).dot(w);
    return out;
  }

  SolvVec make(const Vector& v, const Vector& z, double a) const {
    check(v, z);
    return {v, z, a};
  }

  SolvVec from_v(const Vector& v) const { return make(v, Vector::Zero(d_z()), 0.0); }
  SolvVec from_z(const Vector& z) const { return make(Vector::Zero(d_v()), z, 0.0); }
  SolvVec unit_a() const { return make(Vector::Zero(d_v()), Vector::Zero(d_z()), 1.0); }

  Vector flatten(const SolvVec& t) const {
    check(t.v, t.z);
    Vector out(dim());
    out << t.v, t.z, t.a;
    return out;
  }

  SolvVec unflatten(const Vector& x) const {
    if (x.size() != dim()) throw DomainError("unflatten: wrong dimension");
    return {x.head(d_v()), x.segment(d_v(), d_z()), x(a_index())};
  }

  Vector flat_v(const Vector& u) const { return flatten(from_v(u)); }
  Vector flat_z(const Vector& x) const { return flatten(from_z(x)); }
  Vector flat_a() const { return Vector::Unit(dim(), a_index()); }

  /// Columns of a v-basis (or z-basis) placed in flat coordinates.
  Operator embed_v(const Operator& b) const {
    Operator out = Operator::Zero(dim(), b.cols());
    out.topRows(d_v()) = b;
    return out;
  }
  Operator embed_z(const Operator& b) const {
    Operator out = Operator::Zero(dim(), b.cols());
    out.middleRows(d_v(), d_z()) = b;
    return out;
  }

  SolvVec random(Sampler& rng) const {
    return {rng.gaussian(d_v()), rng.gaussian(d_z()), rng.normal()};
  }

  void check(const Vector& v, const Vector& z) const {
    if (v.size() != static_cast<Eigen::Index>(d_v()) || z.size() != static_cast<Eigen::Index>(d_z())) {
      std::ostringstream os;
      os << "dimension mismatch: got (" << v.size() << ", " << z.size() << "), expected (" << d_v()
         << ", " << d_z() << ")";
      throw DomainError(os.str());
    }
  }

private:
  CliffordModule module_;
  bool symmetric_ = false;
};

/// Lie bracket of s:  [A, U] = U/2,  [A, Z] = Z,  [v, v] in z,  z central in n.
inline SolvVec bracket(const DamekRicci& g, const SolvVec& t1, const SolvVec& t2) {
  g.check(t1.v, t1.z);
  g.check(t2.v, t2.z);
  SolvVec out;
  out.v = 0.5 * t1.a * t2.v - 0.5 * t2.a * t1.v;
  out.z = g.bracket_v(t1.v, t2.v) + t1.a * t2.z - t2.a * t1.z;
  out.a = 0.0;
  return out;
}

struct HeisenbergReport {
  double residual_norm_identity = 0.0;   // [V, J_Y V] = |V|^2 Y
  double residual_polarized = 0.0;       // [V, J_Y U] - [J_Y V, U] = 2 <U, V> Y
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

inline HeisenbergReport verify_heisenberg_identities(const DamekRicci& g, std::size_t samples,
                                                     std::uint64_t seed = 1) {
  Sampler rng(seed);
  HeisenbergReport r;
  r.samples = samples;
  r.seed = seed;
  for (std::size_t k = 0; k < samples; ++k) {
    const Vector v = rng.gaussian(g.d_v()), u = rng.gaussian(g.d_v());
    const Vector y = rng.gaussian(g.d_z());
    const Operator jy = g.J(y);
    const Vector lhs1 = g.bracket_v(v, jy * v);
    r.residual_norm_identity = std::max(r.residual_norm_identity, (lhs1 - v.squaredNorm() * y).norm());
    const Vector lhs2 = g.bracket_v(v, jy * u) - g.bracket_v(jy * v, u);
    r.residual_polarized = std::max(r.residual_polarized, (lhs2 - 2.0 * u.dot(v) * y).norm());
  }
  r.pass = std::max(r.residual_norm_identity, r.residual_polarized) <= 1e-11;
  return r;
}

/// K_{V,Y} on Y^perp in z, X -> |V|^-2 |Y|^-1 [V, J_X J_Y V].
struct KOperator {
  Operator basis;   // d_z x (d_z - 1), orthonormal basis of Y^perp in z
  Operator matrix;  // K in that basis
  Vector V, Y;

  Eigen::Index dim() const { return matrix.rows(); }
};

namespace detail {
inline void require_nonzero(const Vector& x, const char* what) {
  if (x.norm() == 0.0) throw DomainError(std::string("k_operator: ") + what + " must be nonzero");
}
}  // namespace detail

/// K_{V,Y} X for any X in z (X is projected onto Y^perp by the formula itself
/// only when X is already orthogonal to Y).
inline Vector apply_k(const DamekRicci& g, const Vector& v, const Vector& y, const Vector& x) {
  return g.bracket_v(v, g.J(x) * (g.J(y) * v)) / (v.squaredNorm() * y.norm());
}

inline KOperator k_operator(const DamekRicci& g, const Vector& v, const Vector& y) {
  g.check(v, y);
  detail::require_nonzero(v, "V");
  detail::require_nonzero(y, "Y");
  KOperator k;
  k.V = v;
  k.Y = y;
  const Operator ydir = y.normalized();
  k.basis = canonical_basis(complement(ydir, g.d_z()));
  const Eigen::Index m = k.basis.cols();
  Operator image(g.d_z(), m);
  for (Eigen::Index c = 0; c < m; ++c) image.col(c) = apply_k(g, v, y, k.basis.col(c));
  k.matrix = k.basis.transpose() * image;
  return k;
}

/// One eigenspace z_mu of K^2, expressed in z coordinates.
struct KSquareEigenspace {
  double mu = 0.0;
  Operator basis;  // d_z x dim
};

inline std::vector<KSquareEigenspace> k_square_spectrum(const KOperator& k, const Tolerances& tol = {}) {
  std::vector<KSquareEigenspace> out;
  if (k.dim() == 0) return out;
  const Operator k2 = k.matrix * k.matrix;
  const auto eig = eig_sym(0.5 * (k2 + k2.transpose()), tol);
  for (const auto& c : eig.clusters) out.push_back({c.value, canonical_basis(k.basis * c.basis)});
  return out;
}

/// z_{-1} together with the check of J_X J_Y V = |Y| J_{K X} V on its basis.
struct ZMinusOne {
  Operator basis;  // d_z x d_{-1}, z coordinates
  double equivalence_residual = 0.0;   // max over basis of the identity above
  double k_invariance_residual = 0.0;  // distance of K(basis) from span(basis)
  double converse_residual = 0.0;      // min over the complement of |K^2 X + X| (should be > 0)

  Eigen::Index dim() const { return basis.cols(); }
};

inline ZMinusOne k_square_minus1_space(const DamekRicci& g, const Vector& v, const Vector& y,
                                       const Tolerances& tol = {}) {
  const KOperator k = k_operator(g, v, y);
  ZMinusOne out;
  out.basis = Operator(g.d_z(), 0);
  for (const auto& e : k_square_spectrum(k, tol))
    if (std::abs(e.mu + 1.0) <= tol.cluster) out.basis = e.basis;

  const Operator jy_v = g.J(y) * v;
  Operator kimg(g.d_z(), out.dim());
  for (Eigen::Index c = 0; c < out.dim(); ++c) {
    const Vector x = out.basis.col(c);
    const Vector kx = apply_k(g, v, y, x);
    kimg.col(c) = kx;
    const Vector lhs = g.J(x) * jy_v;
    const Vector rhs = y.norm() * (g.J(kx) * v);
    out.equivalence_residual = std::max(out.equivalence_residual, (lhs - rhs).norm());
  }
  out.k_invariance_residual = containment_residual(kimg, out.basis);

  // converse direction: on the rest of Y^perp the identity fails
  const Operator rest = complement(span_union(out.basis, y.normalized()), g.d_z());
  out.converse_residual = rest.cols() ? INFINITY : 0.0;
  for (Eigen::Index c = 0; c < rest.cols(); ++c) {
    const Vector x = rest.col(c);
    const Vector kx = apply_k(g, v, y, x);
    const double gap = (g.J(x) * jy_v - y.norm() * (g.J(kx) * v)).norm();
    out.converse_residual = std::min(out.converse_residual, gap);
  }
  return out;
}

}  // namespace drspace
