#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "drspace/linalg.hpp"

namespace drspace {

/// Largest dimension of a center z acting by J_Z^2 = -|Z|^2 on a module of
/// dimension d_v:  d_v = 2^(4a+b) c with c odd, 0 <= b <= 3, gives 8a + 2^b - 1.
inline unsigned max_center_dim(unsigned d_v) {
  if (d_v == 0) throw DomainError("max_center_dim: d_v must be positive");
  unsigned k = 0;
  while ((d_v & 1u) == 0) {
    d_v >>= 1u;
    ++k;
  }
  const unsigned a = k / 4, b = k % 4;
  return 8 * a + (1u << b) - 1;
}

// ---------------------------------------------------------------------------
// Quaternions and octonions

using Quaternion = std::array<double, 4>;  // 1, i, j, k

inline Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

inline Quaternion qconj(const Quaternion& a) { return {a[0], -a[1], -a[2], -a[3]}; }

/// Octonion in the basis 1, e1, ..., e7.  Multiplication is the Cayley-Dickson
/// double of the quaternions, (a,b)(c,d) = (ac - d*b, da + bc*), where
/// e1, e2, e3 = i, j, k of the first quaternion and e4..e7 = (0,1), (0,i),
/// (0,j), (0,k).
struct Octonion {
  std::array<double, 8> c{};

  static Octonion unit(std::size_t i) {
    Octonion o;
    o.c.at(i) = 1.0;
    return o;
  }

  static Octonion from(const Vector& v, Eigen::Index offset = 0) {
    Octonion o;
    for (std::size_t i = 0; i < 8; ++i) o.c[i] = v(offset + static_cast<Eigen::Index>(i));
    return o;
  }

  Vector vec() const {
    Vector v(8);
    for (std::size_t i = 0; i < 8; ++i) v(static_cast<Eigen::Index>(i)) = c[i];
    return v;
  }

  double real() const { return c[0]; }
  double norm() const { return vec().norm(); }

  Octonion conj() const {
    Octonion o = *this;
    for (std::size_t i = 1; i < 8; ++i) o.c[i] = -o.c[i];
    return o;
  }

  friend Octonion operator+(Octonion a, const Octonion& b) {
    for (std::size_t i = 0; i < 8; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Octonion operator-(Octonion a, const Octonion& b) {
    for (std::size_t i = 0; i < 8; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend Octonion operator*(double s, Octonion a) {
    for (auto& x : a.c) x *= s;
    return a;
  }

  friend Octonion operator*(const Octonion& x, const Octonion& y) {
    const Quaternion a{x.c[0], x.c[1], x.c[2], x.c[3]}, b{x.c[4], x.c[5], x.c[6], x.c[7]};
    const Quaternion cq{y.c[0], y.c[1], y.c[2], y.c[3]}, d{y.c[4], y.c[5], y.c[6], y.c[7]};
    const Quaternion ac = qmul(a, cq), db = qmul(qconj(d), b);
    const Quaternion da = qmul(d, a), bc = qmul(b, qconj(cq));
    Octonion o;
    for (std::size_t i = 0; i < 4; ++i) {
      o.c[i] = ac[i] - db[i];
      o.c[i + 4] = da[i] + bc[i];
    }
    return o;
  }

  double dot(const Octonion& o) const {
    double s = 0.0;
    for (std::size_t i = 0; i < 8; ++i) s += c[i] * o.c[i];
    return s;
  }
};

using OctonionPair = std::pair<Octonion, Octonion>;

/// (Z W2, -Z* W1) for any octonion Z.
inline OctonionPair octonion_pair_action(const Octonion& z, const OctonionPair& w) {
  return {z * w.second, -1.0 * (z.conj() * w.first)};
}

/// J_Z W on the octonion plane, defined for purely imaginary Z.
inline OctonionPair j_from_octonions(const Octonion& z, const OctonionPair& w,
                                     double tol = 1e-12) {
  if (std::abs(z.real()) > tol) {
    std::ostringstream os;
    os << "j_from_octonions: Z must be purely imaginary (real part " << z.real() << ")";
    throw DomainError(os.str());
  }
  return octonion_pair_action(z, w);
}

// ---------------------------------------------------------------------------
// Clifford modules

/// Module v over Cl(z, -<,>): d_z skew orthogonal generators J_1..J_dz on
/// R^dv with J_i J_j + J_j J_i = -2 delta_ij id.  The module is a direct sum of
/// copies of one irreducible; `iso_class_flags[c]` = +1/-1 flips the sign of
/// the last generator on copy c, which switches the isomorphism class of the
/// copy when d_z = 3 or 7.
struct CliffordModule {
  unsigned d_z = 0;
  unsigned d_v = 0;
  std::vector<Operator> generators;
  std::vector<int> iso_class_flags;

  unsigned irreducible_dim() const { return d_v / static_cast<unsigned>(iso_class_flags.size()); }
};

/// Dimension of an irreducible module for 1 <= d_z <= 8.
inline unsigned irreducible_module_dim(unsigned d_z) {
  static constexpr std::array<unsigned, 9> dims{0, 2, 4, 4, 8, 8, 8, 8, 16};
  if (d_z == 0 || d_z > 8) throw DomainError("irreducible_module_dim: supported for 1 <= d_z <= 8");
  return dims[d_z];
}

namespace detail {

inline Operator left_mult_quaternion(std::size_t unit) {
  Operator m(4, 4);
  Quaternion e{};
  e.at(unit) = 1.0;
  for (std::size_t col = 0; col < 4; ++col) {
    Quaternion x{};
    x[col] = 1.0;
    const Quaternion y = qmul(e, x);
    for (std::size_t row = 0; row < 4; ++row)
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = y[row];
  }
  return m;
}

inline Operator left_mult_octonion(std::size_t unit) {
  Operator m(8, 8);
  const Octonion e = Octonion::unit(unit);
  for (std::size_t col = 0; col < 8; ++col)
    m.col(static_cast<Eigen::Index>(col)) = (e * Octonion::unit(col)).vec();
  return m;
}

/// Matrix of W -> (Z W2, -Z* W1) on R^16 = O^2 for Z = e_unit.
inline Operator octonion_pair_generator(std::size_t unit) {
  Operator m(16, 16);
  const Octonion z = Octonion::unit(unit);
  for (std::size_t col = 0; col < 16; ++col) {
    OctonionPair w;
    (col < 8 ? w.first : w.second) = Octonion::unit(col % 8);
    const OctonionPair r = octonion_pair_action(z, w);
    m.col(static_cast<Eigen::Index>(col)) << r.first.vec(), r.second.vec();
  }
  return m;
}

inline std::vector<Operator> irreducible_generators(unsigned d_z) {
  std::vector<Operator> gens;
  if (d_z == 1) {
    Operator j(2, 2);
    j << 0, -1, 1, 0;
    gens.push_back(j);
  } else if (d_z <= 3) {
    for (std::size_t i = 1; i <= d_z; ++i) gens.push_back(left_mult_quaternion(i));
  } else if (d_z <= 7) {
    for (std::size_t i = 1; i <= d_z; ++i) gens.push_back(left_mult_octonion(i));
  } else {
    for (std::size_t i = 0; i < 8; ++i) gens.push_back(octonion_pair_generator(i));
  }
  return gens;
}

}  // namespace detail

inline CliffordModule build_module(unsigned d_z, unsigned d_v, std::vector<int> iso_class_flags = {}) {
  if (d_v == 0 || d_z == 0) throw DomainError("build_module: d_z and d_v must be positive");
  const unsigned bound = max_center_dim(d_v);
  if (d_z > bound) {
    std::ostringstream os;
    os << "build_module: d_z = " << d_z << " exceeds the Clifford bound 8a + 2^b - 1 = " << bound
       << " for d_v = " << d_v;
    throw DomainError(os.str());
  }
  const unsigned irr = irreducible_module_dim(d_z);
  const unsigned copies = d_v / irr;
  if (iso_class_flags.empty()) iso_class_flags.assign(copies, 1);
  if (iso_class_flags.size() != copies)
    throw DomainError("build_module: need one iso-class flag per irreducible summand");
  for (int f : iso_class_flags)
    if (f != 1 && f != -1) throw DomainError("build_module: iso-class flags must be +1 or -1");

  CliffordModule m;
  m.d_z = d_z;
  m.d_v = d_v;
  m.iso_class_flags = std::move(iso_class_flags);
  const auto irr_gens = detail::irreducible_generators(d_z);
  for (unsigned i = 0; i < d_z; ++i) {
    Operator g = Operator::Zero(d_v, d_v);
    for (unsigned c = 0; c < copies; ++c) {
      const double sign = (i + 1 == d_z) ? m.iso_class_flags[c] : 1.0;
      g.block(c * irr, c * irr, irr, irr) = sign * irr_gens[i];
    }
    m.generators.push_back(std::move(g));
  }
  return m;
}

/// J_Z = sum_i Z_i J_i.
inline Operator j_op(const CliffordModule& m, const Vector& z) {
  if (z.size() != static_cast<Eigen::Index>(m.d_z)) {
    std::ostringstream os;
    os << "j_op: Z has dimension " << z.size() << ", module center has " << m.d_z;
    throw DomainError(os.str());
  }
  Operator j = Operator::Zero(m.d_v, m.d_v);
  for (unsigned i = 0; i < m.d_z; ++i) j += z(i) * m.generators[i];
  return j;
}

/// max |J_i J_j + J_j J_i + 2 delta_ij id| over all generator pairs.
inline double anticommutator_residual(const CliffordModule& m) {
  double worst = 0.0;
  const Operator id = Operator::Identity(m.d_v, m.d_v);
  for (unsigned i = 0; i < m.d_z; ++i)
    for (unsigned j = i; j < m.d_z; ++j) {
      Operator r = m.generators[i] * m.generators[j] + m.generators[j] * m.generators[i];
      if (i == j) r += 2.0 * id;
      worst = std::max(worst, max_abs(r));
    }
  return worst;
}

/// Sign s with J_1 J_2 J_3 = s id, or 0 if the product is not +-id.
inline int triple_product_sign(const CliffordModule& m, double tol = 1e-9) {
  if (m.d_z < 3) return 0;
  const Operator p = m.generators[0] * m.generators[1] * m.generators[2];
  const Operator id = Operator::Identity(m.d_v, m.d_v);
  if (max_abs(p - id) <= tol) return 1;
  if (max_abs(p + id) <= tol) return -1;
  return 0;
}

/// Damek-Ricci spaces over these modules that are symmetric: d_z = 1,
/// (d_z, d_v) = (7, 8), and d_z = 3 with all irreducible summands isomorphic.
inline bool is_symmetric_space(const CliffordModule& m) {
  if (m.d_z == 1) return true;
  if (m.d_z == 7 && m.d_v == 8) return true;
  if (m.d_z == 3) return triple_product_sign(m) != 0;
  return false;
}

/// Every admissible (d_z, d_v) with d_v <= max_dv.
inline std::vector<std::pair<unsigned, unsigned>> admissible_dimensions(unsigned max_dv) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned dv = 1; dv <= max_dv; ++dv)
    for (unsigned dz = 1; dz <= max_center_dim(dv); ++dz) out.emplace_back(dz, dv);
  return out;
}

}  // namespace drspace
