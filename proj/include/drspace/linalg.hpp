#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace drspace {

using Vector = Eigen::VectorXd;
/// Matrix of a linear map in an orthonormal basis.
using Operator = Eigen::MatrixXd;

/// Raised when an argument violates an operation's precondition.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical thresholds shared by the whole engine.
struct Tolerances {
  double sym = 1e-12;     // entrywise symmetry / skewness check
  double cluster = 1e-7;  // max gap between eigenvalues of one cluster
  double rank = 1e-9;     // rank-revealing threshold for subspaces
};

inline double max_abs(const Operator& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double asymmetry(const Operator& m) {
  return m.size() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
}

inline double skew_defect(const Operator& m) {
  return m.size() == 0 ? 0.0 : (m + m.transpose()).cwiseAbs().maxCoeff();
}

inline bool is_symmetric(const Operator& m, double tol = Tolerances{}.sym) {
  return m.rows() == m.cols() && asymmetry(m) <= tol * std::max(1.0, max_abs(m));
}

inline bool is_skew(const Operator& m, double tol = Tolerances{}.sym) {
  return m.rows() == m.cols() && skew_defect(m) <= tol * std::max(1.0, max_abs(m));
}

/// Modified Gram-Schmidt over the columns in the given order; columns whose
/// residual norm drops below `tol` are discarded.
inline Operator orthonormalize(const Operator& cols, double tol = Tolerances{}.rank) {
  std::vector<Vector> kept;
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    Vector w = cols.col(c);
    const double scale = std::max(1.0, w.norm());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& k : kept) w -= k.dot(w) * k;
    if (w.norm() > tol * scale) kept.push_back(w.normalized());
  }
  Operator out(cols.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = kept[i];
  return out;
}

/// Orthogonal projector onto the column span of an orthonormal basis.
inline Operator projector(const Operator& basis) {
  return basis * basis.transpose();
}

/// Deterministic orthonormal basis of span(basis): Gram-Schmidt of the
/// projected coordinate vectors e_0, e_1, ...
inline Operator canonical_basis(const Operator& basis, double tol = Tolerances{}.rank) {
  const Eigen::Index dim = basis.cols();
  if (dim == 0) return Operator(basis.rows(), 0);
  const Operator p = projector(basis);
  std::vector<Vector> kept;
  auto residual = [&](Eigen::Index i) {
    Vector w = p.col(i);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& k : kept) w -= k.dot(w) * k;
    return w;
  };
  for (Eigen::Index i = 0; i < p.cols() && static_cast<Eigen::Index>(kept.size()) < dim; ++i) {
    Vector w = residual(i);
    if (w.norm() > 1e-3) kept.push_back(w.normalized());
  }
  // fall back to the strongest remaining coordinate direction
  while (static_cast<Eigen::Index>(kept.size()) < dim) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index i = 0; i < p.cols(); ++i) {
      const double nrm = residual(i).norm();
      if (nrm > best_norm) { best_norm = nrm; best = i; }
    }
    if (best_norm <= tol) throw std::runtime_error("canonical_basis: lost rank");
    kept.push_back(residual(best).normalized());
  }
  Operator out(basis.rows(), dim);
  for (Eigen::Index i = 0; i < dim; ++i) out.col(i) = kept[static_cast<std::size_t>(i)];
  return out;
}

/// Orthonormal basis of the orthogonal complement of span(basis) in R^ambient.
inline Operator complement(const Operator& basis, Eigen::Index ambient) {
  Operator cols(ambient, basis.cols() + ambient);
  if (basis.cols() > 0) cols.leftCols(basis.cols()) = basis;
  cols.rightCols(ambient) = Operator::Identity(ambient, ambient);
  const Operator all = orthonormalize(cols);
  return all.rightCols(all.cols() - basis.cols());
}

/// Null space of m (as a map R^cols -> R^rows), canonicalized.
inline Operator kernel(const Operator& m, double tol = Tolerances{}.rank) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Operator::Identity(n, n);
  Eigen::JacobiSVD<Operator> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * scale) ++rank;
  const Operator null = svd.matrixV().rightCols(n - rank);
  return canonical_basis(null);
}

/// Sum of two subspaces, orthonormalized in argument order.
inline Operator span_union(const Operator& a, const Operator& b, double tol = Tolerances{}.rank) {
  Operator cols(a.rows(), a.cols() + b.cols());
  if (a.cols()) cols.leftCols(a.cols()) = a;
  if (b.cols()) cols.rightCols(b.cols()) = b;
  return orthonormalize(cols, tol);
}

/// Largest distance of a unit basis vector of `sub` from span(`within`).
inline double containment_residual(const Operator& sub, const Operator& within) {
  if (sub.cols() == 0) return 0.0;
  const Operator r = sub - within * (within.transpose() * sub);
  double worst = 0.0;
  for (Eigen::Index c = 0; c < r.cols(); ++c) worst = std::max(worst, r.col(c).norm());
  return worst;
}

/// One group of numerically coincident eigenvalues.
struct EigenCluster {
  double value = 0.0;              // mean of the member eigenvalues
  std::vector<std::size_t> indices;  // positions in EigenDecomposition::values
  Operator basis;                  // orthonormal, canonical within the cluster

  std::size_t multiplicity() const { return indices.size(); }
};

struct EigenDecomposition {
  Vector values;  // ascending
  Operator vectors;
  std::vector<EigenCluster> clusters;
  double residual = 0.0;  // ||M - Q diag Q^T||_F

  /// Cluster whose value lies within `tol` of `target`, or nullptr.
  const EigenCluster* find(double target, double tol) const {
    for (const auto& c : clusters)
      if (std::abs(c.value - target) <= tol) return &c;
    return nullptr;
  }
};

inline EigenDecomposition eig_sym(const Operator& m, const Tolerances& tol = {}) {
  if (m.rows() != m.cols()) throw DomainError("eig_sym: matrix is not square");
  if (!is_symmetric(m, tol.sym)) {
    std::ostringstream os;
    os << "eig_sym: matrix is not symmetric (max asymmetry " << asymmetry(m) << ")";
    throw DomainError(os.str());
  }
  EigenDecomposition out;
  const Eigen::Index n = m.rows();
  if (n == 0) {
    out.values = Vector(0);
    out.vectors = Operator(0, 0);
    return out;
  }
  const Operator sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Operator> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_sym: solver failed");
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  out.residual = (sym - out.vectors * out.values.asDiagonal() * out.vectors.transpose()).norm();

  std::size_t start = 0;
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t i = 1; i <= un; ++i) {
    const bool split = i == un ||
        out.values(static_cast<Eigen::Index>(i)) - out.values(static_cast<Eigen::Index>(i - 1)) > tol.cluster;
    if (!split) continue;
    EigenCluster c;
    double sum = 0.0;
    for (std::size_t k = start; k < i; ++k) {
      c.indices.push_back(k);
      sum += out.values(static_cast<Eigen::Index>(k));
    }
    c.value = sum / static_cast<double>(i - start);
    c.basis = canonical_basis(out.vectors.middleCols(static_cast<Eigen::Index>(start),
                                                      static_cast<Eigen::Index>(i - start)));
    out.clusters.push_back(std::move(c));
    start = i;
  }
  return out;
}

/// Matrix of the restriction of `m` to span(basis), in that basis.
inline Operator restrict_to(const Operator& m, const Operator& basis) {
  return basis.transpose() * m * basis;
}

}  // namespace drspace
