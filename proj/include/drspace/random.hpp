#pragma once

#include <cstdint>
#include <random>

#include "drspace/linalg.hpp"

namespace drspace {

/// Fixed-seed stream used for every "generic" sample.  Reports carry the seed.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform(0.0, 1.0); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  Vector gaussian(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  Vector unit(Eigen::Index n) {
    Vector v = gaussian(n);
    while (v.norm() < 1e-8) v = gaussian(n);
    return v.normalized();
  }

  /// Random element of span(basis) with standard Gaussian coordinates.
  Vector in_span(const Operator& basis) { return basis * gaussian(basis.cols()); }

  /// Haar-ish random orthogonal matrix (QR of a Gaussian matrix).
  Operator orthogonal(Eigen::Index n) {
    Operator g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = normal();
    Eigen::HouseholderQR<Operator> qr(g);
    Operator q = qr.householderQ() * Operator::Identity(n, n);
    return q;
  }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace drspace
