#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "drspace/linalg.hpp"
#include "drspace/rational.hpp"

namespace drspace {

/// Dense univariate polynomial with rational coefficients, lowest degree first.
struct UPoly {
  std::vector<Rational> coeffs;

  Rational operator()(const Rational& t) const {
    Rational acc(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
    return acc;
  }

  double operator()(double t) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k].get_d();
    return acc;
  }

  /// Degree after dropping zero leading coefficients; -1 for the zero polynomial.
  int degree() const {
    for (std::size_t k = coeffs.size(); k-- > 0;)
      if (coeffs[k] != 0) return static_cast<int>(k);
    return -1;
  }
};

/// Res(a, b) as the determinant of the Sylvester matrix, by exact Gaussian
/// elimination.  Zero iff a and b share a complex root (or both leading
/// coefficients vanish, which `degree` rules out).
inline Rational resultant(const UPoly& a, const UPoly& b) {
  const int m = a.degree(), n = b.degree();
  if (m < 0 || n < 0) return Rational(0);
  if (m == 0) return Rational(pow_rational(a.coeffs[0], static_cast<unsigned>(n)));
  if (n == 0) return Rational(pow_rational(b.coeffs[0], static_cast<unsigned>(m)));
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, Rational(0)));
  // rows hold coefficients highest degree first, shifted by the row index
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = a.coeffs[static_cast<std::size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = b.coeffs[static_cast<std::size_t>(n - k)];
  Rational det(1);
  for (std::size_t c = 0; c < size; ++c) {
    std::size_t piv = c;
    while (piv < size && s[piv][c] == 0) ++piv;
    if (piv == size) return Rational(0);
    if (piv != c) {
      std::swap(s[piv], s[c]);
      det = -det;
    }
    det *= s[c][c];
    for (std::size_t r = c + 1; r < size; ++r) {
      if (s[r][c] == 0) continue;
      const Rational f = s[r][c] / s[c][c];
      for (std::size_t k = c; k < size; ++k) s[r][k] -= f * s[c][k];
    }
  }
  return det;
}

/// Rational interval [lo, hi] known to contain exactly one simple root.
struct RootBracket {
  Rational lo, hi;
  double mid() const { return Rational((lo + hi) / 2).get_d(); }
  double width() const { return Rational(hi - lo).get_d(); }
};

/// Bisection with exact sign evaluation at dyadic midpoints.  Requires
/// p(lo) and p(hi) of strictly opposite signs; stops once the width is below
/// `width`.
inline RootBracket bisect_root(const UPoly& p, Rational lo, Rational hi, double width = 1e-15) {
  int slo = sgn(p(lo));
  const int shi = sgn(p(hi));
  if (slo == 0) return {lo, lo};
  if (shi == 0) return {hi, hi};
  if (slo == shi) throw DomainError("bisect_root: no sign change on the bracket");
  const Rational w = to_rational(width);
  for (int it = 0; it < 400 && Rational(hi - lo) > w; ++it) {
    Rational mid = (lo + hi) / 2;
    const int sm = sgn(p(mid));
    if (sm == 0) return {mid, mid};
    if (sm == slo) lo = std::move(mid); else hi = std::move(mid);
  }
  return {lo, hi};
}

}  // namespace drspace
