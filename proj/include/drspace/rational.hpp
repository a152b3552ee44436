#pragma once

#include <string>

#include <gmpxx.h>

namespace drspace {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact value of a finite double.
inline Rational to_rational(double x) {
  Rational r(x);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& r) { return sgn(r); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational pow_rational(const Rational& base, unsigned k) {
  Rational out(1);
  for (unsigned i = 0; i < k; ++i) out *= base;
  return out;
}

}  // namespace drspace
