#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "drspace/linalg.hpp"
#include "drspace/rational.hpp"

namespace drspace {

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by exponent vectors (one entry per variable
/// in `variables()`), so iteration order is lexicographic in the variable
/// order.  Zero coefficients are never stored.  Binary operations on
/// polynomials over different variable lists work over the union of both lists.
class MPoly {
public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, Rational>;

  MPoly() = default;
  MPoly(const Rational& c) { if (c != 0) terms_.emplace(Exponents{}, c); }  // NOLINT
  MPoly(long c) : MPoly(Rational(c)) {}                                     // NOLINT
  MPoly(int c) : MPoly(Rational(c)) {}                                      // NOLINT

  static MPoly variable(const std::string& name) {
    MPoly p;
    p.vars_.push_back(name);
    p.terms_.emplace(Exponents{1}, Rational(1));
    return p;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_unit_free(terms_.begin()->first));
  }

  Rational constant_value() const {
    for (const auto& [e, c] : terms_)
      if (is_unit_free(e)) return c;
    return Rational(0);
  }

  bool has_variable(const std::string& name) const { return index_of(name) >= 0; }

  /// Highest power of `name` occurring (0 if absent).
  unsigned degree(const std::string& name) const {
    const int i = index_of(name);
    if (i < 0) return 0;
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(i)]);
    return d;
  }

  /// Coefficient of name^k, as a polynomial in the remaining variables.
  MPoly coefficient(const std::string& name, unsigned k) const {
    const int i = index_of(name);
    MPoly out;
    out.vars_ = vars_;
    if (i < 0) {
      if (k == 0) out.terms_ = terms_;
      return out.pruned();
    }
    for (const auto& [e, c] : terms_) {
      if (e[static_cast<std::size_t>(i)] != k) continue;
      Exponents f = e;
      f[static_cast<std::size_t>(i)] = 0;
      out.terms_.emplace(std::move(f), c);
    }
    return out.pruned();
  }

  MPoly operator-() const {
    MPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  MPoly& operator+=(const MPoly& o) { return accumulate(o, 1); }
  MPoly& operator-=(const MPoly& o) { return accumulate(o, -1); }
  MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }

  friend MPoly operator+(MPoly a, const MPoly& b) { a += b; return a; }
  friend MPoly operator-(MPoly a, const MPoly& b) { a -= b; return a; }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly();
    const auto vars = merged(a.vars_, b.vars_);
    const MPoly x = a.over(vars);
    const MPoly y = b.over(vars);
    MPoly out;
    out.vars_ = vars;
    Exponents e(vars.size());
    for (const auto& [ea, ca] : x.terms_) {
      for (const auto& [eb, cb] : y.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        auto it = out.terms_.find(e);
        if (it == out.terms_.end()) {
          out.terms_.emplace(e, ca * cb);
        } else {
          it->second += ca * cb;
          if (it->second == 0) out.terms_.erase(it);
        }
      }
    }
    return out.pruned();
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return (a - b).is_zero(); }

  MPoly pow(unsigned k) const {
    MPoly result(1), base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  /// Replace every occurrence of `name` by `value`.
  MPoly substitute(const std::string& name, const MPoly& value) const {
    const unsigned d = degree(name);
    if (!has_variable(name)) return *this;
    // Horner in `name`
    MPoly out = coefficient(name, d);
    for (unsigned k = d; k-- > 0;) out = out * value + coefficient(name, k);
    return out;
  }

  MPoly substitute(const std::map<std::string, Rational>& values) const {
    MPoly out = *this;
    for (const auto& [name, v] : values) out = out.substitute(name, MPoly(v));
    return out;
  }

  /// Exact value; every variable must be assigned.
  Rational evaluate(const std::map<std::string, Rational>& values) const {
    const MPoly r = substitute(values);
    if (!r.is_constant()) throw DomainError("MPoly::evaluate: unassigned variables in " + r.str());
    return r.constant_value();
  }

  double evaluate(const std::map<std::string, double>& values) const {
    std::vector<double> x(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = values.find(vars_[i]);
      if (it == values.end()) throw DomainError("MPoly::evaluate: no value for " + vars_[i]);
      x[i] = it->second;
    }
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = c.get_d();
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
      sum += t;
    }
    return sum;
  }

  /// Human-readable form, highest terms first.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = abs(c);
      os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      bool unit = is_unit_free(e);
      if (mag != 1 || unit) os << mag.get_str();
      bool need_star = mag != 1 && !unit;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (need_star) os << "*";
        os << vars_[i];
        if (e[i] > 1) os << "^" << e[i];
        need_star = true;
      }
      first = false;
    }
    return os.str();
  }

  /// Same polynomial written over the (super)list `vars`.
  MPoly over(const std::vector<std::string>& vars) const {
    if (vars == vars_) return *this;
    std::vector<std::size_t> map(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(vars.begin(), vars.end(), vars_[i]);
      if (it == vars.end()) throw DomainError("MPoly::over: variable list lacks " + vars_[i]);
      map[i] = static_cast<std::size_t>(it - vars.begin());
    }
    MPoly out;
    out.vars_ = vars;
    for (const auto& [e, c] : terms_) {
      Exponents f(vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) f[map[i]] = e[i];
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  static std::vector<std::string> merged(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& v : b)
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
  }

private:
  std::vector<std::string> vars_;
  TermMap terms_;

  static bool is_unit_free(const Exponents& e) {
    return std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
  }

  int index_of(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
  }

  MPoly& accumulate(const MPoly& o, int sgn_o) {
    if (o.is_zero()) return *this;
    const auto vars = merged(vars_, o.vars_);
    if (vars != vars_) *this = over(vars);
    const MPoly y = o.over(vars);
    for (const auto& [e, c] : y.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_.emplace(e, sgn_o > 0 ? c : Rational(-c));
      } else {
        if (sgn_o > 0) it->second += c; else it->second -= c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    *this = pruned();
    return *this;
  }

  /// Drop variables that no longer occur.
  MPoly pruned() const {
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) used[i] = true;
    if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return *this;
    MPoly out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (used[i]) out.vars_.push_back(vars_[i]);
    for (const auto& [e, c] : terms_) {
      Exponents f;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (used[i]) f.push_back(e[i]);
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }
};

inline MPoly operator*(const Rational& c, const MPoly& p) { return MPoly(c) * p; }
inline MPoly operator*(long c, const MPoly& p) { return MPoly(c) * p; }
inline MPoly operator*(int c, const MPoly& p) { return MPoly(c) * p; }
inline MPoly operator+(const MPoly& p, long c) { return p + MPoly(c); }
inline MPoly operator-(const MPoly& p, long c) { return p - MPoly(c); }
inline MPoly operator+(long c, const MPoly& p) { return MPoly(c) + p; }
inline MPoly operator-(long c, const MPoly& p) { return MPoly(c) - p; }

inline MPoly var(const std::string& name) { return MPoly::variable(name); }

/// Remainder of `a` modulo `modulus`, viewed as univariate polynomials in `t`.
/// The modulus must be monic in t of degree >= 1.
inline MPoly poly_reduce(const MPoly& a, const std::string& t, const MPoly& modulus) {
  const unsigned d = modulus.degree(t);
  if (d == 0) throw DomainError("poly_reduce: modulus has degree 0 in " + t);
  const MPoly lead = modulus.coefficient(t, d);
  if (!(lead.is_constant() && lead.constant_value() == 1))
    throw DomainError("poly_reduce: modulus is not monic in " + t + " (leading coefficient " +
                      lead.str() + ")");
  const MPoly tail = modulus - MPoly::variable(t).pow(d);  // t^d == -tail
  MPoly r = a;
  for (unsigned k = r.degree(t); k >= d && !r.is_zero(); k = r.degree(t)) {
    const MPoly c = r.coefficient(t, k);
    r -= c * MPoly::variable(t).pow(k);
    r -= c * MPoly::variable(t).pow(k - d) * tail;
  }
  return r;
}

/// Exact quotient a / b when b divides a, otherwise nullopt.  Lexicographic
/// leading terms over the merged variable list.
inline std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw DomainError("divide_exact: division by zero polynomial");
  const auto vars = MPoly::merged(a.variables(), b.variables());
  MPoly r = a.over(vars);
  const MPoly d = b.over(vars);
  const auto lead = *d.terms().rbegin();
  MPoly q;
  while (!r.is_zero()) {
    const MPoly rv = r.over(vars);
    const auto& [er, cr] = *rv.terms().rbegin();
    MPoly::Exponents e(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (er[i] < lead.first[i]) return std::nullopt;
      e[i] = er[i] - lead.first[i];
    }
    MPoly mono(Rational(cr / lead.second));
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (e[i]) mono *= MPoly::variable(vars[i]).pow(e[i]);
    q += mono;
    r -= mono * d;
  }
  return q;
}

/// Rewrite a polynomial that is symmetric in `xs` in terms of the elementary
/// symmetric polynomials of `xs`, named by `es` (same length).  Other variables
/// are treated as coefficients.  Throws DomainError carrying the offending
/// residue when the input is not symmetric.
inline MPoly to_elementary(const MPoly& expr, const std::vector<std::string>& xs,
                           const std::vector<std::string>& es) {
  if (xs.size() != es.size() || xs.empty())
    throw DomainError("to_elementary: need one name per elementary polynomial");
  const std::size_t n = xs.size();

  // elementary symmetric polynomials of the xs
  std::vector<MPoly> elem(n + 1);
  elem[0] = MPoly(1);
  for (std::size_t k = 1; k <= n; ++k) elem[k] = MPoly();
  for (std::size_t i = 0; i < n; ++i) {
    const MPoly x = var(xs[i]);
    for (std::size_t k = std::min(i + 1, n); k >= 1; --k) elem[k] += elem[k - 1] * x;
  }
  std::vector<std::vector<MPoly>> powers(n + 1);
  auto elem_pow = [&](std::size_t k, unsigned p) -> const MPoly& {
    auto& cache = powers[k];
    if (cache.empty()) cache.push_back(MPoly(1));
    while (cache.size() <= p) cache.push_back(cache.back() * elem[k]);
    return cache[p];
  };

  auto vars = MPoly::merged(expr.variables(), xs);
  MPoly rest = expr.over(vars);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i)
    idx[i] = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), xs[i]) - vars.begin());

  MPoly result;
  while (true) {
    rest = rest.over(MPoly::merged(vars, rest.variables()));
    vars = rest.variables();
    for (std::size_t i = 0; i < n; ++i)
      idx[i] = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), xs[i]) - vars.begin());

    // lexicographically largest exponent pattern on the xs
    std::optional<MPoly::Exponents> best;
    for (const auto& [e, c] : rest.terms()) {
      MPoly::Exponents sub(n);
      for (std::size_t i = 0; i < n; ++i) sub[i] = e[idx[i]];
      if (std::all_of(sub.begin(), sub.end(), [](unsigned k) { return k == 0; })) continue;
      if (!best || sub > *best) best = sub;
    }
    if (!best) break;
    const auto& a = *best;
    for (std::size_t i = 1; i < n; ++i)
      if (a[i] > a[i - 1])
        throw DomainError("to_elementary: expression is not symmetric; residue " + rest.str());

    MPoly coeff;
    for (const auto& [e, c] : rest.terms()) {
      bool match = true;
      for (std::size_t i = 0; i < n && match; ++i) match = e[idx[i]] == a[i];
      if (!match) continue;
      MPoly mono(c);
      for (std::size_t j = 0; j < e.size(); ++j) {
        const bool is_x = std::find(idx.begin(), idx.end(), j) != idx.end();
        if (!is_x && e[j]) mono *= var(vars[j]).pow(e[j]);
      }
      coeff += mono;
    }
    MPoly in_x(1), in_e(1);
    for (std::size_t k = 1; k <= n; ++k) {
      const unsigned p = a[k - 1] - (k < n ? a[k] : 0u);
      if (!p) continue;
      in_x *= elem_pow(k, p);
      in_e *= var(es[k - 1]).pow(p);
    }
    rest -= coeff * in_x;
    result += coeff * in_e;
  }
  result += rest;
  return result;
}

/// Replace symmetric functions of the roots eta_1..eta_3 of
/// p(t) = t^3 + 3t^2 - q by their values e1 = -3, e2 = 0, e3 = q.
inline MPoly symmetric_eliminate(const MPoly& expr, const std::vector<std::string>& roots,
                                 const MPoly& q = var("q")) {
  if (roots.size() != 3) throw DomainError("symmetric_eliminate: expects three root names");
  const std::vector<std::string> es{"__e1", "__e2", "__e3"};
  MPoly r = to_elementary(expr, roots, es);
  r = r.substitute("__e1", MPoly(-3));
  r = r.substitute("__e2", MPoly(0));
  r = r.substitute("__e3", q);
  return r;
}

/// For an expression symmetric in two roots (eta_i, eta_j) of
/// p(t) = t^3 + 3t^2 - q, substitute eta_i + eta_j = -3 - eta_k and
/// eta_i eta_j = eta_k (eta_k + 3).
inline MPoly eliminate_root_pair(const MPoly& expr, const std::string& eta_i,
                                 const std::string& eta_j, const std::string& eta_k) {
  const std::vector<std::string> es{"__s1", "__s2"};
  MPoly r = to_elementary(expr, {eta_i, eta_j}, es);
  const MPoly ek = var(eta_k);
  r = r.substitute("__s1", MPoly(-3) - ek);
  r = r.substitute("__s2", ek * (ek + 3));
  return r;
}

/// Substitute x = num/den into p and clear the denominator: returns
/// den^deg_x(p) * p(num/den).
inline MPoly substitute_fraction(const MPoly& p, const std::string& x, const MPoly& num,
                                 const MPoly& den) {
  const unsigned d = p.degree(x);
  MPoly out;
  for (unsigned k = 0; k <= d; ++k) out += p.coefficient(x, k) * num.pow(k) * den.pow(d - k);
  return out;
}

}  // namespace drspace
