#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "drspace/curvature.hpp"
#include "drspace/linalg.hpp"
#include "drspace/mpoly.hpp"
#include "drspace/parallel.hpp"
#include "drspace/random.hpp"
#include "drspace/spectrum.hpp"

namespace drspace {

/// An eigenframe of R_xi on xi^perp (blocks = eigenspaces, in the order of
/// the spectral report) with every tensor the Gauss/Codazzi layer needs.
struct FrameGeometry {
  Operator tangent;                 // orthonormal basis of xi^perp
  Operator jacobi;                  // R_xi in `tangent` coordinates
  Operator nomizu;                  // ambient N_xi
  Operator frame;                   // X_1 .. X_n, flat coordinates
  std::vector<double> alpha;        // R_xi eigenvalue of each X_i
  std::vector<std::size_t> block_of;
  std::vector<double> block_alpha;
  std::vector<int> block_dim;
  std::vector<Operator> r_xi;       // R(xi, X_i)
  std::vector<Operator> r_pair;     // R(X_k, X_i) at k * n + i
  std::vector<Operator> nabla;      // nabla_{X_k}

  std::size_t size() const { return alpha.size(); }
  Vector x(std::size_t i) const { return frame.col(static_cast<Eigen::Index>(i)); }
};

/// Eigenframe from the clusters of `rep`; `rng` rotates inside each cluster.
inline std::shared_ptr<const FrameGeometry> frame_geometry(const NormalFrame& f, const SpectralReport& rep,
                                                           Sampler* rng = nullptr) {
  const CurvatureContext& ctx = f.context();
  auto g = std::make_shared<FrameGeometry>();
  g->tangent = f.tangent_basis();
  g->jacobi = restrict_to(ctx.jacobi(f.xi()), g->tangent);
  g->nomizu = ctx.nomizu(f.xi());
  std::size_t n = 0;
  for (const auto& e : rep.eigenspaces) n += e.multiplicity();
  g->frame = Operator(f.algebra().dim(), static_cast<Eigen::Index>(n));
  Eigen::Index col = 0;
  for (std::size_t b = 0; b < rep.eigenspaces.size(); ++b) {
    const auto& e = rep.eigenspaces[b];
    const Operator basis =
        rng && e.basis.cols() > 1 ? Operator(e.basis * rng->orthogonal(e.basis.cols())) : e.basis;
    g->block_alpha.push_back(e.alpha);
    g->block_dim.push_back(static_cast<int>(basis.cols()));
    for (Eigen::Index i = 0; i < basis.cols(); ++i) {
      g->frame.col(col++) = basis.col(i);
      g->alpha.push_back(e.alpha);
      g->block_of.push_back(b);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    g->r_xi.push_back(ctx.riemann_op(f.xi(), g->x(i)));
    g->nabla.push_back(ctx.nabla_op(g->x(i)));
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) g->r_pair.push_back(ctx.riemann_op(g->x(k), g->x(i)));
  return g;
}

/// One eigenspace L_alpha of R_xi with its share of principal curvatures.
struct ShapeBlock {
  double alpha = 0.0;
  int m_plus = 0, m_minus = 0;
  double rho_plus = 0.0, rho_minus = 0.0;
};

/// Curvature-adapted symmetric S on xi^perp whose restriction to every
/// eigenspace of R_xi solves S^2 - HS + (alpha - C) = 0.  The eigenframe is
/// `geometry->frame`; S is stored as an ambient matrix vanishing on xi.
struct ShapeCandidate {
  double H = 0.0, C = 0.0;
  std::shared_ptr<const FrameGeometry> geometry;
  std::vector<ShapeBlock> blocks;
  std::vector<double> lambda;  // principal curvature of each X_i
  Operator S;

  const Operator& frame() const { return geometry->frame; }
  const std::vector<double>& alpha() const { return geometry->alpha; }

  /// |sum lambda_i - H|; zero for self-consistent candidates.
  double trace_defect() const {
    double t = 0.0;
    for (double l : lambda) t += l;
    return std::abs(t - H);
  }
};

/// Builds S for prescribed (H, C) and split m_+ per block; the first m_+
/// frame vectors of a block carry rho_+.  Throws if a block needs a complex root.
inline ShapeCandidate assemble_candidate(std::shared_ptr<const FrameGeometry> geom, double H, double C,
                                         const std::vector<int>& m_plus) {
  const FrameGeometry& g = *geom;
  if (m_plus.size() != g.block_alpha.size()) throw DomainError("assemble_candidate: one split per eigenspace");
  ShapeCandidate c;
  c.H = H;
  c.C = C;
  for (std::size_t b = 0; b < m_plus.size(); ++b) {
    const double disc = H * H - 4.0 * (g.block_alpha[b] - C);
    if (disc < -1e-12 * std::max(1.0, H * H)) throw DomainError("assemble_candidate: complex principal curvature");
    const double d = std::sqrt(std::max(disc, 0.0));
    c.blocks.push_back({g.block_alpha[b], m_plus[b], g.block_dim[b] - m_plus[b], 0.5 * (H + d), 0.5 * (H - d)});
  }
  c.S = Operator::Zero(g.frame.rows(), g.frame.rows());
  std::vector<int> seen(m_plus.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const ShapeBlock& blk = c.blocks[g.block_of[i]];
    const double lam = seen[g.block_of[i]]++ < blk.m_plus ? blk.rho_plus : blk.rho_minus;
    c.lambda.push_back(lam);
    c.S += lam * g.x(i) * g.x(i).transpose();
  }
  c.geometry = std::move(geom);
  return c;
}

struct CandidateOptions {
  double h_max = 1e3;           // search window |H| <= h_max
  std::size_t scan_points = 4000;
  std::size_t max_splits = 200000;
};

namespace detail {

inline double split_function(double H, double C, const std::vector<double>& alphas, const std::vector<int>& k,
                             std::size_t n) {
  double g = (static_cast<double>(n) - 2.0) * H;
  for (std::size_t b = 0; b < alphas.size(); ++b) {
    const double d = H * H - 4.0 * (alphas[b] - C);
    g += k[b] * std::sqrt(std::max(d, 0.0));
  }
  return g;
}

/// Roots of g(H) = (n-2) H + sum_b k_b sqrt(H^2 - 4(alpha_b - C)) on the
/// region where every discriminant is non-negative.
inline std::vector<double> solve_mean_curvature(double C, const std::vector<double>& alphas, const std::vector<int>& k,
                                                std::size_t n, const CandidateOptions& opt) {
  double c0 = 0.0;
  for (double a : alphas) c0 = std::max(c0, 4.0 * (a - C));
  const double h0 = std::sqrt(c0);
  std::vector<double> roots;
  auto g = [&](double H) { return split_function(H, C, alphas, k, n); };
  std::vector<double> spacing(opt.scan_points + 1);
  for (std::size_t i = 0; i <= opt.scan_points; ++i)
    spacing[i] = (std::pow(1e6, static_cast<double>(i) / static_cast<double>(opt.scan_points)) - 1.0) / (1e6 - 1.0);
  for (int side : {-1, 1}) {
    // geometric spacing away from the branch point h0
    const double span = opt.h_max - h0;
    double prev_h = side * h0, prev_g = g(prev_h);
    if (std::abs(prev_g) <= 1e-13) roots.push_back(prev_h);
    for (std::size_t i = 1; i <= opt.scan_points; ++i) {
      const double h = side * (h0 + span * spacing[i]);
      const double gh = g(h);
      if (gh == 0.0) {
        roots.push_back(h);
      } else if ((prev_g < 0) != (gh < 0) && prev_g != 0.0) {
        double lo = prev_h, hi = h, glo = prev_g;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double gm = g(mid);
          if ((gm < 0) == (glo < 0)) { lo = mid; glo = gm; } else { hi = mid; }
        }
        roots.push_back(0.5 * (lo + hi));
      }
      prev_h = h;
      prev_g = gh;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              roots.end());
  return roots;
}

}  // namespace detail

/// All self-consistent candidates (H = Tr S) for the constant C, over every
/// split m_+ + m_- = dim L_alpha.
inline std::vector<ShapeCandidate> shape_candidates(std::shared_ptr<const FrameGeometry> geom, double C,
                                                    const CandidateOptions& opt = {}) {
  const FrameGeometry& g = *geom;
  const std::size_t nb = g.block_alpha.size(), n = g.size();
  std::size_t total = 1;
  for (int m : g.block_dim) total *= static_cast<std::size_t>(m + 1);
  if (total > opt.max_splits) throw DomainError("shape_candidates: too many multiplicity splits");

  std::vector<ShapeCandidate> out;
  std::vector<int> mp(nb), k(nb);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t b = 0; b < nb; ++b) {
      const auto base = static_cast<std::size_t>(g.block_dim[b] + 1);
      mp[b] = static_cast<int>(rest % base);
      rest /= base;
      k[b] = 2 * mp[b] - g.block_dim[b];
    }
    for (double H : detail::solve_mean_curvature(C, g.block_alpha, k, n, opt))
      out.push_back(assemble_candidate(geom, H, C, mp));
  }
  return out;
}

inline std::vector<ShapeCandidate> shape_candidates(const NormalFrame& f, double C, const CandidateOptions& opt = {}) {
  return shape_candidates(frame_geometry(f, xi_spectrum(f)), C, opt);
}

/// Invariants of a candidate: symmetry, Tr S = H, the block equations, and
/// the Gauss equation R_xi|_{xi^perp} = -S^2 + HS + C against the assembled R_xi.
struct CandidateCheck {
  double symmetry = 0.0;
  double trace = 0.0;
  double block_equation = 0.0;
  double gauss = 0.0;
  double adapted = 0.0;  // S L_alpha in L_alpha
};

inline CandidateCheck check_candidate(const ShapeCandidate& c) {
  const FrameGeometry& g = *c.geometry;
  CandidateCheck r;
  const Operator s = restrict_to(c.S, g.tangent);
  r.symmetry = asymmetry(s);
  r.trace = std::abs(s.trace() - c.H);
  for (std::size_t b = 0; b < c.blocks.size(); ++b) {
    Operator basis(g.frame.rows(), g.block_dim[b]);
    Eigen::Index col = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.block_of[i] == b) basis.col(col++) = g.x(i);
    const Operator sb = restrict_to(c.S, basis);
    const Operator id = Operator::Identity(sb.rows(), sb.cols());
    r.block_equation = std::max(r.block_equation, max_abs(sb * sb - c.H * sb + (c.blocks[b].alpha - c.C) * id));
    r.adapted = std::max(r.adapted, containment_residual(c.S * basis, basis));
  }
  const Operator id = Operator::Identity(s.rows(), s.cols());
  r.gauss = max_abs(g.jacobi - (-s * s + c.H * s + c.C * id));
  return r;
}

/// N_xi T' = nabla_{T'} xi~.
inline Operator nomizu(const CurvatureContext& ctx, const Vector& xi) { return ctx.nomizu(xi); }

// ---------------------------------------------------------------------------
// Derived Gauss equations and Codazzi

/// Gamma_{ki}^j = <nabla_k X_i, X_j> of the induced connection.  Only j > i
/// is stored; Gamma_{kj}^i = -Gamma_{ki}^j.
class ConnectionCoefficients {
public:
  explicit ConnectionCoefficients(std::size_t n = 0)
      : n_(n), values_(n * n * n, 0.0), known_(n * n * n, false) {}

  std::size_t size() const { return n_; }

  void set(std::size_t k, std::size_t i, std::size_t j, double value) {
    if (i == j) return;
    if (i > j) { std::swap(i, j); value = -value; }
    values_[index(k, i, j)] = value;
    known_[index(k, i, j)] = true;
  }

  std::optional<double> get(std::size_t k, std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    const double sign = i < j ? 1.0 : -1.0;
    if (i > j) std::swap(i, j);
    if (!known_[index(k, i, j)]) return std::nullopt;
    return sign * values_[index(k, i, j)];
  }

private:
  std::size_t index(std::size_t k, std::size_t i, std::size_t j) const { return (k * n_ + i) * n_ + j; }
  std::size_t n_;
  std::vector<double> values_;
  std::vector<bool> known_;
};

struct DerivedGauss {
  Operator gauss_map;                // columns nabla_k xi~ + lambda_k X_k
  Operator dg1;                      // (i, k): <R_{X_i} xi, nabla_k xi~ + lambda_k X_k>
  ConnectionCoefficients gamma;
  std::size_t undetermined = 0;      // (k, i, j) with alpha_i = alpha_j, i != j
  double max_dg1 = 0.0;
};

/// Solves the derived Gauss equation for Gamma on pairs with alpha_i != alpha_j,
/// and tabulates the left sides of the first derived Gauss equation.  The
/// derivative terms X_k(alpha_i) are taken to be zero.
inline DerivedGauss derived_gauss_residuals(const ShapeCandidate& c, double alpha_tol = 1e-7) {
  const FrameGeometry& g = *c.geometry;
  const std::size_t n = g.size();
  const auto ix = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
  DerivedGauss d;
  d.gamma = ConnectionCoefficients(n);
  d.gauss_map = g.nomizu * g.frame;
  for (std::size_t k = 0; k < n; ++k) d.gauss_map.col(ix(k)) += c.lambda[k] * g.x(k);

  d.dg1 = Operator(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector rx = g.r_xi[i] * g.x(i);  // R(xi, X_i) X_i = R_{X_i} xi
    for (std::size_t k = 0; k < n; ++k) {
      const double val = rx.dot(d.gauss_map.col(ix(k)));
      d.dg1(ix(i), ix(k)) = val;
      d.max_dg1 = std::max(d.max_dg1, std::abs(val));
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    const Vector gk = d.gauss_map.col(ix(k));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double da = g.alpha[j] - g.alpha[i];
        if (std::abs(da) <= alpha_tol) {
          ++d.undetermined;
          continue;
        }
        const Vector xi_i = g.x(i), xi_j = g.x(j);
        const double lhs = (g.r_xi[j] * xi_i + g.r_xi[i] * xi_j).dot(gk) + da * (g.nabla[k] * xi_i).dot(xi_j);
        d.gamma.set(k, i, j, lhs / da);
      }
  }
  return d;
}

struct CodazziResult {
  double max_residual = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // a needed Gamma was undetermined
};

/// Residual of R(X_k, X_i, X_j, xi) - (l_i - l_j) G_ki^j + (l_k - l_j) G_ik^j
/// over triples with i != j and k != j, where the derivative terms drop out.
inline CodazziResult codazzi_residual(const NormalFrame& f, const ShapeCandidate& c, const ConnectionCoefficients& gm,
                                      double lambda_tol = 1e-12) {
  const FrameGeometry& g = *c.geometry;
  const std::size_t n = g.size();
  CodazziResult r;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const Vector w = g.r_pair[k * n + i].transpose() * f.xi();  // <R(X_k, X_i) X_j, xi> = <X_j, w>
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || k == j) continue;
        const double li = c.lambda[i] - c.lambda[j], lk = c.lambda[k] - c.lambda[j];
        const auto gkij = gm.get(k, i, j), gikj = gm.get(i, k, j);
        if ((!gkij && std::abs(li) > lambda_tol) || (!gikj && std::abs(lk) > lambda_tol)) {
          ++r.skipped;
          continue;
        }
        const double res = g.x(j).dot(w) - li * gkij.value_or(0.0) + lk * gikj.value_or(0.0);
        r.max_residual = std::max(r.max_residual, std::abs(res));
        ++r.evaluated;
      }
    }
  return r;
}

/// max(Codazzi residual, first derived Gauss residual) for one candidate.
inline double aggregate_residual(const NormalFrame& f, const ShapeCandidate& c) {
  const DerivedGauss d = derived_gauss_residuals(c);
  const CodazziResult cz = codazzi_residual(f, c, d.gamma);
  return std::max(cz.max_residual, d.max_dg1);
}

// ---------------------------------------------------------------------------
// Specialized Codazzi combination

/// With Gamma_kj^i = 4 l_k r, Gamma_jk^i = -4 l_j r and
/// R(X_k, X_j, X_i, xi) = -2 r (duality plus first Bianchi), the Codazzi
/// equation for (k, j, i) minus -4 (1/2 + (l_j - l_i) l_k + (l_k - l_i) l_j) r
/// must vanish identically.  Returns that difference (zero when it holds).
inline MPoly codazzi_combination_residue() {
  const MPoly r = var("r"), li = var("li"), lj = var("lj"), lk = var("lk");
  const MPoly gamma_kji = 4 * lk * r;
  const MPoly gamma_jki = -4 * lj * r;
  const MPoly lhs = -2 * r;  // R(X_k, X_j, X_i, xi)
  const MPoly codazzi = lhs - (lj - li) * gamma_kji + (lk - li) * gamma_jki;
  const MPoly factor = MPoly(Rational(1, 2)) + (lj - li) * lk + (lk - li) * lj;
  return codazzi - (-4) * factor * r;
}

/// The tensor facts behind the combination, on actual vectors: for X_i in
/// L_{-1} and X_j, X_k in L_{-1/4} inside a symmetric totally geodesic h,
/// R(xi, X_j, X_k, X_i) + R(xi, X_k, X_j, X_i) = 0 and
/// R(X_k, X_j, X_i, xi) = -2 R(xi, X_j, X_k, X_i).
struct DualityDefect {
  double antisymmetry = 0.0;
  double bianchi_form = 0.0;
};

inline DualityDefect duality_defect(const CurvatureContext& ctx, const Vector& xi, const Operator& l_minus1,
                                    const Operator& l_quarter) {
  DualityDefect d;
  for (Eigen::Index a = 0; a < l_minus1.cols(); ++a)
    for (Eigen::Index b = 0; b < l_quarter.cols(); ++b)
      for (Eigen::Index c = 0; c < l_quarter.cols(); ++c) {
        const Vector xi_i = l_minus1.col(a), xj = l_quarter.col(b), xk = l_quarter.col(c);
        const double r = ctx.riemann4(xi, xj, xk, xi_i);
        d.antisymmetry = std::max(d.antisymmetry, std::abs(r + ctx.riemann4(xi, xk, xj, xi_i)));
        d.bianchi_form = std::max(d.bianchi_form, std::abs(ctx.riemann4(xk, xj, xi_i, xi) + 2.0 * r));
      }
  return d;
}

// ---------------------------------------------------------------------------
// Probe

struct ProbeOptions {
  std::size_t frames = 100;
  std::uint64_t seed = 1;
  double c_min = -2.0, c_max = 0.0, c_step = 0.01;
  unsigned workers = 0;
  CandidateOptions candidates;
};

struct FrameProbe {
  std::uint64_t seed = 0;
  double min_aggregate = std::numeric_limits<double>::infinity();
  double argmin_C = 0.0, argmin_H = 0.0;
  std::size_t candidates = 0;
  double max_gauss_defect = 0.0;  // candidate invariants against the assembled R_xi
};

struct ProbeReport {
  std::vector<FrameProbe> frames;
  double floor = std::numeric_limits<double>::infinity();  // min over frames
  std::size_t candidates = 0;
  std::size_t frames_without_candidates = 0;
  double max_gauss_defect = 0.0;
};

inline std::vector<double> c_grid(double lo, double hi, double step) {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  for (long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

inline FrameProbe probe_frame(const NormalFrame& f, const std::vector<double>& cs, const CandidateOptions& opt) {
  FrameProbe p;
  const auto geom = frame_geometry(f, xi_spectrum(f));
  for (double C : cs)
    for (const auto& c : shape_candidates(geom, C, opt)) {
      ++p.candidates;
      const CandidateCheck chk = check_candidate(c);
      // the block equation is quadratic in H, so compare on the scale of H^2
      const double scale = std::max(1.0, c.H * c.H);
      p.max_gauss_defect = std::max({p.max_gauss_defect, chk.gauss / scale, chk.block_equation / scale, chk.trace / scale});
      const double a = aggregate_residual(f, c);
      if (a < p.min_aggregate) {
        p.min_aggregate = a;
        p.argmin_C = C;
        p.argmin_H = c.H;
      }
    }
  return p;
}

/// Pointwise Gauss/Codazzi probe over random general frames.
inline ProbeReport probe_hypersurface(std::shared_ptr<const CurvatureContext> ctx, const ProbeOptions& opt) {
  const std::vector<double> cs = c_grid(opt.c_min, opt.c_max, opt.c_step);
  ProbeReport rep;
  rep.frames = parallel_map(
      opt.frames,
      [&](std::size_t i) {
        const std::uint64_t seed = opt.seed + i;
        Sampler rng(seed);
        FrameProbe p = probe_frame(random_frame(ctx, rng), cs, opt.candidates);
        p.seed = seed;
        return p;
      },
      opt.workers);
  for (const auto& p : rep.frames) {
    rep.candidates += p.candidates;
    if (p.candidates == 0) ++rep.frames_without_candidates;
    rep.floor = std::min(rep.floor, p.min_aggregate);
    rep.max_gauss_defect = std::max(rep.max_gauss_defect, p.max_gauss_defect);
  }
  return rep;
}

}  // namespace drspace
