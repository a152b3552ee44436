#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "drspace/clifford.hpp"
#include "drspace/curvature.hpp"
#include "drspace/dralgebra.hpp"
#include "drspace/hypersurface.hpp"
#include "drspace/obstruction.hpp"
#include "drspace/parallel.hpp"
#include "drspace/report.hpp"
#include "drspace/spectrum.hpp"

namespace drspace {

struct ModuleSpec {
  unsigned d_z = 0, d_v = 0;
  std::vector<int> flags;  // iso-class flag per irreducible summand, empty = all +1

  std::string label() const { return "[" + std::to_string(d_z) + "," + std::to_string(d_v) + "]"; }
  CliffordModule build() const { return build_module(d_z, d_v, flags); }
};

/// "dz,dv" or "dz,dv:f1,f2,..".
inline ModuleSpec parse_module_spec(const std::string& text) {
  ModuleSpec m;
  const auto colon = text.find(':');
  const std::string dims = text.substr(0, colon);
  const auto comma = dims.find(',');
  if (comma == std::string::npos) throw DomainError("module '" + text + "': expected d_z,d_v");
  try {
    std::size_t used = 0;
    const long dz = std::stol(dims.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("");
    const std::string rest = dims.substr(comma + 1);
    const long dv = std::stol(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
    if (dz <= 0 || dv <= 0) throw DomainError("module '" + text + "': dimensions must be positive");
    m.d_z = static_cast<unsigned>(dz);
    m.d_v = static_cast<unsigned>(dv);
    if (colon != std::string::npos) {
      std::stringstream ss(text.substr(colon + 1));
      for (std::string f; std::getline(ss, f, ',');) m.flags.push_back(std::stoi(f));
    }
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("module '" + text + "': expected integers d_z,d_v");
  }
  return m;
}

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s{"clifford", "curvature", "spectrum", "hypersurface", "obstruction"};
  return s;
}

inline const std::vector<std::string>& known_replays() {
  static const std::vector<std::string> s{"no_v", "no_a", "no_z", "dimensions", "octonion", "quat_eq", "general", "pk_case"};
  return s;
}

/// Everything a run depends on.  Flags override values read from a config
/// file, which override these defaults.
struct RunConfig {
  std::vector<ModuleSpec> modules{{2, 4, {}}};
  std::vector<std::string> suites{"all"};
  std::vector<std::string> replays;  // used by the replay subcommand; empty = suites decide
  std::uint64_t seed = 1;
  std::optional<double> tol;  // overrides every numeric threshold when set
  bool exact = true;
  std::string out;
  std::size_t samples = 1000;       // random triples / pairs / unit vectors
  std::size_t frames = 20;          // spectral frames per module
  std::size_t probe_frames = 100;   // hypersurface probe frames
  double c_min = -2.0, c_max = 0.0, c_step = 0.01;
  unsigned grid = 50;               // v, y simplex grid
  unsigned workers = 0;             // 0 = hardware concurrency

  double threshold(double fallback) const { return tol.value_or(fallback); }

  bool wants(const std::string& suite) const {
    return std::find(suites.begin(), suites.end(), "all") != suites.end() ||
           std::find(suites.begin(), suites.end(), suite) != suites.end();
  }

  /// Rejects inadmissible modules, unknown suites and unwritable output
  /// before any computation.
  void validate() const {
    if (modules.empty()) throw DomainError("config: no modules given");
    for (const auto& m : modules) {
      if (m.d_z == 0 || m.d_v == 0) throw DomainError("config: module " + m.label() + " has a zero dimension");
      const unsigned bound = max_center_dim(m.d_v);
      if (m.d_z > bound)
        throw DomainError("config: module " + m.label() + " violates the Clifford bound d_z <= 8a + 2^b - 1 = " +
                          std::to_string(bound) + " for d_v = " + std::to_string(m.d_v) +
                          " (d_v = 2^(4a+b) c, c odd)");
      if (m.d_v % irreducible_module_dim(std::min(m.d_z, 8u)) != 0 && m.d_z <= 8)
        throw DomainError("config: module " + m.label() + " is not a sum of irreducible modules");
      if (m.d_z > 8) throw DomainError("config: module " + m.label() + " has d_z > 8, generators not implemented");
      m.build();  // validates iso flags
    }
    for (const auto& s : suites)
      if (s != "all" && std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
        throw DomainError("config: unknown suite '" + s + "'");
    for (const auto& r : replays)
      if (r != "all" && std::find(known_replays().begin(), known_replays().end(), r) == known_replays().end())
        throw DomainError("config: unknown replay step '" + r + "'");
    if (!(c_step > 0.0) || !(c_min <= c_max)) throw DomainError("config: C grid needs c_min <= c_max and c_step > 0");
    if (grid < 2) throw DomainError("config: grid must be at least 2");
    if (tol && !(*tol > 0.0)) throw DomainError("config: tol must be positive");
    if (!out.empty()) {
      const std::filesystem::path p(out);
      const auto dir = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
      if (!std::filesystem::is_directory(dir)) throw DomainError("config: output directory " + dir.string() + " does not exist");
      std::ofstream probe(out, std::ios::app);
      if (!probe) throw DomainError("config: cannot write " + out);
    }
  }

  Json to_json() const {
    Json j;
    Json mods = Json::array();
    for (const auto& m : modules) mods.push_back({{"d_z", m.d_z}, {"d_v", m.d_v}, {"flags", m.flags}});
    j["modules"] = mods;
    j["suites"] = suites;
    j["replays"] = replays;
    j["seed"] = seed;
    if (tol) j["tol"] = *tol;
    else j["tol"] = nullptr;
    j["exact"] = exact;
    j["samples"] = samples;
    j["frames"] = frames;
    j["probe_frames"] = probe_frames;
    j["c_grid"] = {c_min, c_max, c_step};
    j["grid"] = grid;
    return j;
  }

  /// Fields present in `j` replace the current values.
  void merge_json(const Json& j) {
    if (!j.is_object()) throw DomainError("config file: top level must be an object");
    if (j.contains("modules")) {
      modules.clear();
      for (const auto& m : j.at("modules")) {
        if (m.is_string()) modules.push_back(parse_module_spec(m.get<std::string>()));
        else if (m.is_array() && m.size() == 2)
          modules.push_back({m.at(0).get<unsigned>(), m.at(1).get<unsigned>(), {}});
        else
          modules.push_back({m.at("d_z").get<unsigned>(), m.at("d_v").get<unsigned>(),
                             m.value("flags", std::vector<int>{})});
      }
    }
    if (j.contains("suites")) suites = j.at("suites").get<std::vector<std::string>>();
    if (j.contains("replays")) replays = j.at("replays").get<std::vector<std::string>>();
    if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tol") && !j.at("tol").is_null()) tol = j.at("tol").get<double>();
    if (j.contains("exact")) exact = j.at("exact").get<bool>();
    if (j.contains("out")) out = j.at("out").get<std::string>();
    if (j.contains("samples")) samples = j.at("samples").get<std::size_t>();
    if (j.contains("frames")) frames = j.at("frames").get<std::size_t>();
    if (j.contains("probe_frames")) probe_frames = j.at("probe_frames").get<std::size_t>();
    if (j.contains("c_grid")) {
      const auto c = j.at("c_grid").get<std::vector<double>>();
      if (c.size() != 3) throw DomainError("config file: c_grid is [min, max, step]");
      c_min = c[0];
      c_max = c[1];
      c_step = c[2];
    }
    if (j.contains("grid")) grid = j.at("grid").get<unsigned>();
    if (j.contains("workers")) workers = j.at("workers").get<unsigned>();
  }

  static Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read config file " + path);
    try {
      return Json::parse(in);
    } catch (const std::exception& e) {
      throw DomainError("config file " + path + ": " + e.what());
    }
  }
};

// ---------------------------------------------------------------------------
// Suites.  Each task yields steps with ids prefixed by suite and module.

using Task = std::function<std::vector<LedgerStep>()>;

namespace detail {

inline std::vector<LedgerStep> prefixed(const LedgerReport& r, const std::string& prefix) {
  std::vector<LedgerStep> out = r.steps;
  for (auto& s : out) s.id = prefix + s.id;
  return out;
}

inline LedgerStep threshold_step(std::string id, std::string anchor, double residual, double tol,
                                 std::optional<std::uint64_t> seed = std::nullopt, std::string witness = {}) {
  return numeric_step(std::move(id), std::move(anchor), residual, residual <= tol,
                      witness.empty() ? fmt("tol ", tol) : witness + fmt("; tol ", tol), seed);
}

}  // namespace detail

inline std::vector<LedgerStep> clifford_suite(const ModuleSpec& spec, const RunConfig& cfg) {
  const CliffordModule m = spec.build();
  const DamekRicci g(m);
  const std::string p = "clifford" + spec.label() + ".";
  std::vector<LedgerStep> out;
  out.push_back(detail::threshold_step(p + "anticommutator", "J_i J_j + J_j J_i = -2 delta_ij id",
                                       anticommutator_residual(m), cfg.threshold(1e-12)));
  double skew = 0.0;
  for (const auto& j : m.generators) skew = std::max(skew, skew_defect(j));
  out.push_back(detail::threshold_step(p + "skew", "generators are skew", skew, cfg.threshold(1e-12)));
  const HeisenbergReport h = verify_heisenberg_identities(g, cfg.samples, cfg.seed);
  out.push_back(detail::threshold_step(p + "heisenberg", "[V, J_Y V] = |V|^2 Y and its polarization",
                                       std::max(h.residual_norm_identity, h.residual_polarized),
                                       cfg.threshold(1e-11), cfg.seed));
  return out;
}

inline std::vector<LedgerStep> curvature_suite(std::shared_ptr<const CurvatureContext> ctx, const ModuleSpec& spec,
                                               const RunConfig& cfg) {
  const std::string p = "curvature" + spec.label() + ".";
  std::vector<LedgerStep> out;
  const ConnectionAxioms ax = check_connection_axioms(*ctx, cfg.samples, cfg.seed);
  out.push_back(detail::threshold_step(p + "metric", "the connection is metric", ax.metric, cfg.threshold(1e-12), cfg.seed));
  out.push_back(detail::threshold_step(p + "torsion", "the connection is torsion free", ax.torsion, cfg.threshold(1e-12), cfg.seed));
  const TensorSymmetries ts = check_tensor_symmetries(*ctx, cfg.samples, cfg.seed + 1, false);
  out.push_back(detail::threshold_step(p + "jacobi", "assembled R(Y, X) X equals the closed Jacobi form",
                                       ts.jacobi_crosscheck, cfg.threshold(1e-10), cfg.seed + 1));
  out.push_back(detail::threshold_step(p + "symmetries", "antisymmetry, first Bianchi and pair symmetry",
                                       std::max({ts.antisymmetry, ts.first_bianchi, ts.pair_symmetry}),
                                       cfg.threshold(1e-10), cfg.seed + 1));
  const TensorSymmetries tb = check_tensor_symmetries(*ctx, std::max<std::size_t>(cfg.samples / 10, 1), cfg.seed + 3, true);
  out.push_back(detail::threshold_step(p + "second_bianchi", "second Bianchi identity", tb.second_bianchi,
                                       cfg.threshold(1e-10), cfg.seed + 3));
  const RicciIsotropy ri = ricci_isotropy(*ctx, cfg.samples, cfg.seed + 2);
  out.push_back(detail::threshold_step(p + "einstein", "Ric(T, T)/|T|^2 is constant", ri.stdev, cfg.threshold(1e-10),
                                       cfg.seed + 2, detail::fmt("mean ", ri.mean)));
  const NilpotentRicci nr = ricci_heisenberg(spec.build());
  out.push_back(detail::numeric_step(p + "nilpotent_sign_split",
                                     "the nilpotent part has Ricci negative on v and positive on z", nr.cross_block,
                                     nr.sign_split, "not Einstein"));
  return out;
}

inline std::vector<LedgerStep> spectrum_suite(std::shared_ptr<const CurvatureContext> ctx, const ModuleSpec& spec,
                                              const RunConfig& cfg) {
  const std::string p = "spectrum" + spec.label() + ".";
  Sampler rng(cfg.seed);
  double gap = 0.0, cert = 0.0, homothety = 0.0, range = 0.0;
  bool mult = true;
  for (std::size_t k = 0; k < cfg.frames; ++k) {
    const NormalFrame f = random_frame(ctx, rng);
    const SpectralReport r = xi_spectrum(f);
    gap = std::max(gap, r.classification_gap);
    cert = std::max(cert, r.max_certificate_residual());
    homothety = std::max(homothety, r.max_homothety_spread());
    range = std::max(range, r.range_violation);
    mult = mult && r.multiplicity_match;
  }
  std::vector<LedgerStep> out;
  out.push_back(detail::numeric_step(p + "classification", "eigenvalues of R_xi lie in {-1, -1/4} and the cubic roots",
                                     gap, gap <= cfg.threshold(1e-9) && mult && range <= cfg.threshold(1e-9),
                                     detail::fmt(cfg.frames, " frames, multiplicities ", mult ? "match" : "differ"), cfg.seed));
  out.push_back(detail::threshold_step(p + "certificates", "L_-1, L_-1/4 and psi vectors are eigenvectors", cert,
                                       cfg.threshold(1e-9), cfg.seed));
  out.push_back(detail::threshold_step(p + "homothety", "psi_l is a homothety on z_mu", homothety, cfg.threshold(1e-9), cfg.seed));
  return out;
}

/// eta = 4 alpha + 1 carries p(t) = t^2 (t + 3) - q to (alpha + 1)(alpha + 1/4)^2 - q/64,
/// and the roots of f interlace -1, -3/4, -1/4, 0.
inline std::vector<LedgerStep> cubic_suite(const RunConfig& cfg) {
  std::vector<LedgerStep> out;
  const MPoly a = var("alpha"), q = var("q"), eta = 4 * a + 1;
  const MPoly ident = eta * eta * (eta + 3) - q - 64 * ((a + 1) * (a + Rational(1, 4)).pow(2) - q * Rational(1, 64));
  out.push_back(detail::exact_step("spectrum.cubic_map", "p(4 alpha + 1) = 64 ((alpha+1)(alpha+1/4)^2 - q/64)", ident));
  double worst = 0.0;
  bool interlace = true;
  for (unsigned k = 1; k < cfg.grid; ++k) {
    const double v = 0.9 * k / cfg.grid, y = 0.95 * (1.0 - v) / 2.0;
    const AlphaCubic c = alpha_cubic(-0.5, v, y);
    const double qd = c.q.get_d();
    for (double al : c.alpha) worst = std::max(worst, std::abs((al + 1.0) * (al + 0.25) * (al + 0.25) - qd / 64.0));
  }
  for (unsigned k = 1; k < cfg.grid; ++k) {
    const FCubic f = f_cubic_roots(make_rational(k, 4 * cfg.grid));
    interlace = interlace && f.interlacing;
  }
  out.push_back(detail::threshold_step("spectrum.cubic_roots", "alpha roots solve (alpha+1)(alpha+1/4)^2 = q/64", worst,
                                       cfg.threshold(1e-12)));
  out.push_back(detail::exact_bool("spectrum.f_interlacing",
                                   "-1 < a1 < -3/4 < a2 < -1/4 < a3 <= 0 with f(0) > 0 > f(-q) on q in (0, 1/4)",
                                   interlace, detail::fmt(cfg.grid - 1, " grid values of q")));
  return out;
}

inline std::vector<LedgerStep> hypersurface_suite(std::shared_ptr<const CurvatureContext> ctx, const ModuleSpec& spec,
                                                  const RunConfig& cfg) {
  const std::string p = "hypersurface" + spec.label() + ".";
  ProbeOptions opt;
  opt.frames = cfg.probe_frames;
  opt.seed = cfg.seed;
  opt.c_min = cfg.c_min;
  opt.c_max = cfg.c_max;
  opt.c_step = cfg.c_step;
  opt.workers = cfg.workers;
  const ProbeReport r = probe_hypersurface(ctx, opt);
  std::vector<LedgerStep> out;
  out.push_back(detail::numeric_step(
      p + "floor", "minimum aggregate Codazzi / derived Gauss residual over frames, C grid and splits stays above 1e-6",
      r.floor, r.floor > 1e-6,
      detail::fmt(r.frames.size(), " frames, ", r.candidates, " candidates, ", r.frames_without_candidates,
                  " frames without candidates"),
      cfg.seed));
  out.push_back(detail::threshold_step(p + "candidate_gauss", "candidates satisfy R_xi = -S^2 + HS + C blockwise",
                                       r.max_gauss_defect, cfg.threshold(1e-9), cfg.seed));
  return out;
}

/// Ledger tasks for the replay subcommand and the obstruction suite.
inline std::vector<Task> obstruction_tasks(const RunConfig& cfg,
                                           const std::map<std::string, std::shared_ptr<const CurvatureContext>>& ctxs) {
  std::vector<std::string> steps = cfg.replays;
  if (steps.empty() || std::find(steps.begin(), steps.end(), "all") != steps.end()) steps = known_replays();
  auto has = [&](const char* s) { return std::find(steps.begin(), steps.end(), s) != steps.end(); };
  std::vector<Task> tasks;
  for (const auto& m : cfg.modules) {
    const auto ctx = ctxs.at(m.label());
    const std::string p = "obstruction" + m.label() + ".";
    if (has("no_v")) tasks.push_back([=] { return detail::prefixed(replay_no_v(m.build()), p); });
    if (has("no_a")) tasks.push_back([=] { return detail::prefixed(replay_no_a(ctx, 20, cfg.seed), p); });
    if (has("no_z"))
      tasks.push_back([=] {
        NoZOptions o;
        o.seed = cfg.seed;
        return detail::prefixed(replay_no_z(ctx, o), p);
      });
    if (has("pk_case"))
      tasks.push_back([=] {
        PKCaseOptions o;
        o.seed = cfg.seed;
        // z_-1 = 0 for every frame on some modules; nothing to replay there
        Sampler rng(cfg.seed);
        bool exists = false;
        for (int k = 0; k < 8 && !exists; ++k) exists = random_frame(ctx, rng).z_minus1().cols() > 0;
        if (!exists) return std::vector<LedgerStep>{};
        return detail::prefixed(replay_pk_case(ctx, o), p);
      });
  }
  const std::string g = "obstruction.";
  if (has("dimensions")) tasks.push_back([=] { return detail::prefixed(replay_dimension_cases(64), g); });
  if (has("octonion")) tasks.push_back([=] { return detail::prefixed(replay_octonion_case(20, cfg.seed), g); });
  if (has("quat_eq"))
    tasks.push_back([=] {
      QuatEquationOptions o;
      o.seed = cfg.seed;
      return detail::prefixed(replay_quat_eq(o), g);
    });
  if (has("general"))
    tasks.push_back([=] {
      GeneralLedgerOptions o;
      o.exact = cfg.exact;
      o.grid = cfg.grid;
      o.seed = cfg.seed;
      return detail::prefixed(general_case_ledger(o), g);
    });
  return tasks;
}

struct RunResult {
  std::vector<LedgerStep> checks;  // sorted by id
  Json report;
  bool pass = false;
};

inline std::vector<LedgerStep> run_tasks(const std::vector<Task>& tasks, unsigned workers) {
  const auto groups = parallel_map(
      tasks.size(),
      [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        auto steps = tasks[i]();
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (auto& s : steps) s.runtime = dt;
        return steps;
      },
      workers);
  std::vector<LedgerStep> all;
  for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
  return sorted_checks(all);
}

inline std::map<std::string, std::shared_ptr<const CurvatureContext>> contexts(const RunConfig& cfg) {
  std::map<std::string, std::shared_ptr<const CurvatureContext>> out;
  for (const auto& m : cfg.modules)
    if (!out.count(m.label())) out[m.label()] = std::make_shared<const CurvatureContext>(DamekRicci(m.build()));
  return out;
}

/// Validates, runs the selected suites, writes the report if `out` is set.
inline RunResult run(const RunConfig& cfg) {
  cfg.validate();
  const auto ctxs = contexts(cfg);
  std::vector<Task> tasks;
  for (const auto& m : cfg.modules) {
    const auto ctx = ctxs.at(m.label());
    if (cfg.wants("clifford")) tasks.push_back([=] { return clifford_suite(m, cfg); });
    if (cfg.wants("curvature")) tasks.push_back([=] { return curvature_suite(ctx, m, cfg); });
    if (cfg.wants("spectrum")) tasks.push_back([=] { return spectrum_suite(ctx, m, cfg); });
    if (cfg.wants("hypersurface")) tasks.push_back([=] { return hypersurface_suite(ctx, m, cfg); });
  }
  if (cfg.wants("spectrum")) tasks.push_back([=] { return cubic_suite(cfg); });
  if (cfg.wants("obstruction")) {
    auto ob = obstruction_tasks(cfg, ctxs);
    tasks.insert(tasks.end(), ob.begin(), ob.end());
  }
  RunResult r;
  // each task is internally sequential; the probe parallelizes on its own
  r.checks = run_tasks(tasks, cfg.workers);
  r.report = make_report(r.checks, cfg.to_json());
  r.pass = r.report.at("summary").at("pass").get<bool>();
  if (!cfg.out.empty()) write_json(r.report, cfg.out);
  return r;
}

/// Only the obstruction ledger, restricted to cfg.replays.
inline RunResult run_replay(const RunConfig& cfg) {
  cfg.validate();
  const auto ctxs = contexts(cfg);
  RunResult r;
  r.checks = run_tasks(obstruction_tasks(cfg, ctxs), cfg.workers);
  r.report = make_report(r.checks, cfg.to_json());
  r.pass = r.report.at("summary").at("pass").get<bool>();
  if (!cfg.out.empty()) write_json(r.report, cfg.out);
  return r;
}

// ---------------------------------------------------------------------------
// Summaries across report files

struct SummaryRow {
  std::string id;
  std::size_t runs = 0, passes = 0;
  double min_residual = std::numeric_limits<double>::quiet_NaN();
  double max_residual = std::numeric_limits<double>::quiet_NaN();
  std::set<std::string> verdicts;
};

struct Summary {
  std::vector<SummaryRow> rows;  // sorted by id
  std::vector<std::string> warnings;
  std::size_t reports = 0;
};

/// Malformed files are skipped with a warning; no readable report is an error.
inline Summary summarize(const std::vector<std::string>& paths) {
  if (paths.empty()) throw DomainError("summarize: no report files given");
  Summary s;
  std::map<std::string, SummaryRow> rows;
  for (const auto& path : paths) {
    std::vector<LedgerStep> checks;
    try {
      checks = parse_report(RunConfig::read_file(path));
    } catch (const std::exception& e) {
      s.warnings.push_back("skipping " + path + ": " + e.what());
      continue;
    }
    ++s.reports;
    for (const auto& c : checks) {
      SummaryRow& r = rows[c.id];
      r.id = c.id;
      ++r.runs;
      if (c.passed()) ++r.passes;
      r.verdicts.insert(to_string(c.verdict));
      if (std::isfinite(c.residual)) {
        r.min_residual = std::isnan(r.min_residual) ? c.residual : std::min(r.min_residual, c.residual);
        r.max_residual = std::isnan(r.max_residual) ? c.residual : std::max(r.max_residual, c.residual);
      }
    }
  }
  if (s.reports == 0) throw DomainError("summarize: none of the given files is a readable report");
  for (auto& [id, r] : rows) s.rows.push_back(std::move(r));
  return s;
}

inline std::string format_residual(double r) {
  if (std::isnan(r)) return "-";
  std::ostringstream os;
  os << std::setprecision(6) << r;
  return os.str();
}

inline std::string summary_csv(const Summary& s) {
  std::ostringstream os;
  os << "id,runs,passes,verdicts,min_residual,max_residual\n";
  for (const auto& r : s.rows) {
    std::string v;
    for (const auto& x : r.verdicts) v += (v.empty() ? "" : "|") + x;
    os << r.id << ',' << r.runs << ',' << r.passes << ',' << v << ',' << format_residual(r.min_residual) << ','
       << format_residual(r.max_residual) << '\n';
  }
  return os.str();
}

inline std::string summary_text(const Summary& s) {
  std::size_t w = 2;
  for (const auto& r : s.rows) w = std::max(w, r.id.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(w)) << "id" << "  runs  pass  " << std::setw(14) << "min residual"
     << "max residual\n";
  for (const auto& r : s.rows)
    os << std::left << std::setw(static_cast<int>(w)) << r.id << "  " << std::setw(4) << r.runs << "  "
       << std::setw(4) << r.passes << "  " << std::setw(14) << format_residual(r.min_residual)
       << format_residual(r.max_residual) << '\n';
  return os.str();
}

}  // namespace drspace
