// Acceptance harness: one PASS/FAIL line per criterion.  Run with
// --criterion N for a single criterion or without arguments for all twelve.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "drspace/drspace.hpp"

using namespace drspace;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const std::vector<ModuleSpec> kAllModules{{1, 2, {}}, {2, 4, {}}, {3, 4, {}}, {5, 8, {}},
                                          {6, 8, {}}, {7, 8, {}}, {7, 16, {}}, {8, 16, {}}};

std::vector<LedgerStep> run_suite(const std::string& suite, const std::vector<ModuleSpec>& modules,
                                  std::size_t samples = 1000) {
  RunConfig cfg;
  cfg.modules = modules;
  cfg.suites = {suite};
  cfg.samples = samples;
  return run(cfg).checks;
}

// Every step whose id contains `key` must pass; returns the worst residual.
Outcome require_steps(const std::vector<LedgerStep>& checks, const std::string& key, double runtime = 0.0,
                      double budget = 0.0) {
  Outcome o{true, {}};
  std::size_t n = 0;
  double worst = 0.0;
  for (const auto& s : checks) {
    if (s.id.find(key) == std::string::npos) continue;
    ++n;
    if (std::isfinite(s.residual)) worst = std::max(worst, s.residual);
    if (!s.passed()) {
      o.pass = false;
      o.detail += s.id + " failed (" + s.witness + "); ";
    }
  }
  if (n == 0) {
    o.pass = false;
    o.detail += "no steps matched '" + key + "'; ";
  }
  std::ostringstream os;
  os << n << " checks, worst residual " << worst;
  if (budget > 0.0) {
    os << ", " << runtime << " s (budget " << budget << " s)";
    if (runtime >= budget) o.pass = false;
  }
  o.detail += os.str();
  return o;
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome clifford_relations() {
  std::vector<ModuleSpec> mods;
  for (auto [dz, dv] : admissible_dimensions(16))
    if (dv == 2 || dv == 4 || dv == 8 || dv == 16) mods.push_back({dz, dv, {}});
  std::vector<LedgerStep> checks;
  const double t = timed([&] { checks = run_suite("clifford", mods, 100); });
  return require_steps(checks, "anticommutator", t, 5.0);
}

Outcome connection_axioms() {
  const auto checks = run_suite("curvature", kAllModules);
  Outcome m = require_steps(checks, ".metric"), t = require_steps(checks, ".torsion");
  return {m.pass && t.pass, "metric: " + m.detail + "; torsion: " + t.detail};
}

Outcome jacobi_crosscheck() {
  std::vector<LedgerStep> checks;
  const double t = timed([&] { checks = run_suite("curvature", kAllModules); });
  return require_steps(checks, ".jacobi", t, 60.0);
}

Outcome einstein() { return require_steps(run_suite("curvature", kAllModules), ".einstein"); }

Outcome nilpotent_witness() { return require_steps(run_suite("curvature", kAllModules, 10), ".nilpotent_sign_split"); }

Outcome spectral_certificates() {
  const std::vector<ModuleSpec> mods{{1, 2, {}}, {2, 4, {}}, {3, 4, {}}, {5, 8, {}}, {6, 8, {}}, {7, 16, {}}, {8, 16, {}}};
  const auto checks = run_suite("spectrum", mods);
  Outcome o{true, {}};
  for (const char* key : {".classification", ".certificates", ".homothety"}) {
    std::vector<LedgerStep> sel;
    for (const auto& s : checks)
      if (s.id.rfind("spectrum[", 0) == 0 && s.id.find(key) != std::string::npos) sel.push_back(s);
    const Outcome part = require_steps(sel, key);
    o.pass = o.pass && part.pass;
    o.detail += std::string(key + 1) + ": " + part.detail + "; ";
  }
  return o;
}

Outcome cubic_consistency() {
  const auto checks = run_suite("spectrum", {{2, 4, {}}}, 10);
  Outcome o{true, {}};
  for (const char* id : {"spectrum.cubic_map", "spectrum.cubic_roots", "spectrum.f_interlacing"}) {
    const Outcome part = require_steps(checks, id);
    o.pass = o.pass && part.pass;
    o.detail += std::string(id) + ": " + part.detail + "; ";
  }
  return o;
}

Outcome dimension_cases() {
  std::vector<DimensionCase> cases;
  const double t = timed([&] { cases = enumerate_dimension_cases(64); });
  std::set<std::pair<unsigned, unsigned>> got;
  for (const auto& c : cases) got.emplace(c.d_z, c.d_v);
  const std::set<std::pair<unsigned, unsigned>> want{{5, 8}, {6, 8}, {7, 8}, {7, 16}, {8, 16}};
  std::ostringstream os;
  os << got.size() << " pairs found, " << t << " s (budget 1 s)";
  return {got == want && cases.size() == want.size() && t < 1.0, os.str()};
}

Outcome octonion_case() {
  const LedgerReport r = replay_octonion_case(20, 1);
  const LedgerStep& d = r.at("octonion.d_minus1");
  Outcome o = require_steps(r.steps, "octonion.");
  o.detail = d.witness + "; " + o.detail;
  return o;
}

Outcome exact_ledger() {
  LedgerReport r;
  const double t = timed([&] { r = general_case_ledger(); });
  Outcome o{t < 120.0, {}};
  // (i) the eta^2 coefficient, (ii) vanishing on the lambda_1 locus, (iii) positivity of F
  for (const char* id : {"general.step1_A2", "general.step3_locus", "general.step5_closed_positive",
                         "general.step5_grid"}) {
    const LedgerStep& s = r.at(id);
    o.pass = o.pass && s.passed();
    o.detail += std::string(id) + " " + to_string(s.verdict) + " (" + s.witness + "); ";
  }
  std::ostringstream os;
  os << t << " s (budget 120 s)";
  o.detail += os.str();
  return o;
}

Outcome no_z_replay() {
  Outcome o{true, {}};
  std::size_t modules = 0, solutions = 0, admissible = 0;
  for (auto [dz, dv] : admissible_dimensions(16)) {
    const TraceScan t = trace_identity_scan(dz, dv);
    ++modules;
    solutions += t.trace_solutions;
    admissible += t.admissible;
    if (t.admissible != 0 || !t.third_bound_holds || !t.half_dim_bound_holds) {
      o.pass = false;
      o.detail += "(" + std::to_string(dz) + "," + std::to_string(dv) + ") admits a solution; ";
    }
  }
  o.detail += std::to_string(modules) + " modules, " + std::to_string(solutions) +
              " trace solutions, all violating the isotropy cap; " + std::to_string(admissible) + " admissible";
  return o;
}

Outcome hypersurface_probe() {
  RunConfig cfg;
  cfg.modules = {{2, 4, {}}};
  cfg.suites = {"hypersurface"};
  cfg.probe_frames = 100;
  std::vector<LedgerStep> checks;
  const double t = timed([&] { checks = run(cfg).checks; });
  const LedgerStep* floor = nullptr;
  for (const auto& s : checks)
    if (s.id.find(".floor") != std::string::npos) floor = &s;
  Outcome o = require_steps(checks, "hypersurface[2,4].", t, 600.0);
  if (floor) {
    std::ostringstream os;
    os << "floor " << floor->residual << " (" << floor->witness << "); ";
    o.detail = os.str() + o.detail;
  }
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> c{
      {"Clifford relations", clifford_relations},
      {"connection axioms", connection_axioms},
      {"Jacobi cross-check", jacobi_crosscheck},
      {"Einstein property", einstein},
      {"nilpotent non-Einstein witness", nilpotent_witness},
      {"spectral certificates", spectral_certificates},
      {"cubic consistency", cubic_consistency},
      {"dimension-case enumeration", dimension_cases},
      {"octonion case", octonion_case},
      {"exact ledger", exact_ledger},
      {"no-z replay", no_z_replay},
      {"hypersurface probe", hypersurface_probe},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> which;
  app.add_option("--criterion", which, "criterion number, 1-12 (repeatable)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);
  if (which.empty())
    for (int i = 1; i <= 12; ++i) which.push_back(i);

  bool all = true;
  for (int n : which) {
    const auto& [name, fn] = criteria()[static_cast<std::size_t>(n - 1)];
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("criterion %2d %-32s %s  %s\n", n, name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
