// drverify: batch driver for the verification suites and the proof-replay ledger.
//
// Precedence: built-in defaults < --config file < command-line flags.
// Exit status: 0 all required checks pass, 1 a required check failed,
// 2 configuration or input error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drspace/driver.hpp"

namespace {

struct Flags {
  std::vector<std::string> dims;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool exact = false, sampled = false;
  std::string out, config;
  std::size_t samples = 0, frames = 0, probe_frames = 0;
  double c_step = 0.0;
  unsigned workers = 0;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--dims", f.dims, "module d_z,d_v[:iso flags]; repeat for several")->type_name("DZ,DV");
  app->add_option("--seed", f.seed, "random seed");
  app->add_option("--tol", f.tol, "override every numeric threshold");
  app->add_flag("--exact", f.exact, "exact symbolic ledger (default)");
  app->add_flag("--sampled", f.sampled, "general ledger at sampled rational parameters");
  app->add_option("--out", f.out, "JSON report path");
  app->add_option("--config", f.config, "JSON config file; flags override its values");
  app->add_option("--samples", f.samples, "random samples per property check");
  app->add_option("--frames", f.frames, "spectral frames per module");
  app->add_option("--probe-frames", f.probe_frames, "hypersurface probe frames");
  app->add_option("--c-step", f.c_step, "C grid step");
  app->add_option("--workers", f.workers, "worker threads (0 = all cores)");
}

drspace::RunConfig build_config(const Flags& f, CLI::App* app) {
  drspace::RunConfig cfg;
  if (!f.config.empty()) cfg.merge_json(drspace::RunConfig::read_file(f.config));
  auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--dims")) {
    cfg.modules.clear();
    for (const auto& d : f.dims) cfg.modules.push_back(drspace::parse_module_spec(d));
  }
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--tol")) cfg.tol = f.tol;
  if (given("--exact")) cfg.exact = true;
  if (given("--sampled")) cfg.exact = false;
  if (given("--out")) cfg.out = f.out;
  if (given("--samples")) cfg.samples = f.samples;
  if (given("--frames")) cfg.frames = f.frames;
  if (given("--probe-frames")) cfg.probe_frames = f.probe_frames;
  if (given("--c-step")) cfg.c_step = f.c_step;
  if (given("--workers")) cfg.workers = f.workers;
  return cfg;
}

void print_checks(const drspace::RunResult& r) {
  for (const auto& c : r.checks) {
    std::cout << (c.passed() ? "PASS " : (c.required ? "FAIL " : "info ")) << c.id << "  "
              << drspace::to_string(c.verdict);
    if (std::isfinite(c.residual)) std::cout << "  residual " << c.residual;
    if (!c.passed() && !c.witness.empty()) std::cout << "\n     " << c.witness.substr(0, 400);
    std::cout << '\n';
  }
  const auto& s = r.report.at("summary");
  std::cout << s.at("total").get<std::size_t>() << " checks, " << s.at("failed").get<std::size_t>() << " failed ("
            << s.at("failed_required").get<std::size_t>() << " required)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damek-Ricci hypersurface verification driver"};
  app.require_subcommand(1);

  Flags vf, rf, pf;
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "clifford | curvature | spectrum | hypersurface | obstruction | all");
  add_common(verify, vf);

  std::string step = "all";
  auto* replay = app.add_subcommand("replay", "replay one ledger step or all of them");
  replay->add_option("step", step, "no_v | no_a | no_z | dimensions | octonion | quat_eq | general | pk_case | all");
  add_common(replay, rf);

  auto* probe = app.add_subcommand("probe", "pointwise hypersurface probe");
  std::string what;
  probe->add_option("target", what, "hypersurface")->required();
  add_common(probe, pf);

  std::vector<std::string> files;
  bool csv = false;
  auto* summ = app.add_subcommand("summarize", "merge report files into one table");
  summ->add_option("reports", files, "report JSON files");
  summ->add_flag("--csv", csv, "emit CSV instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*summ) {
      const drspace::Summary s = drspace::summarize(files);
      for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << (csv ? drspace::summary_csv(s) : drspace::summary_text(s));
      return 0;
    }
    drspace::RunResult r;
    if (*verify) {
      drspace::RunConfig cfg = build_config(vf, verify);
      if (verify->count("suite") || cfg.suites.empty()) cfg.suites = {suite};
      r = drspace::run(cfg);
    } else if (*replay) {
      drspace::RunConfig cfg = build_config(rf, replay);
      cfg.replays = {step};
      r = drspace::run_replay(cfg);
    } else {
      if (what != "hypersurface") throw drspace::DomainError("probe: only 'hypersurface' is available");
      drspace::RunConfig cfg = build_config(pf, probe);
      cfg.suites = {"hypersurface"};
      r = drspace::run(cfg);
    }
    print_checks(r);
    return r.pass ? 0 : 1;
  } catch (const drspace::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
