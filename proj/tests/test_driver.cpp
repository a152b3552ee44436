#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "drspace/driver.hpp"

using namespace drspace;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("drspace_test_" + name)).string();
}

RunConfig small_config(std::uint64_t seed) {
  RunConfig cfg;
  cfg.modules = {{2, 4, {}}};
  cfg.suites = {"clifford", "curvature"};
  cfg.samples = 50;
  cfg.seed = seed;
  cfg.workers = 1;
  return cfg;
}

}  // namespace

TEST(ModuleSpec, Parsing) {
  const ModuleSpec m = parse_module_spec("3,8:1,-1");
  EXPECT_EQ(m.d_z, 3u);
  EXPECT_EQ(m.d_v, 8u);
  EXPECT_EQ(m.flags, (std::vector<int>{1, -1}));
  EXPECT_EQ(m.label(), "[3,8]");
  for (const char* bad : {"3", "a,4", "3,4x", "0,4", "-1,4", ""}) EXPECT_THROW(parse_module_spec(bad), DomainError) << bad;
}

TEST(RunConfig, ValidationRejectsBadInput) {
  RunConfig cfg;
  cfg.modules = {{9, 16, {}}};
  try {
    cfg.validate();
    FAIL() << "(9,16) accepted";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("Clifford bound"), std::string::npos);
  }
  cfg.modules = {{3, 6, {}}};
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg.modules = {{2, 4, {}}};
  EXPECT_NO_THROW(cfg.validate());
  cfg.suites = {"nonsense"};
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg.suites = {"all"};
  cfg.out = "/nonexistent_dir_for_drspace/report.json";
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg.out.clear();
  cfg.c_step = 0.0;
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(RunConfig, JsonMergeOnlyTouchesPresentFields) {
  RunConfig cfg;
  cfg.merge_json(Json::parse(R"({"modules": ["5,8", [7, 16]], "seed": 9, "c_grid": [-1.0, 0.0, 0.1]})"));
  ASSERT_EQ(cfg.modules.size(), 2u);
  EXPECT_EQ(cfg.modules[1].d_v, 16u);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.c_min, -1.0);
  EXPECT_EQ(cfg.samples, 1000u);
  EXPECT_THROW(cfg.merge_json(Json::parse(R"({"c_grid": [1, 2]})")), DomainError);
  EXPECT_THROW(cfg.merge_json(Json::array()), DomainError);

  RunConfig back;
  back.merge_json(cfg.to_json());
  EXPECT_EQ(back.to_json(), cfg.to_json());
}

TEST(Report, RoundTripAndSchema) {
  const RunResult r = run(small_config(3));
  EXPECT_TRUE(r.pass);
  const auto parsed = parse_report(Json::parse(r.report.dump()));
  ASSERT_EQ(parsed.size(), r.checks.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    EXPECT_EQ(parsed[i].id, r.checks[i].id);
    EXPECT_EQ(parsed[i].verdict, r.checks[i].verdict);
  }
  Json other = r.report;
  other["schema"] = "something.else";
  EXPECT_THROW(parse_report(other), DomainError);
  other = r.report;
  other["schema_version"] = kReportSchemaVersion + 1;
  EXPECT_THROW(parse_report(other), DomainError);
}

TEST(Report, ChecksAreSortedAndUnique) {
  const RunResult r = run(small_config(4));
  for (std::size_t i = 1; i < r.checks.size(); ++i) EXPECT_LT(r.checks[i - 1].id, r.checks[i].id);
}

TEST(Report, SameConfigAndSeedGiveIdenticalPayload) {
  const RunResult a = run(small_config(5)), b = run(small_config(5));
  EXPECT_EQ(report_payload(a.report).dump(), report_payload(b.report).dump());
  RunConfig threaded = small_config(5);
  threaded.workers = 4;
  EXPECT_EQ(report_payload(run(threaded).report).dump(), report_payload(a.report).dump());
}

TEST(Report, RequiredFailureFlipsSummary) {
  RunConfig cfg = small_config(6);
  cfg.tol = 1e-300;
  const RunResult r = run(cfg);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.report.at("summary").at("failed_required").get<std::size_t>(), 0u);
}

TEST(Summarize, SingleAndMultipleReports) {
  const std::string p1 = temp_path("s1.json"), p2 = temp_path("s2.json");
  RunConfig c1 = small_config(1), c2 = small_config(2);
  c1.out = p1;
  c2.out = p2;
  const RunResult r1 = run(c1);
  run(c2);

  const Summary one = summarize({p1});
  EXPECT_EQ(one.reports, 1u);
  EXPECT_EQ(one.rows.size(), r1.checks.size());
  for (const auto& row : one.rows) {
    EXPECT_EQ(row.runs, 1u);
    if (!std::isnan(row.min_residual)) EXPECT_EQ(row.min_residual, row.max_residual);
  }

  const Summary two = summarize({p1, p2});
  EXPECT_EQ(two.reports, 2u);
  for (const auto& row : two.rows) EXPECT_EQ(row.runs, 2u);
  const std::string csv = summary_csv(two);
  EXPECT_EQ(csv.rfind("id,runs,passes,verdicts,min_residual,max_residual\n", 0), 0u);
  EXPECT_FALSE(summary_text(two).empty());
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST(Summarize, MalformedAndEmptyInput) {
  EXPECT_THROW(summarize({}), DomainError);
  const std::string bad = temp_path("bad.json"), good = temp_path("good.json");
  std::ofstream(bad) << "{ not json";
  EXPECT_THROW(summarize({bad}), DomainError);
  RunConfig cfg = small_config(1);
  cfg.out = good;
  run(cfg);
  const Summary s = summarize({bad, good, temp_path("missing.json")});
  EXPECT_EQ(s.reports, 1u);
  EXPECT_EQ(s.warnings.size(), 2u);
  std::filesystem::remove(bad);
  std::filesystem::remove(good);
}
