#include <gtest/gtest.h>

#include <memory>

#include "drspace/obstruction.hpp"

using namespace drspace;

namespace {

std::shared_ptr<const CurvatureContext> context(unsigned dz, unsigned dv) {
  return std::make_shared<const CurvatureContext>(DamekRicci(dz, dv));
}

void expect_all_pass(const LedgerReport& r) {
  for (const auto& s : r.steps) EXPECT_TRUE(s.passed()) << r.name << " " << s.id << ": " << s.witness;
}

}  // namespace

TEST(Parameters, Validation) {
  ObstructionParameters p;
  p.v = 0.5;
  p.y = 0.25;
  p.s2 = 0.25;
  p.mu = 0.0;
  p.q = 27.0 * 0.25 * 0.25;
  EXPECT_NO_THROW(p.validate());
  p.mu = 0.5;
  EXPECT_THROW(p.validate(), DomainError);
  p.mu = 0.0;
  p.s2 = 0.3;
  EXPECT_THROW(p.validate(), DomainError);
}

TEST(Parameters, FromFrame) {
  const auto c = context(5, 8);
  Sampler rng(1);
  const NormalFrame f = random_frame(c, rng);
  const ObstructionParameters p = ObstructionParameters::from_frame(f, -0.5);
  EXPECT_NO_THROW(p.validate(1e-10));
  EXPECT_EQ(static_cast<long>(p.d_v), static_cast<long>(p.d_p) + 2 * p.d_z - p.d_minus1);
}

TEST(Ledger, NoV) {
  expect_all_pass(replay_no_v(build_module(1, 2)));
  expect_all_pass(replay_no_v(build_module(7, 8)));
}

TEST(Ledger, NoAClashIsExactlyAQuarter) {
  const LedgerReport r = replay_no_a(context(2, 4), 10, 3);
  expect_all_pass(r);
  EXPECT_LE(r.at("no_a.clash").residual, 1e-12);
  EXPECT_EQ(r.at("no_a.c_exact").verdict, Verdict::ExactPass);
}

TEST(Ledger, NoZ) {
  for (auto [dz, dv] : {std::pair{2u, 4u}, {5u, 8u}, {7u, 16u}}) {
    const LedgerReport r = replay_no_z(context(dz, dv));
    expect_all_pass(r);
  }
  // the P, P' Codazzi test needs dim p >= 2
  EXPECT_NE(replay_no_z(context(7, 16)).find("no_z.codazzi_reduction"), nullptr);
}

TEST(Ledger, NoZCodazziProportionality) {
  // independent of the grid: at s^2 = 1/3 the Codazzi value vanishes
  const auto c = context(7, 16);
  Sampler rng(2);
  const NoZFrame r = no_z_frame(c, 1.0 / std::sqrt(3.0), rng.unit(16));
  const NoZCodazzi k = no_z_codazzi(r);
  EXPECT_GT(k.max_jzp, 1e-3);
  EXPECT_LE(k.codazzi, 1e-12);
}

TEST(Ledger, TraceScanByHand) {
  // (2,4): d_2 ranges over 0..7, and s^2 = (d_2 + 1)/(3 d_2 - 7) lies in (0,1) only for d_2 >= 5
  const TraceScan t = trace_identity_scan(2, 4, 100);
  EXPECT_EQ(t.admissible, 0u);
  EXPECT_EQ(t.trace_solutions, 3u);  // d_2 = 5, 6, 7 give s^2 = 3/4, 7/11, 4/7
  EXPECT_TRUE(t.third_bound_holds);
  EXPECT_TRUE(t.half_dim_bound_holds);
}

TEST(Dimensions, ExactlyFivePairs) {
  const auto cases = enumerate_dimension_cases(64);
  std::vector<std::pair<unsigned, unsigned>> got;
  for (const auto& c : cases) got.emplace_back(c.d_z, c.d_v);
  const std::vector<std::pair<unsigned, unsigned>> expect{{5, 8}, {6, 8}, {7, 8}, {7, 16}, {8, 16}};
  EXPECT_EQ(got, expect);
  for (const auto& c : cases) EXPECT_EQ(c.d_p, static_cast<int>(c.d_v) / 2 - 4);
  EXPECT_TRUE(cases[2].symmetric);
}

TEST(Dimensions, IndependentOfUpperBound) {
  const auto a = enumerate_dimension_cases(16), b = enumerate_dimension_cases(40), c = enumerate_dimension_cases(64);
  EXPECT_EQ(a.size(), b.size());
  EXPECT_EQ(b.size(), c.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(a[i] == c[i]);
}

TEST(Octonion, MinusOneSpaceIsSix) {
  const LedgerReport r = replay_octonion_case(20, 7);
  expect_all_pass(r);
  EXPECT_NE(r.at("octonion.d_minus1").witness.find("21 samples"), std::string::npos);
}

TEST(Octonion, DegenerateVRejected) {
  Sampler rng(1);
  Vector v = admissible_octonion_v(rng);
  EXPECT_NO_THROW(require_admissible_octonion_v(v));
  Vector bad = v;
  bad.tail(8) *= 2.0;
  EXPECT_THROW(require_admissible_octonion_v(bad), DomainError);
  bad = v;
  bad.tail(8) = bad.head(8);
  EXPECT_THROW(require_admissible_octonion_v(bad), DomainError);
  EXPECT_THROW(require_admissible_octonion_v(Vector::Zero(16)), DomainError);
}

TEST(QuatEquation, SymbolicCases) {
  const LedgerReport r = replay_quat_eq({}, false);
  expect_all_pass(r);
  for (const char* id : {"quat_eq.a_scalar", "quat_eq.b_commuting", "quat_eq.c_commutator", "quat_eq.d_factor",
                         "quat_eq.chain_square", "quat_eq.chain_difference"})
    EXPECT_EQ(r.at(id).verdict, Verdict::ExactPass) << id;
}

TEST(QuatEquation, NCTransposeReversesAndSigns) {
  using detail::NCPoly;
  const NCPoly sj = NCPoly::word("SJ");
  const NCPoly t = sj.transpose();
  ASSERT_EQ(t.terms.size(), 1u);
  EXPECT_EQ(t.terms.begin()->first, "JS");
  EXPECT_TRUE((t.terms.begin()->second + 1).is_zero());
}

TEST(QuatEquation, MinimizationFloorAndControl) {
  QuatEquationOptions o;
  o.restarts = 40;
  const QuatEquationMinimum m = minimize_quat_eq(1, o);
  EXPECT_GT(m.floor, 1e-2);
  QuatEquationOptions ctl = o;
  ctl.gap = 0.0;
  EXPECT_LE(minimize_quat_eq(1, ctl, true).floor, 1e-3);
}

TEST(General, StepValuesAndVerdicts) {
  const LedgerReport r = general_case_ledger();
  for (const char* id : {"general.step1_symmetric", "general.step1_A2", "general.step2_identity",
                         "general.step2_hypothesis", "general.step2_spot", "general.step3_locus",
                         "general.step4_resultant", "general.step5_symmetric", "general.step5_linear_terms",
                         "general.step5_factor", "general.step5_open_positive"})
    EXPECT_EQ(r.at(id).verdict, Verdict::ExactPass) << id << ": " << r.at(id).witness;
  // F vanishes at the s = 0 corner (v, y) = (2/3, 1/3) of the closed triangle
  EXPECT_EQ(r.at("general.step5_closed_positive").verdict, Verdict::Fail);
  EXPECT_NEAR(r.at("general.step5_grid").residual, 0.158, 1e-12);
}

TEST(General, FinalFormByHand) {
  EXPECT_EQ(detail::final_form(Rational(1, 2), Rational(1, 4)), Rational(7, 4));
  EXPECT_EQ(detail::final_form(Rational(2, 3), Rational(1, 3)), Rational(0));
  const TriangleMinimum t = final_form_triangle_minimum();
  EXPECT_FALSE(t.interior_critical);
  EXPECT_EQ(t.min_value, 0);
}

TEST(General, SampledModeAgrees) {
  GeneralLedgerOptions o;
  o.exact = false;
  const LedgerReport r = general_case_ledger(o);
  EXPECT_EQ(r.at("general.step1_A2").verdict, Verdict::NumericPass);
}

TEST(PKCase, ChainOnModulesWithMinusOneSpace) {
  expect_all_pass(replay_pk_case(context(5, 8)));
  expect_all_pass(replay_pk_case(context(6, 8)));
  const LedgerReport q = replay_pk_case(context(3, 4));
  expect_all_pass(q);
  EXPECT_NE(q.find("pk_case.dz3_symmetric"), nullptr);
}

TEST(Ledger, SameSeedSameResiduals) {
  const LedgerReport a = replay_no_a(context(2, 4), 5, 42), b = replay_no_a(context(2, 4), 5, 42);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i)
    if (std::isfinite(a.steps[i].residual)) EXPECT_EQ(a.steps[i].residual, b.steps[i].residual);
}
