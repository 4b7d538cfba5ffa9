// Copyright 2026 The userdp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "userdp/verify.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "userdp/losses.h"
#include "userdp/rng.h"

namespace userdp {
namespace {

TEST(CheckProbSensitivity, TwoClusterMergeExceedsBound) {
  // Two 1-d clusters of three points each, 2.5 apart, tau = 1. Every point
  // sees exactly three neighbors within 2 tau, which lands on the ramp at
  // probability 0. Moving one far point into the near cluster lifts four
  // points to probability 1, so the l1 distance is exactly 4.
  std::vector<std::vector<double>> points = {{0.0},  {0.0},  {0.0},
                                             {2.5},  {2.5},  {2.5}};
  CheckReport report = check_prob_sensitivity(points, {0.0}, 5, 1.0);
  EXPECT_EQ(report.name, "prob_sensitivity");
  EXPECT_DOUBLE_EQ(report.statistic, 4.0);
  EXPECT_DOUBLE_EQ(report.bound, 2.0);
  EXPECT_FALSE(report.pass);
}

TEST(CheckProbSensitivity, SingleClusterIsStable) {
  std::vector<std::vector<double>> points(5, std::vector<double>{0.0});
  CheckReport report = check_prob_sensitivity(points, {0.1}, 2, 1.0);
  EXPECT_DOUBLE_EQ(report.statistic, 0.0);
  EXPECT_TRUE(report.pass);
}

TEST(CheckProbSensitivity, ValidatesArguments) {
  std::vector<std::vector<double>> points(3, std::vector<double>{0.0, 0.0});
  EXPECT_THROW(check_prob_sensitivity(points, {0.0, 0.0}, 3, 1.0),
               std::invalid_argument);
  EXPECT_THROW(check_prob_sensitivity(points, {0.0}, 0, 1.0),
               std::invalid_argument);
}

TEST(CoupleBernoulli, IdenticalVectorsNeverDisagree) {
  RngStream rng(11, 0);
  std::vector<double> p = {0.2, 0.5, 0.9};
  for (int t = 0; t < 200; ++t) {
    CoupleSample sample = couple_bernoulli(p, p, rng);
    EXPECT_EQ(sample.hamming, 0);
    EXPECT_EQ(sample.x, sample.y);
    EXPECT_DOUBLE_EQ(sample.l1, 0.0);
    EXPECT_FALSE(sample.l1_exceeds_two);
  }
}

TEST(CoupleBernoulli, ExtremesAlwaysDisagree) {
  RngStream rng(12, 0);
  std::vector<double> ones(4, 1.0);
  std::vector<double> zeros(4, 0.0);
  CoupleSample sample = couple_bernoulli(ones, zeros, rng);
  EXPECT_EQ(sample.hamming, 4);
  EXPECT_EQ(sample.x, std::vector<int>(4, 1));
  EXPECT_EQ(sample.y, std::vector<int>(4, 0));
  EXPECT_DOUBLE_EQ(sample.l1, 4.0);
  EXPECT_TRUE(sample.l1_exceeds_two);
}

TEST(CoupleBernoulli, MarginalsAndDisagreementRateMatch) {
  RngStream rng(13, 0);
  std::vector<double> p = {0.3, 0.8};
  std::vector<double> p_prime = {0.7, 0.75};
  const int draws = 40000;
  long sum_x0 = 0;
  long sum_y0 = 0;
  long disagreements = 0;
  for (int t = 0; t < draws; ++t) {
    CoupleSample sample = couple_bernoulli(p, p_prime, rng);
    sum_x0 += sample.x[0];
    sum_y0 += sample.y[0];
    disagreements += sample.hamming;
    EXPECT_NEAR(sample.l1, 0.45, 1e-12);
  }
  const double n = static_cast<double>(draws);
  EXPECT_NEAR(sum_x0 / n, 0.3, 4.0 * std::sqrt(0.3 * 0.7 / n));
  EXPECT_NEAR(sum_y0 / n, 0.7, 4.0 * std::sqrt(0.7 * 0.3 / n));
  // E[hamming] = |0.3 - 0.7| + |0.8 - 0.75| = 0.45 under the shared-uniform
  // coupling.
  EXPECT_NEAR(disagreements / n, 0.45, 0.02);
}

TEST(CoupleBernoulli, ValidatesArguments) {
  RngStream rng(14, 0);
  std::vector<double> ok = {0.5};
  std::vector<double> bad = {1.5};
  std::vector<double> longer = {0.5, 0.5};
  EXPECT_THROW(couple_bernoulli(ok, bad, rng), std::invalid_argument);
  EXPECT_THROW(couple_bernoulli(bad, ok, rng), std::invalid_argument);
  EXPECT_THROW(couple_bernoulli(ok, longer, rng), std::invalid_argument);
}

TEST(FiniteDiffCheck, QuadraticGradientMatchesCentralDifference) {
  Domain domain{std::vector<double>(3, 0.0), 2.0};
  QuadraticLoss loss(domain, 2.0, std::vector<double>(3, 0.0), 3.0);
  std::vector<double> theta = {0.4, -0.9, 1.1};
  std::vector<double> z = {1.0, 0.5, -2.0};
  CheckReport report = finite_diff_check(loss, theta, z, 1e-5);
  EXPECT_EQ(report.name, "finite_diff");
  EXPECT_TRUE(report.pass);
  EXPECT_LE(report.statistic, 1e-4);
  EXPECT_TRUE(report.note.empty());
}

TEST(FiniteDiffCheck, NormLossAwayFromKinkPasses) {
  Domain domain{std::vector<double>(2, 0.0), 2.0};
  NormLoss loss(domain);
  CheckReport report = finite_diff_check(loss, {1.0, 0.5}, {-0.3, 0.2}, 1e-6);
  EXPECT_TRUE(report.pass);
  EXPECT_LE(report.statistic, 1e-4);
}

TEST(FiniteDiffCheck, NormLossKinkIsDetectedAndSkipped) {
  Domain domain{std::vector<double>(2, 0.0), 2.0};
  NormLoss loss(domain);
  std::vector<double> theta = {0.7, -0.4};
  CheckReport report = finite_diff_check(loss, theta, theta, 1e-6);
  EXPECT_TRUE(report.pass);
  EXPECT_NE(report.note.find("kink"), std::string::npos);
}

TEST(FiniteDiffCheck, RejectsNonPositiveStep) {
  Domain domain{std::vector<double>(2, 0.0), 2.0};
  NormLoss loss(domain);
  EXPECT_THROW(finite_diff_check(loss, {0.1, 0.1}, {0.0, 0.0}, 0.0),
               std::invalid_argument);
}

TEST(EmpiricalNoiseAudit, MatchesSessionVarianceOnConcentratedInput) {
  NoiseAuditParams params;
  params.n = 10;
  params.d = 2;
  params.tau = 1.0;
  params.T = 1;
  params.budget = PrivacyBudget(1.0, 0.1);
  params.collected = 1500;
  CheckReport report = empirical_noise_audit(params, RngStream(9001, 0));
  EXPECT_EQ(report.name, "noise_variance_audit");
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.trials, 1500);
  EXPECT_NEAR(report.bound, 0.7404620599975574, 1e-12);
  EXPECT_NEAR(report.statistic / report.bound, 1.0, 0.2);
}

TEST(EmpiricalNoiseAudit, RejectsZeroCounts) {
  NoiseAuditParams params;
  params.collected = 0;
  EXPECT_THROW(empirical_noise_audit(params, RngStream(1, 0)),
               std::invalid_argument);
}

TEST(RunVerifySuite, ScheduleChecksPass) {
  std::vector<CheckReport> reports = run_verify_suite("schedule", 0, 77);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].name, "schedule_identities");
  EXPECT_EQ(reports[1].name, "localization_chain");
  for (const CheckReport& report : reports) {
    EXPECT_TRUE(report.pass) << report.name;
  }
}

TEST(RunVerifySuite, CouplingChecksPassAtReducedDraws) {
  std::vector<CheckReport> reports = run_verify_suite("coupling", 20000, 77);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].name, "coupling_marginals");
  EXPECT_EQ(reports[1].name, "coupling_tail");
  for (const CheckReport& report : reports) {
    EXPECT_TRUE(report.pass) << report.name << " statistic=" << report.statistic;
  }
}

TEST(RunVerifySuite, SensitivityAuditReportsViolationCount) {
  std::vector<CheckReport> reports = run_verify_suite("sensitivity", 300, 77);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].name, "sensitivity_l1_audit");
  EXPECT_EQ(reports[0].trials, 300);
  EXPECT_DOUBLE_EQ(reports[0].bound, 2.0);
  EXPECT_NE(reports[0].note.find("violations="), std::string::npos);
}

TEST(RunVerifySuite, UnknownSuiteThrows) {
  EXPECT_THROW(run_verify_suite("bogus", 0, 1), std::invalid_argument);
  try {
    run_verify_suite("bogus", 0, 1);
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("unknown verify suite"),
              std::string::npos);
  }
}

TEST(RunVerifySuite, AllUnionsEveryNamedSuite) {
  std::vector<CheckReport> all = run_verify_suite("all", 200, 321);
  std::set<std::string> names;
  for (const CheckReport& report : all) names.insert(report.name);
  const std::set<std::string> expected = {
      "sensitivity_l1_audit", "coupling_marginals",   "coupling_tail",
      "smoothing_sandwich",   "smoothing_lipschitz",  "smoothing_smoothness",
      "gradient_concentration", "noise_variance_spot",
      "noise_variance_quartering", "schedule_identities",
      "localization_chain"};
  EXPECT_EQ(names, expected);
  EXPECT_EQ(all.size(), expected.size());
}

}  // namespace
}  // namespace userdp
