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
//
// Release gate: one test per numbered acceptance criterion, each printing a
// single [CRITERION N] PASS/FAIL line with the measured statistics. Bounds
// and tolerances are pinned here; a red line means the library does not
// deliver that guarantee as stated, not that the tolerance should move.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "userdp/above_threshold.h"
#include "userdp/concentrated_mean.h"
#include "userdp/harness.h"
#include "userdp/losses.h"
#include "userdp/optimizer.h"
#include "userdp/rng.h"
#include "userdp/verify.h"

namespace userdp {
namespace {

using nlohmann::json;

constexpr std::uint64_t kSeed = 20260814;

void Stamp(int criterion, bool pass, const std::string& detail) {
  std::printf("[CRITERION %d] %s - %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

std::string Fmt(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

// Criterion 1: exact l1 distance of the selection-probability vectors stays
// within the documented bound of 2 on 1000 random neighboring point sets
// (n in 3..50, d in 1..20).
TEST(Acceptance, Criterion1_SelectionSensitivityAudit) {
  std::vector<CheckReport> reports =
      run_verify_suite("sensitivity", 1000, kSeed);
  ASSERT_EQ(reports.size(), 1u);
  const CheckReport& report = reports[0];
  EXPECT_EQ(report.trials, 1000);
  EXPECT_TRUE(report.pass) << report.note;
  Stamp(1, !HasFailure(),
        "worst l1 " + Fmt(report.statistic) + " vs bound 2; " + report.note);
}

// Criterion 2: under the shared-uniform coupling with ||p - p'||_1 <= 2 the
// disagreement count exceeds 2 + 8 ln(1/zeta) with frequency <= zeta at
// zeta = 0.01 over 1e5 draws; marginals stay exact.
TEST(Acceptance, Criterion2_CouplingTail) {
  std::vector<CheckReport> reports =
      run_verify_suite("coupling", 100000, kSeed);
  ASSERT_EQ(reports.size(), 2u);
  for (const CheckReport& report : reports) {
    EXPECT_TRUE(report.pass)
        << report.name << " statistic=" << report.statistic;
  }
  Stamp(2, !HasFailure(),
        "tail freq " + Fmt(reports[1].statistic) + " vs zeta 0.01 (threshold " +
            Fmt(2.0 + 8.0 * std::log(100.0)) + "); worst marginal z " +
            Fmt(reports[0].statistic));
}

// Criterion 3: on concentrated inputs the mean estimator (a) selects the
// full dataset for all T queries in >= 1 - (T+1) gamma - 3 sigma of 1000
// fresh datasets, (b) is unbiased per coordinate within 4 sqrt(var / 1e4)
// over 1e4 sessions, and (c) matches its variance formula within 20%.
TEST(Acceptance, Criterion3_MeanEstimatorUtility) {
  const std::size_t n = 400;
  const std::size_t d = 3;
  const double tau = 1.0;
  const std::size_t t_declared = 5;
  const double gamma = 0.01;
  const PrivacyBudget budget(1.0, 0.1);
  const std::vector<double> center = {0.3, -0.2, 0.5};
  const auto identity = [](const UserItems& items) { return items[0]; };

  auto concentrated_dataset = [&](RngStream& rng) {
    UserDataset data(n, 1, d);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> point = sample_uniform_ball(tau / 4.0, d, rng);
      for (std::size_t c = 0; c < d; ++c) point[c] += center[c];
      data.mutable_item(i, 0) = point;
    }
    return data;
  };

  // (a) Full selection across all declared queries.
  const std::size_t trials = 1000;
  RngStream rng_a(kSeed, 31);
  std::size_t successes = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream data_rng = rng_a.substream(2 * t);
    RngStream session_rng = rng_a.substream(2 * t + 1);
    UserDataset data = concentrated_dataset(data_rng);
    MeanSession session =
        open_session(data, budget, tau, t_declared, session_rng);
    bool ok = true;
    for (std::size_t q = 0; q < t_declared; ++q) {
      QueryResult result = session.query(identity);
      if (result.halted || result.selected_count != static_cast<long>(n)) {
        ok = false;
        break;
      }
    }
    if (ok) ++successes;
  }
  const double freq =
      static_cast<double>(successes) / static_cast<double>(trials);
  const double bound_a =
      1.0 - static_cast<double>(t_declared + 1) * gamma -
      3.0 * std::sqrt(gamma / static_cast<double>(trials));
  EXPECT_NEAR(bound_a, 0.9305131670194949, 1e-15);
  EXPECT_GE(freq, bound_a);

  // (b) Per-coordinate unbiasedness on one fixed dataset.
  RngStream rng_b(kSeed, 32);
  RngStream fixed_rng = rng_b.substream(0);
  UserDataset fixed = concentrated_dataset(fixed_rng);
  std::vector<double> exact(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < d; ++c) exact[c] += fixed.user(i)[0][c];
  }
  for (double& x : exact) x /= static_cast<double>(n);

  const std::size_t sessions = 10000;
  std::vector<double> mean_est(d, 0.0);
  std::size_t collected = 0;
  for (std::size_t s = 0; s < sessions; ++s) {
    MeanSession session =
        open_session(fixed, budget, tau, t_declared, rng_b.substream(1 + s));
    QueryResult result = session.query(identity);
    if (result.halted) continue;
    for (std::size_t c = 0; c < d; ++c) mean_est[c] += result.estimate[c];
    ++collected;
  }
  ASSERT_GT(collected, 9000u);
  const double variance =
      session_noise_variance(n, tau, t_declared, budget);
  const double tolerance =
      4.0 * std::sqrt(variance / static_cast<double>(sessions));
  double worst_bias = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    mean_est[c] /= static_cast<double>(collected);
    worst_bias = std::max(worst_bias, std::abs(mean_est[c] - exact[c]));
  }
  EXPECT_LE(worst_bias, tolerance);

  // (c) Variance formula, audited empirically and spot-checked.
  NoiseAuditParams audit;
  audit.budget = PrivacyBudget(1.0, 0.1);
  CheckReport audit_report = empirical_noise_audit(audit, RngStream(kSeed, 33));
  EXPECT_TRUE(audit_report.pass) << audit_report.note;
  const double spot = session_noise_variance(10, 1.0, 1, PrivacyBudget(1.0, 0.1));
  EXPECT_NEAR(spot, 0.7404620599975574, 1e-12);
  EXPECT_NEAR(session_noise_variance(10, 1.0, 2, PrivacyBudget(1.0, 0.1)),
              1.7917407528732197, 1e-12);
  EXPECT_DOUBLE_EQ(
      spot / session_noise_variance(20, 1.0, 1, PrivacyBudget(1.0, 0.1)), 4.0);
  EXPECT_DOUBLE_EQ(
      session_noise_variance(10, 2.0, 1, PrivacyBudget(1.0, 0.1)) / spot, 4.0);
  EXPECT_NEAR(spot / session_noise_variance(10, 1.0, 1, PrivacyBudget(2.0, 0.1)),
              2.6054895207604667, 1e-12);

  Stamp(3, !HasFailure(),
        "full-selection freq " + Fmt(freq) + " vs " + Fmt(bound_a) +
            "; worst bias " + Fmt(worst_bias) + " vs " + Fmt(tolerance) +
            "; variance ratio " +
            Fmt(audit_report.statistic / audit_report.bound));
}

// Criterion 4: the above-threshold accuracy event at alpha =
// 8 ln(2T/gamma) / epsilon holds with frequency >= 1 - gamma - 3 sigma over
// 1000 runs of T = 50 queries.
TEST(Acceptance, Criterion4_AboveThresholdAccuracy) {
  const std::size_t t = 50;
  const double gamma = 0.01;
  const double epsilon_at = 1.0;
  const double sensitivity = 1.0;
  const double alpha = at_accuracy_width(t, gamma, epsilon_at, sensitivity);
  EXPECT_NEAR(alpha, 73.68272297580947, 1e-10);

  const double threshold = 0.0;
  const double offsets[] = {0.3, 1.2, 0.9};
  const std::size_t trials = 1000;
  RngStream rng(kSeed, 41);
  std::size_t successes = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RngStream run_rng = rng.substream(trial);
    ATState state =
        at_init(threshold, epsilon_at, sensitivity, run_rng);
    bool ok = true;
    for (std::size_t i = 0; i < t; ++i) {
      const double q = (i + 1 == t) ? threshold - 1.2 * alpha
                                    : threshold + offsets[i % 3] * alpha;
      ATAnswer answer = at_step(state, q, run_rng);
      if (q >= threshold + alpha && answer == ATAnswer::kBottom) ok = false;
      if (q <= threshold - alpha && answer == ATAnswer::kTop) ok = false;
      if (answer == ATAnswer::kBottom) break;
    }
    if (ok) ++successes;
  }
  const double freq =
      static_cast<double>(successes) / static_cast<double>(trials);
  const double bound =
      1.0 - gamma -
      3.0 * std::sqrt(gamma * (1.0 - gamma) / static_cast<double>(trials));
  EXPECT_NEAR(bound, 0.9805607203664686, 1e-15);
  EXPECT_GE(freq, bound);
  Stamp(4, !HasFailure(),
        "accuracy freq " + Fmt(freq) + " vs bound " + Fmt(bound) +
            " at alpha " + Fmt(alpha));
}

// Criterion 5: smoothing properties: value sandwich within MC error,
// gradient norms <= G, and the G sqrt(d)/r smoothness bound on >= 99% of
// probes.
TEST(Acceptance, Criterion5_SmoothingProperties) {
  std::vector<CheckReport> reports = run_verify_suite("smoothing", 0, kSeed);
  ASSERT_EQ(reports.size(), 3u);
  std::string detail;
  for (const CheckReport& report : reports) {
    EXPECT_TRUE(report.pass)
        << report.name << " statistic=" << report.statistic;
    if (!detail.empty()) detail += ", ";
    detail += report.name + " " + Fmt(report.statistic);
  }
  Stamp(5, !HasFailure(), detail);
}

// Criterion 6: per-user gradient concentration for the norm loss with
// z ~ N(0, I_5), n = 20, m = 16: violation fraction of the
// G ln(nd/gamma)/sqrt(m) radius stays within gamma/n plus 3 sigma.
TEST(Acceptance, Criterion6_GradientConcentration) {
  std::vector<CheckReport> reports =
      run_verify_suite("concentration", 0, kSeed);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_TRUE(reports[0].pass) << reports[0].note;
  Stamp(6, !HasFailure(),
        "violation fraction " + Fmt(reports[0].statistic) + " vs bound " +
            Fmt(reports[0].bound) + "; " + reports[0].note);
}

// Criterion 7: schedule arithmetic: the default schedule identities hold to
// 1e-12 and the localization plan has the documented shape and terminal
// bound.
TEST(Acceptance, Criterion7_ScheduleArithmetic) {
  std::vector<CheckReport> reports = run_verify_suite("schedule", 0, kSeed);
  ASSERT_EQ(reports.size(), 2u);
  for (const CheckReport& report : reports) {
    EXPECT_TRUE(report.pass)
        << report.name << " statistic=" << report.statistic;
  }

  SGDConfig cfg =
      default_config(10, 4, 5, PrivacyBudget(1.0, 0.1), 1.0, 2.0, 1000000);
  EXPECT_EQ(cfg.T, 1690u);

  LocalizationSchedule plan = localization_schedule(
      64, 4, 5, PrivacyBudget(2.0, 1e-5), 1.0, 1.0, 4.0, 20000,
      std::vector<double>(5, 0.0));
  EXPECT_EQ(plan.k, 3u);
  EXPECT_EQ(plan.n_formula, (std::vector<std::size_t>{8, 16, 32}));
  EXPECT_EQ(plan.n_alloc, (std::vector<std::size_t>{8, 16, 40}));
  EXPECT_LE(plan.D.back(), 32.0 * plan.E.back());

  LocalizationSchedule wide = localization_schedule(
      64, 8, 5, PrivacyBudget(2.0, 1e-5), 1.0, 1.0, 4.0, 20000,
      std::vector<double>(5, 0.0));
  EXPECT_EQ(wide.k, 4u);
  EXPECT_EQ(wide.n_alloc, (std::vector<std::size_t>{4, 8, 16, 36}));

  Stamp(7, !HasFailure(),
        "identity residual " + Fmt(reports[0].statistic) + "; T(10,4,5)=" +
            std::to_string(cfg.T) + "; k(64,4)=" + std::to_string(plan.k) +
            "; D_k/32E_k " + Fmt(reports[1].statistic));
}

// Criterion 8: end-to-end rate shape for the norm loss in d = 10 at
// delta = 1e-5, t_cap = 20000, 50 repetitions per point: excess risk
// non-increasing in m over {4, 16, 64} at n = 16 and in epsilon over
// {0.5, 1, 2, 4}, and dpsgd within 10x of the nonprivate baseline at the
// largest point, all with 2 stderr slack.
TEST(Acceptance, Criterion8_RiskRateShape) {
  const std::string base_doc = R"({
    "loss": "norm",
    "population": {"kind": "gaussian", "center_value": 0.0, "stddev": 1.0},
    "domain": {"center_value": 0.0, "radius": 2.0},
    "n": 16, "m": 16, "d": 10,
    "epsilon": 2.0, "delta": 1e-5,
    "algorithm": "dpsgd",
    "t_cap": 20000,
    "repetitions": 50,
    "seed": 20260814,
    "k_fresh": 20000
  })";

  auto non_increasing = [](const std::vector<ExperimentReport>& reports,
                           std::string* desc) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < reports.size(); ++i) {
      const double slack = 2.0 * std::sqrt(
          reports[i].excess_stderr * reports[i].excess_stderr +
          reports[i + 1].excess_stderr * reports[i + 1].excess_stderr);
      if (reports[i + 1].excess_mean > reports[i].excess_mean + slack) {
        ok = false;
      }
    }
    for (const ExperimentReport& report : reports) {
      if (!desc->empty()) *desc += "/";
      *desc += Fmt(report.excess_mean);
    }
    return ok;
  };

  ExperimentConfig m_sweep = parse_config_text(base_doc);
  m_sweep.grid_m = {4, 16, 64};
  std::vector<ExperimentReport> by_m = sweep_experiments(m_sweep);
  ASSERT_EQ(by_m.size(), 3u);
  std::string m_desc;
  EXPECT_TRUE(non_increasing(by_m, &m_desc)) << "means " << m_desc;

  ExperimentConfig eps_sweep = parse_config_text(base_doc);
  eps_sweep.grid_epsilon = {0.5, 1.0, 2.0, 4.0};
  std::vector<ExperimentReport> by_eps = sweep_experiments(eps_sweep);
  ASSERT_EQ(by_eps.size(), 4u);
  std::string eps_desc;
  EXPECT_TRUE(non_increasing(by_eps, &eps_desc)) << "means " << eps_desc;

  ExperimentConfig largest = parse_config_text(base_doc);
  largest.m = 64;
  ExperimentReport dpsgd_report = run_experiment(largest);
  largest.algorithm = "nonprivate";
  ExperimentReport baseline = run_experiment(largest);
  const double slack = 2.0 * std::sqrt(
      dpsgd_report.excess_stderr * dpsgd_report.excess_stderr +
      baseline.excess_stderr * baseline.excess_stderr);
  EXPECT_LE(dpsgd_report.excess_mean, 10.0 * baseline.excess_mean + slack)
      << "dpsgd " << dpsgd_report.excess_mean << " baseline "
      << baseline.excess_mean;

  Stamp(8, !HasFailure(),
        "m-sweep " + m_desc + "; eps-sweep " + eps_desc + "; dpsgd " +
            Fmt(dpsgd_report.excess_mean) + " vs 10x baseline " +
            Fmt(10.0 * baseline.excess_mean));
}

// Criterion 9: on the quadratic benchmark (mu = 1, d = 5, n = 64, m = 8,
// epsilon = 2), the localized algorithm's aggregate excess risk over 50
// repetitions is below plain dpsgd's by at least 2 combined stderr.
TEST(Acceptance, Criterion9_StronglyConvexImprovement) {
  const std::string base_doc = R"({
    "loss": "quadratic",
    "mu": 1.0,
    "z_clip_radius": 1.0,
    "population": {"kind": "clipped_gaussian", "center": [0.5, 0, 0, 0, 0],
                   "stddev": 0.5, "clip_radius": 1.0},
    "domain": {"center_value": 0.0, "radius": 2.0},
    "n": 64, "m": 8, "d": 5,
    "epsilon": 2.0, "delta": 0.01,
    "algorithm": "localized",
    "C": 2.5,
    "t_cap": 20000,
    "repetitions": 50,
    "seed": 20260814,
    "k_fresh": 20000
  })";
  ExperimentConfig config = parse_config_text(base_doc);
  ExperimentReport localized = run_experiment(config);

  config.algorithm = "dpsgd";
  ExperimentReport plain = run_experiment(config);

  const double slack = 2.0 * std::sqrt(
      localized.excess_stderr * localized.excess_stderr +
      plain.excess_stderr * plain.excess_stderr);
  EXPECT_LT(localized.excess_mean, plain.excess_mean - slack)
      << "localized " << localized.excess_mean << " (halted fraction "
      << localized.halted_fraction << ") vs dpsgd " << plain.excess_mean
      << " (halted fraction " << plain.halted_fraction << ")";
  Stamp(9, !HasFailure(),
        "localized " + Fmt(localized.excess_mean) + " (halted " +
            Fmt(localized.halted_fraction) + ") vs dpsgd " +
            Fmt(plain.excess_mean) + " (halted " +
            Fmt(plain.halted_fraction) + "), slack " + Fmt(slack));
}

// Criterion 10: report rows reproduce bit-exactly from (config, seed);
// wall-clock time is the only field allowed to differ.
TEST(Acceptance, Criterion10_Determinism) {
  const std::string doc = R"({
    "loss": "norm",
    "population": {"kind": "gaussian", "center_value": 0.5, "stddev": 1.0},
    "domain": {"center_value": 0.0, "radius": 2.0},
    "n": 8, "m": 2, "d": 2,
    "epsilon": 2.0, "delta": 1e-5,
    "algorithm": "dpsgd",
    "t_cap": 50,
    "repetitions": 4,
    "seed": 7,
    "k_fresh": 1000
  })";
  ExperimentConfig config = parse_config_text(doc);
  ExperimentReport a = run_experiment(config);
  ExperimentReport b = run_experiment(config);

  EXPECT_EQ(report_json(a), report_json(b));
  ASSERT_EQ(a.trials.size(), b.trials.size());
  std::size_t identical = 0;
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    json ja = json::parse(trial_row_json(a, a.trials[i]));
    json jb = json::parse(trial_row_json(b, b.trials[i]));
    ja.erase("wall_ms");
    jb.erase("wall_ms");
    if (ja.dump() == jb.dump()) ++identical;
    EXPECT_EQ(ja.dump(), jb.dump()) << "trial " << i;
  }

  std::vector<CheckReport> v1 = run_verify_suite("schedule", 0, kSeed);
  std::vector<CheckReport> v2 = run_verify_suite("schedule", 0, kSeed);
  ASSERT_EQ(v1.size(), v2.size());
  for (std::size_t i = 0; i < v1.size(); ++i) {
    EXPECT_EQ(v1[i].statistic, v2[i].statistic);
  }

  Stamp(10, !HasFailure(),
        std::to_string(identical) + "/" + std::to_string(a.trials.size()) +
            " rows identical modulo wall_ms; report JSON byte-equal");
}

}  // namespace
}  // namespace userdp
