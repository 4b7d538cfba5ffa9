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

#ifndef USERDP_HARNESS_H_
#define USERDP_HARNESS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "userdp/dataset.h"
#include "userdp/losses.h"
#include "userdp/optimizer.h"
#include "userdp/verify.h"

namespace userdp {

// Fully resolved experiment description. Parsed from a JSON document; CLI
// flags may override seed, output directory, and the unsafe-noise switch.
struct ExperimentConfig {
  std::string loss_id = "norm";
  PopulationSpec population;
  Domain domain;
  std::size_t n = 16;
  std::size_t m = 4;
  std::size_t d = 2;
  PrivacyBudget budget{1.0, 1e-5};
  std::string algorithm = "dpsgd";  // dpsgd | localized | nonprivate
  std::size_t t_cap = kDefaultIterationCap;
  std::size_t repetitions = 1;
  std::uint64_t seed = 1;
  std::size_t k_fresh = 100000;
  std::string out_dir = "out";
  double mu = 1.0;             // quadratic loss only
  double z_clip_radius = 4.0;  // quadratic loss only
  double C = 4.0;              // localization constant
  std::size_t baseline_T = 2000;
  double baseline_eta = 0.0;  // 0 selects R / (G sqrt(T))
  bool unsafe_no_noise = false;

  // Set when centers were given in scalar-broadcast form; sweeps over d
  // rebuild the center vectors from these.
  bool population_center_scalar = false;
  double population_center_value = 0.0;
  bool domain_center_scalar = false;
  double domain_center_value = 0.0;

  // Sweep grids; empty means the base value is not swept.
  std::vector<std::size_t> grid_n;
  std::vector<std::size_t> grid_m;
  std::vector<std::size_t> grid_d;
  std::vector<double> grid_epsilon;
};

struct TrialRow {
  std::size_t trial = 0;
  double excess_risk = 0.0;
  double risk_stderr = 0.0;
  bool halted = false;
  std::size_t steps_run = 0;
  double wall_ms = 0.0;
};

// Parameters derived from the config by the schedule formulas; echoed in
// every report so rows are independently recomputable.
struct DerivedParams {
  std::size_t T = 0;
  double eta = 0.0;
  double r = 0.0;
  double tau = 0.0;
  double R_hat = 0.0;
  double noise_variance = 0.0;
  double session_delta = 0.0;
  // Localization only.
  std::size_t k = 0;
  std::vector<std::size_t> phase_users;
  std::vector<std::size_t> phase_T;
  std::vector<double> phase_eta;
  std::vector<double> phase_r;
  std::vector<double> phase_tau;
  std::vector<double> phase_R_hat;
};

struct ExperimentReport {
  ExperimentConfig config;
  DerivedParams derived;
  std::string config_hash;
  std::vector<TrialRow> trials;
  double excess_mean = 0.0;
  double excess_stderr = 0.0;
  double halted_fraction = 0.0;
  bool is_private = true;
  std::string theta_star_source = "analytic";
  std::vector<std::string> warnings;
};

// Parses and validates a config document. Unknown keys, missing required
// fields, bad ranges, and unresolvable ids all throw std::invalid_argument
// (the CLI maps these to exit code 2) before any computation starts.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// FNV-1a 64 hash of the canonical resolved-config JSON (output directory
// excluded); hex-encoded.
std::string config_hash(const ExperimentConfig& config);

// Runs `repetitions` trials: per trial an independent dataset, the chosen
// algorithm, and an excess-risk estimate against the analytic minimizer on
// a shared fresh-sample set (common random numbers across trials). Trials
// execute in parallel on per-trial substreams of (seed, trial index).
ExperimentReport run_experiment(const ExperimentConfig& config);

// One run per grid point of the cartesian {n, m, d, epsilon} grid.
std::vector<ExperimentReport> sweep_experiments(const ExperimentConfig& config);

// Deterministic serialization (UTF-8, fixed field order).
std::string report_json(const ExperimentReport& report);
std::string trial_row_json(const ExperimentReport& report, const TrialRow& row);
std::string trials_jsonl(const ExperimentReport& report);
std::string summary_csv(const ExperimentReport& report);
std::string sweep_csv(const std::vector<ExperimentReport>& reports);
std::string check_report_json(const CheckReport& report);

// Writes report.json, trials.jsonl, and summary.csv into dir.
void write_experiment_outputs(const ExperimentReport& report,
                              const std::string& dir);
// Writes sweep.csv and sweep_report.json into dir.
void write_sweep_outputs(const std::vector<ExperimentReport>& reports,
                         const std::string& dir);

}  // namespace userdp

#endif  // USERDP_HARNESS_H_
