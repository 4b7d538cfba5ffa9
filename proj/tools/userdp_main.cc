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

#include <cstdint>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "userdp/harness.h"
#include "userdp/verify.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

struct Options {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
  bool unsafe_no_noise = false;
  std::string suite;
  std::size_t trials = 0;
};

userdp::ExperimentConfig LoadConfig(const Options& opt) {
  userdp::ExperimentConfig config = userdp::load_config_file(opt.config_path);
  if (opt.seed_set) config.seed = opt.seed;
  if (!opt.out_dir.empty()) config.out_dir = opt.out_dir;
  config.unsafe_no_noise = opt.unsafe_no_noise;
  return config;
}

int RunCommand(const Options& opt) {
  userdp::ExperimentConfig config = LoadConfig(opt);
  userdp::ExperimentReport report = userdp::run_experiment(config);
  userdp::write_experiment_outputs(report, config.out_dir);
  for (const std::string& warning : report.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (!report.is_private && config.algorithm != "nonprivate") {
    std::cerr << "warning: noise disabled; this run is NOT private\n";
  }
  std::cout << userdp::report_json(report);
  return kExitOk;
}

int SweepCommand(const Options& opt) {
  userdp::ExperimentConfig config = LoadConfig(opt);
  std::vector<userdp::ExperimentReport> reports =
      userdp::sweep_experiments(config);
  userdp::write_sweep_outputs(reports, config.out_dir);
  std::cout << userdp::sweep_csv(reports);
  return kExitOk;
}

int VerifyCommand(const Options& opt) {
  std::vector<userdp::CheckReport> reports =
      userdp::run_verify_suite(opt.suite, opt.trials, opt.seed);
  bool all_pass = true;
  for (const userdp::CheckReport& report : reports) {
    std::cout << userdp::check_report_json(report) << "\n";
    all_pass = all_pass && report.pass;
  }
  return all_pass ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"User-level differentially private stochastic convex "
               "optimization"};
  app.require_subcommand(1);

  Options opt;
  app.add_flag("--unsafe-no-noise", opt.unsafe_no_noise,
               "Disable all privacy noise (reports are stamped non-private)");

  CLI::App* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("--config", opt.config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--seed", opt.seed, "Override the config seed")
      ->each([&opt](const std::string&) { opt.seed_set = true; });
  run->add_option("--out", opt.out_dir, "Override the output directory");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run every point of the config's grid");
  sweep->add_option("--config", opt.config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--seed", opt.seed, "Override the config seed")
      ->each([&opt](const std::string&) { opt.seed_set = true; });
  sweep->add_option("--out", opt.out_dir, "Override the output directory");

  CLI::App* verify =
      app.add_subcommand("verify", "Run a named oracle suite");
  verify
      ->add_option("suite", opt.suite,
                   "sensitivity | coupling | smoothing | concentration | "
                   "noise | schedule | all")
      ->required();
  verify->add_option("--trials", opt.trials,
                     "Trial count (0 keeps each check's default)");
  opt.seed = 12345;
  verify->add_option("--seed", opt.seed, "Suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (app.got_subcommand("run")) return RunCommand(opt);
    if (app.got_subcommand("sweep")) return SweepCommand(opt);
    return VerifyCommand(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}
