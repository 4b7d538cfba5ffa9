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

#include "userdp/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace userdp {
namespace {

using nlohmann::json;

constexpr std::uint64_t kRiskStreamId = 982451653ULL;

std::string FormatDouble(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void RequireKeys(const json& j, const std::set<std::string>& allowed,
                 const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (allowed.find(key) == allowed.end()) {
      throw std::invalid_argument("config error: unknown key '" + key +
                                  "' in " + where);
    }
  }
}

double GetNumber(const json& j, const std::string& key, bool required,
                 double fallback) {
  if (!j.contains(key)) {
    if (required) {
      throw std::invalid_argument("config error: missing required field '" +
                                  key + "'");
    }
    return fallback;
  }
  if (!j[key].is_number()) {
    throw std::invalid_argument("config error: field '" + key +
                                "' must be a number");
  }
  return j[key].get<double>();
}

std::size_t GetCount(const json& j, const std::string& key, bool required,
                     std::size_t fallback) {
  double v = GetNumber(j, key, required, static_cast<double>(fallback));
  if (v < 0 || v != std::floor(v)) {
    throw std::invalid_argument("config error: field '" + key +
                                "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

std::string GetString(const json& j, const std::string& key, bool required,
                      const std::string& fallback) {
  if (!j.contains(key)) {
    if (required) {
      throw std::invalid_argument("config error: missing required field '" +
                                  key + "'");
    }
    return fallback;
  }
  if (!j[key].is_string()) {
    throw std::invalid_argument("config error: field '" + key +
                                "' must be a string");
  }
  return j[key].get<std::string>();
}

std::vector<double> GetDoubleArray(const json& j, const std::string& key) {
  if (!j[key].is_array()) {
    throw std::invalid_argument("config error: field '" + key +
                                "' must be an array");
  }
  std::vector<double> out;
  for (const json& v : j[key]) {
    if (!v.is_number()) {
      throw std::invalid_argument("config error: field '" + key +
                                  "' must contain numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.repetitions < 1) {
    throw std::invalid_argument("config error: repetitions must be >= 1");
  }
  if (config.k_fresh < 1000) {
    throw std::invalid_argument("config error: k_fresh must be >= 1000");
  }
  if (config.algorithm != "dpsgd" && config.algorithm != "localized" &&
      config.algorithm != "nonprivate") {
    throw std::invalid_argument("config error: unknown algorithm '" +
                                config.algorithm + "'");
  }
  if (config.loss_id != "norm" && config.loss_id != "quadratic") {
    throw std::invalid_argument("config error: unknown loss '" +
                                config.loss_id + "'");
  }
  if (config.population.dimension() != config.d ||
      config.domain.center.size() != config.d) {
    throw std::invalid_argument(
        "config error: population/domain dimensions must equal d");
  }
  if (!(config.domain.radius > 0)) {
    throw std::invalid_argument("config error: domain radius must be positive");
  }
  if (config.loss_id == "quadratic" && config.population.kind == "gaussian") {
    throw std::invalid_argument(
        "config error: the quadratic loss requires a clipped_gaussian or "
        "point_mass population (its samples must respect the clip bound)");
  }
  if (config.loss_id == "quadratic" &&
      config.population.kind == "clipped_gaussian" &&
      config.population.clip_radius > config.z_clip_radius) {
    throw std::invalid_argument(
        "config error: population clip_radius exceeds z_clip_radius");
  }
  if (config.n == 0 || config.m == 0 || config.d == 0) {
    throw std::invalid_argument("config error: n, m, d must be positive");
  }
}

std::unique_ptr<LossOracle> BuildLoss(const ExperimentConfig& config) {
  return make_loss(config.loss_id, config.domain, config.mu,
                   config.population.center, config.z_clip_radius);
}

void ParallelFor(std::size_t count,
                 const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers =
      std::min<std::size_t>(count, hw == 0 ? 4 : static_cast<std::size_t>(hw));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct PairedRisk {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Mean and standard error of l(a; z) - l(b; z) over a fixed item set, so
// the comparison shares its random numbers across candidate points.
PairedRisk PairedExcess(const LossOracle& loss, const std::vector<double>& a,
                        const std::vector<double>& b,
                        const std::vector<std::vector<double>>& items) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const std::vector<double>& z : items) {
    double diff = loss.value(a, z) - loss.value(b, z);
    sum += diff;
    sum_sq += diff * diff;
  }
  const double k = static_cast<double>(items.size());
  PairedRisk out;
  out.mean = sum / k;
  double variance = std::max(0.0, sum_sq / k - out.mean * out.mean);
  out.stderr_ = std::sqrt(variance / k);
  return out;
}

json PopulationJson(const PopulationSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  j["center"] = spec.center;
  j["stddev"] = spec.stddev;
  if (std::isfinite(spec.clip_radius)) j["clip_radius"] = spec.clip_radius;
  return j;
}

json ConfigJson(const ExperimentConfig& config, bool include_out) {
  json j;
  j["algorithm"] = config.algorithm;
  j["C"] = config.C;
  j["baseline_T"] = config.baseline_T;
  j["baseline_eta"] = config.baseline_eta;
  j["d"] = config.d;
  j["delta"] = config.budget.delta;
  j["domain"] = {{"center", config.domain.center},
                 {"radius", config.domain.radius}};
  j["epsilon"] = config.budget.epsilon;
  j["k_fresh"] = config.k_fresh;
  j["loss"] = config.loss_id;
  j["m"] = config.m;
  j["mu"] = config.mu;
  j["n"] = config.n;
  j["population"] = PopulationJson(config.population);
  j["repetitions"] = config.repetitions;
  j["seed"] = config.seed;
  j["t_cap"] = config.t_cap;
  j["unsafe_no_noise"] = config.unsafe_no_noise;
  j["z_clip_radius"] = config.z_clip_radius;
  if (!config.grid_n.empty()) j["grid_n"] = config.grid_n;
  if (!config.grid_m.empty()) j["grid_m"] = config.grid_m;
  if (!config.grid_d.empty()) j["grid_d"] = config.grid_d;
  if (!config.grid_epsilon.empty()) j["grid_epsilon"] = config.grid_epsilon;
  if (include_out) j["out"] = config.out_dir;
  return j;
}

json DerivedJson(const DerivedParams& derived,
                 const std::string& algorithm) {
  json j;
  if (algorithm == "localized") {
    j["k"] = derived.k;
    j["phase_users"] = derived.phase_users;
    j["phase_T"] = derived.phase_T;
    j["phase_eta"] = derived.phase_eta;
    j["phase_r"] = derived.phase_r;
    j["phase_tau"] = derived.phase_tau;
    j["phase_R_hat"] = derived.phase_R_hat;
  } else {
    j["T"] = derived.T;
    j["eta"] = derived.eta;
    j["r"] = derived.r;
    j["tau"] = derived.tau;
    j["R_hat"] = derived.R_hat;
    j["noise_variance"] = derived.noise_variance;
    j["session_delta"] = derived.session_delta;
  }
  return j;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config error: invalid JSON: ") +
                                e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("config error: document must be an object");
  }
  RequireKeys(j,
              {"loss", "mu", "z_clip_radius", "population", "domain", "n", "m",
               "d", "epsilon", "delta", "algorithm", "t_cap", "repetitions",
               "seed", "k_fresh", "out", "C", "baseline_T", "baseline_eta",
               "grid"},
              "the top-level document");

  ExperimentConfig config;
  config.loss_id = GetString(j, "loss", true, "");
  config.n = GetCount(j, "n", true, 0);
  config.m = GetCount(j, "m", true, 0);
  config.d = GetCount(j, "d", true, 0);
  config.algorithm = GetString(j, "algorithm", true, "");
  config.repetitions = GetCount(j, "repetitions", true, 0);
  config.seed = static_cast<std::uint64_t>(GetCount(j, "seed", true, 0));
  config.budget =
      PrivacyBudget(GetNumber(j, "epsilon", true, 0), GetNumber(j, "delta", true, 0));
  config.t_cap = GetCount(j, "t_cap", false, kDefaultIterationCap);
  config.k_fresh = GetCount(j, "k_fresh", false, 100000);
  config.out_dir = GetString(j, "out", false, "out");
  config.mu = GetNumber(j, "mu", false, 1.0);
  config.z_clip_radius = GetNumber(j, "z_clip_radius", false, 4.0);
  config.C = GetNumber(j, "C", false, 4.0);
  config.baseline_T = GetCount(j, "baseline_T", false, 2000);
  config.baseline_eta = GetNumber(j, "baseline_eta", false, 0.0);

  if (!j.contains("population") || !j["population"].is_object()) {
    throw std::invalid_argument(
        "config error: missing required object 'population'");
  }
  const json& pop = j["population"];
  RequireKeys(pop, {"kind", "center", "center_value", "stddev", "clip_radius"},
              "'population'");
  config.population.kind = GetString(pop, "kind", false, "gaussian");
  config.population.stddev = GetNumber(pop, "stddev", false, 1.0);
  if (pop.contains("center") && pop.contains("center_value")) {
    throw std::invalid_argument(
        "config error: give population center or center_value, not both");
  }
  if (pop.contains("center_value")) {
    config.population_center_scalar = true;
    config.population_center_value = GetNumber(pop, "center_value", true, 0);
    config.population.center.assign(config.d, config.population_center_value);
  } else if (pop.contains("center")) {
    config.population.center = GetDoubleArray(pop, "center");
  } else {
    throw std::invalid_argument(
        "config error: population needs center or center_value");
  }
  if (pop.contains("clip_radius")) {
    config.population.clip_radius = GetNumber(pop, "clip_radius", true, 0);
  } else if (config.population.kind == "clipped_gaussian") {
    config.population.clip_radius = config.z_clip_radius;
  }

  Domain domain;
  if (j.contains("domain")) {
    if (!j["domain"].is_object()) {
      throw std::invalid_argument("config error: 'domain' must be an object");
    }
    const json& dom = j["domain"];
    RequireKeys(dom, {"center", "center_value", "radius"}, "'domain'");
    domain.radius = GetNumber(dom, "radius", false, 2.0);
    if (dom.contains("center") && dom.contains("center_value")) {
      throw std::invalid_argument(
          "config error: give domain center or center_value, not both");
    }
    if (dom.contains("center")) {
      domain.center = GetDoubleArray(dom, "center");
    } else {
      config.domain_center_scalar = true;
      config.domain_center_value = GetNumber(dom, "center_value", false, 0.0);
      domain.center.assign(config.d, config.domain_center_value);
    }
  } else {
    config.domain_center_scalar = true;
    config.domain_center_value = 0.0;
    domain.radius = 2.0;
    domain.center.assign(config.d, 0.0);
  }
  config.domain = domain;

  if (j.contains("grid")) {
    if (!j["grid"].is_object()) {
      throw std::invalid_argument("config error: 'grid' must be an object");
    }
    const json& grid = j["grid"];
    RequireKeys(grid, {"n", "m", "d", "epsilon"}, "'grid'");
    auto counts = [&](const std::string& key) {
      std::vector<std::size_t> out;
      for (double v : GetDoubleArray(grid, key)) {
        if (v < 1 || v != std::floor(v)) {
          throw std::invalid_argument("config error: grid." + key +
                                      " must hold positive integers");
        }
        out.push_back(static_cast<std::size_t>(v));
      }
      if (out.empty()) {
        throw std::invalid_argument("config error: grid." + key +
                                    " must be non-empty");
      }
      return out;
    };
    if (grid.contains("n")) config.grid_n = counts("n");
    if (grid.contains("m")) config.grid_m = counts("m");
    if (grid.contains("d")) config.grid_d = counts("d");
    if (grid.contains("epsilon")) {
      config.grid_epsilon = GetDoubleArray(grid, "epsilon");
      if (config.grid_epsilon.empty()) {
        throw std::invalid_argument("config error: grid.epsilon is empty");
      }
    }
  }

  ValidateConfig(config);
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config error: cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string canonical = ConfigJson(config, /*include_out=*/false).dump();
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ValidateConfig(config);
  std::unique_ptr<LossOracle> loss = BuildLoss(config);

  ExperimentReport report;
  report.config = config;
  report.config_hash = config_hash(config);
  report.is_private =
      config.algorithm != "nonprivate" && !config.unsafe_no_noise;

  const std::vector<double> theta_star =
      analytic_minimizer(*loss, config.population);
  RngStream risk_rng(config.seed, kRiskStreamId);
  std::vector<std::vector<double>> risk_items;
  risk_items.reserve(config.k_fresh);
  for (std::size_t i = 0; i < config.k_fresh; ++i) {
    risk_items.push_back(sample_item(config.population, risk_rng));
  }

  SGDConfig sgd_cfg{.budget = config.budget};
  LocalizationSchedule plan;
  double baseline_eta = config.baseline_eta;
  if (config.algorithm == "dpsgd") {
    sgd_cfg = default_config(config.n, config.m, config.d, config.budget,
                             loss->lipschitz(), config.domain.diameter(),
                             config.t_cap, config.domain.center);
    report.derived.T = sgd_cfg.T;
    report.derived.eta = sgd_cfg.eta;
    report.derived.r = sgd_cfg.r;
    report.derived.tau = sgd_cfg.tau;
    report.derived.R_hat = sgd_cfg.R_hat;
    report.derived.session_delta =
        config.budget.delta /
        (2.0 * static_cast<double>(sgd_cfg.T) * static_cast<double>(config.m) *
         static_cast<double>(config.n) * static_cast<double>(config.d));
    report.derived.noise_variance = session_noise_variance(
        config.n, sgd_cfg.tau, sgd_cfg.T,
        PrivacyBudget(config.budget.epsilon, report.derived.session_delta));
    report.warnings = sgd_cfg.warnings;
  } else if (config.algorithm == "localized") {
    plan = localization_schedule(config.n, config.m, config.d, config.budget,
                                 loss->lipschitz(), config.mu, config.C,
                                 config.t_cap, config.domain.center);
    report.derived.k = plan.k;
    report.derived.phase_users = plan.n_alloc;
    for (const SGDConfig& phase : plan.phase_configs) {
      report.derived.phase_T.push_back(phase.T);
      report.derived.phase_eta.push_back(phase.eta);
      report.derived.phase_r.push_back(phase.r);
      report.derived.phase_tau.push_back(phase.tau);
      for (const std::string& w : phase.warnings) {
        if (report.warnings.empty() || report.warnings.back() != w) {
          report.warnings.push_back(w);
        }
      }
    }
    report.derived.phase_R_hat = plan.R_hat;
  } else {
    if (baseline_eta <= 0) {
      baseline_eta = config.domain.diameter() /
                     (loss->lipschitz() *
                      std::sqrt(static_cast<double>(config.baseline_T)));
    }
    report.derived.T = config.baseline_T;
    report.derived.eta = baseline_eta;
  }

  report.trials.resize(config.repetitions);
  ParallelFor(config.repetitions, [&](std::size_t i) {
    RngStream trial_rng = RngStream(config.seed, 0).substream(i);
    RngStream data_rng = trial_rng.substream(0);
    RngStream algo_rng = trial_rng.substream(1);
    if (config.unsafe_no_noise) {
      algo_rng.set_hook(std::make_shared<NoiseHook>(NoiseMode::kZeroed));
    }
    UserDataset data =
        sample_population(config.population, config.n, config.m, data_rng);

    const auto start = std::chrono::steady_clock::now();
    std::vector<double> theta_hat;
    bool halted = false;
    std::size_t steps = 0;
    if (config.algorithm == "dpsgd") {
      DpsgdResult result = dpsgd(data, *loss, sgd_cfg, algo_rng);
      theta_hat = std::move(result.theta_hat);
      halted = result.halted;
      steps = result.iterations_run;
    } else if (config.algorithm == "localized") {
      LocalizedResult result = localized_dpsgd(
          data, *loss, config.budget, config.C, config.t_cap, algo_rng);
      theta_hat = std::move(result.theta_hat);
      halted = result.any_phase_halted;
      for (const DpsgdResult& phase : result.phases) {
        steps += phase.iterations_run;
      }
    } else {
      theta_hat = nonprivate_sgd(data, *loss, config.baseline_T, baseline_eta,
                                 algo_rng);
      steps = config.baseline_T;
    }
    const auto end = std::chrono::steady_clock::now();

    PairedRisk excess = PairedExcess(*loss, theta_hat, theta_star, risk_items);
    TrialRow& row = report.trials[i];
    row.trial = i;
    row.excess_risk = excess.mean;
    row.risk_stderr = excess.stderr_;
    row.halted = halted;
    row.steps_run = steps;
    row.wall_ms =
        std::chrono::duration<double, std::milli>(end - start).count();
  });

  double sum = 0.0;
  double halted_count = 0.0;
  for (const TrialRow& row : report.trials) {
    sum += row.excess_risk;
    if (row.halted) halted_count += 1.0;
  }
  const double reps = static_cast<double>(config.repetitions);
  report.excess_mean = sum / reps;
  if (config.repetitions > 1) {
    double centered_sq = 0.0;
    for (const TrialRow& row : report.trials) {
      const double diff = row.excess_risk - report.excess_mean;
      centered_sq += diff * diff;
    }
    report.excess_stderr = std::sqrt(centered_sq / (reps - 1.0) / reps);
  }
  report.halted_fraction = halted_count / reps;
  return report;
}

std::vector<ExperimentReport> sweep_experiments(
    const ExperimentConfig& config) {
  auto size_axis = [](const std::vector<std::size_t>& grid,
                      std::size_t base) {
    return grid.empty() ? std::vector<std::size_t>{base} : grid;
  };
  const std::vector<std::size_t> ns = size_axis(config.grid_n, config.n);
  const std::vector<std::size_t> ms = size_axis(config.grid_m, config.m);
  const std::vector<std::size_t> ds = size_axis(config.grid_d, config.d);
  const std::vector<double> epss = config.grid_epsilon.empty()
                                       ? std::vector<double>{config.budget.epsilon}
                                       : config.grid_epsilon;

  std::vector<ExperimentReport> reports;
  for (std::size_t n : ns) {
    for (std::size_t m : ms) {
      for (std::size_t d : ds) {
        for (double eps : epss) {
          ExperimentConfig point = config;
          point.grid_n.clear();
          point.grid_m.clear();
          point.grid_d.clear();
          point.grid_epsilon.clear();
          point.n = n;
          point.m = m;
          point.d = d;
          point.budget = PrivacyBudget(eps, config.budget.delta);
          if (d != config.d) {
            if (!config.population_center_scalar ||
                !config.domain_center_scalar) {
              throw std::invalid_argument(
                  "config error: sweeping d requires scalar center_value "
                  "forms for population and domain centers");
            }
          }
          if (config.population_center_scalar) {
            point.population.center.assign(d, config.population_center_value);
          }
          if (config.domain_center_scalar) {
            point.domain.center.assign(d, config.domain_center_value);
          }
          reports.push_back(run_experiment(point));
        }
      }
    }
  }
  return reports;
}

std::string report_json(const ExperimentReport& report) {
  json j;
  j["aggregate"] = {{"excess_risk_mean", report.excess_mean},
                    {"excess_risk_stderr", report.excess_stderr},
                    {"halted_fraction", report.halted_fraction},
                    {"repetitions", report.config.repetitions}};
  j["config"] = ConfigJson(report.config, /*include_out=*/true);
  j["config_hash"] = report.config_hash;
  j["derived"] = DerivedJson(report.derived, report.config.algorithm);
  j["noise_mode"] = report.config.unsafe_no_noise ? "zeroed-unsafe" : "real";
  j["private"] = report.is_private;
  j["seed"] = report.config.seed;
  j["theta_star"] = report.theta_star_source;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string trial_row_json(const ExperimentReport& report,
                           const TrialRow& row) {
  json j;
  j["algorithm"] = report.config.algorithm;
  j["config_hash"] = report.config_hash;
  j["excess_risk"] = row.excess_risk;
  j["halted"] = row.halted;
  j["risk_stderr"] = row.risk_stderr;
  j["seed"] = report.config.seed;
  j["steps_run"] = row.steps_run;
  j["trial"] = row.trial;
  j["wall_ms"] = row.wall_ms;
  return j.dump();
}

std::string trials_jsonl(const ExperimentReport& report) {
  std::string out;
  for (const TrialRow& row : report.trials) {
    out += trial_row_json(report, row);
    out += "\n";
  }
  return out;
}

std::string summary_csv(const ExperimentReport& report) {
  std::string out =
      "config_hash,algorithm,loss,n,m,d,epsilon,delta,repetitions,"
      "excess_risk_mean,excess_risk_stderr,halted_fraction,T,eta,r,tau,"
      "noise_variance,private\n";
  const ExperimentConfig& c = report.config;
  out += report.config_hash + "," + c.algorithm + "," + c.loss_id + "," +
         std::to_string(c.n) + "," + std::to_string(c.m) + "," +
         std::to_string(c.d) + "," + FormatDouble(c.budget.epsilon) + "," +
         FormatDouble(c.budget.delta) + "," + std::to_string(c.repetitions) +
         "," + FormatDouble(report.excess_mean) + "," +
         FormatDouble(report.excess_stderr) + "," +
         FormatDouble(report.halted_fraction) + "," +
         std::to_string(report.derived.T) + "," +
         FormatDouble(report.derived.eta) + "," +
         FormatDouble(report.derived.r) + "," +
         FormatDouble(report.derived.tau) + "," +
         FormatDouble(report.derived.noise_variance) + "," +
         (report.is_private ? "true" : "false") + "\n";
  return out;
}

std::string sweep_csv(const std::vector<ExperimentReport>& reports) {
  std::string out =
      "n,m,d,epsilon,algorithm,excess_risk_mean,excess_risk_stderr,"
      "halted_fraction,T,eta,r,tau,config_hash\n";
  for (const ExperimentReport& report : reports) {
    const ExperimentConfig& c = report.config;
    out += std::to_string(c.n) + "," + std::to_string(c.m) + "," +
           std::to_string(c.d) + "," + FormatDouble(c.budget.epsilon) + "," +
           c.algorithm + "," + FormatDouble(report.excess_mean) + "," +
           FormatDouble(report.excess_stderr) + "," +
           FormatDouble(report.halted_fraction) + "," +
           std::to_string(report.derived.T) + "," +
           FormatDouble(report.derived.eta) + "," +
           FormatDouble(report.derived.r) + "," +
           FormatDouble(report.derived.tau) + "," + report.config_hash + "\n";
  }
  return out;
}

std::string check_report_json(const CheckReport& report) {
  json j;
  j["bound"] = report.bound;
  j["check"] = report.name;
  j["note"] = report.note;
  j["pass"] = report.pass;
  j["seed"] = report.seed;
  j["statistic"] = report.statistic;
  j["trials"] = report.trials;
  return j.dump();
}

void write_experiment_outputs(const ExperimentReport& report,
                              const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir + "/report.json") << report_json(report);
  std::ofstream(dir + "/trials.jsonl") << trials_jsonl(report);
  std::ofstream(dir + "/summary.csv") << summary_csv(report);
}

void write_sweep_outputs(const std::vector<ExperimentReport>& reports,
                         const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir + "/sweep.csv") << sweep_csv(reports);
  json all = json::array();
  for (const ExperimentReport& report : reports) {
    all.push_back(json::parse(report_json(report)));
  }
  std::ofstream(dir + "/sweep_report.json") << all.dump(2) << "\n";
}

}  // namespace userdp
