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
#include <stdexcept>

#include "userdp/concentrated_mean.h"
#include "userdp/optimizer.h"
#include "userdp/smoothing.h"

namespace userdp {
namespace {

double Norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double Distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double MedianPairwiseDistance(const std::vector<std::vector<double>>& points) {
  std::vector<double> distances;
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t k = j + 1; k < points.size(); ++k) {
      distances.push_back(Distance(points[j], points[k]));
    }
  }
  if (distances.empty()) return 1.0;
  std::nth_element(distances.begin(),
                   distances.begin() + distances.size() / 2, distances.end());
  double median = distances[distances.size() / 2];
  return median > 0 ? median : 1.0;
}

}  // namespace

CheckReport check_prob_sensitivity(
    const std::vector<std::vector<double>>& points,
    const std::vector<double>& replacement, std::size_t index, double tau) {
  if (index >= points.size()) {
    throw std::invalid_argument("check_prob_sensitivity: index out of range");
  }
  if (replacement.size() != points[0].size()) {
    throw std::invalid_argument(
        "check_prob_sensitivity: replacement dimension mismatch");
  }
  const std::size_t n = points.size();
  std::vector<std::vector<double>> neighbor = points;
  neighbor[index] = replacement;

  std::vector<int> f = outlier_scores(points, tau);
  std::vector<int> f_prime = outlier_scores(neighbor, tau);
  double l1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    l1 += std::abs(selection_probability(f[j], n) -
                   selection_probability(f_prime[j], n));
  }

  CheckReport report;
  report.name = "prob_sensitivity";
  report.statistic = l1;
  report.bound = 2.0;
  report.trials = 1;
  report.pass = l1 <= 2.0 + 1e-12;
  return report;
}

CoupleSample couple_bernoulli(const std::vector<double>& p,
                              const std::vector<double>& p_prime,
                              RngStream& rng) {
  if (p.size() != p_prime.size()) {
    throw std::invalid_argument("couple_bernoulli: length mismatch");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0 && p[i] <= 1) || !(p_prime[i] >= 0 && p_prime[i] <= 1)) {
      throw std::invalid_argument(
          "couple_bernoulli: probabilities must lie in [0, 1]");
    }
  }
  CoupleSample sample;
  sample.x.resize(p.size());
  sample.y.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    sample.l1 += std::abs(p[i] - p_prime[i]);
    double u = rng.uniform();
    sample.x[i] = u < p[i] ? 1 : 0;
    sample.y[i] = u < p_prime[i] ? 1 : 0;
    if (sample.x[i] != sample.y[i]) ++sample.hamming;
  }
  sample.l1_exceeds_two = sample.l1 > 2.0 + 1e-12;
  return sample;
}

CheckReport check_gradient_concentration(const LossOracle& loss,
                                         const PopulationSpec& spec,
                                         const std::vector<double>& theta,
                                         std::size_t n, std::size_t m,
                                         double r, double gamma,
                                         std::size_t dataset_draws,
                                         std::size_t pop_items,
                                         RngStream rng) {
  if (n == 0 || m == 0 || dataset_draws == 0 || pop_items == 0) {
    throw std::invalid_argument(
        "check_gradient_concentration: counts must be positive");
  }
  if (!(gamma > 0) || !(gamma < 1)) {
    throw std::invalid_argument(
        "check_gradient_concentration: gamma must lie in (0, 1)");
  }
  const std::size_t dim = theta.size();
  RngStream pop_rng = rng.substream(0);
  std::vector<double> population_grad(dim, 0.0);
  for (std::size_t i = 0; i < pop_items; ++i) {
    std::vector<double> z = sample_item(spec, pop_rng);
    std::vector<double> g = smoothed_grad_item(loss, theta, z, r, pop_rng);
    for (std::size_t c = 0; c < dim; ++c) population_grad[c] += g[c];
  }
  for (double& x : population_grad) x /= static_cast<double>(pop_items);

  const double radius = loss.lipschitz() *
                        std::log(static_cast<double>(n * dim) / gamma) /
                        std::sqrt(static_cast<double>(m));
  RngStream data_rng = rng.substream(1);
  long violations = 0;
  for (std::size_t t = 0; t < dataset_draws; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      UserItems items;
      items.reserve(m);
      for (std::size_t j = 0; j < m; ++j) {
        items.push_back(sample_item(spec, data_rng));
      }
      std::vector<double> avg =
          user_avg_smoothed_grad(loss, theta, items, r, data_rng);
      for (std::size_t c = 0; c < dim; ++c) avg[c] -= population_grad[c];
      if (Norm(avg) > radius) ++violations;
    }
  }

  const double total = static_cast<double>(dataset_draws * n);
  const double fraction = static_cast<double>(violations) / total;
  const double target = gamma / static_cast<double>(n);
  CheckReport report;
  report.name = "gradient_concentration";
  report.statistic = fraction;
  report.bound = target + 3.0 * std::sqrt(target * (1.0 - target) / total);
  report.trials = static_cast<long>(dataset_draws);
  report.seed = rng.seed();
  report.pass = fraction <= report.bound;
  report.note = "radius=" + std::to_string(radius);
  return report;
}

std::vector<CheckReport> check_smoothing(const LossOracle& loss,
                                         const PopulationSpec& spec, double r,
                                         std::size_t probes, RngStream rng) {
  if (probes < 100) {
    throw std::invalid_argument("check_smoothing: probes must be >= 100");
  }
  if (!(r > 0)) {
    throw std::invalid_argument("check_smoothing: r must be positive");
  }
  const Domain& domain = loss.domain();
  const std::size_t dim = domain.center.size();
  const double G = loss.lipschitz();
  std::vector<CheckReport> reports;

  auto random_theta = [&](RngStream& r_local) {
    std::vector<double> theta =
        sample_uniform_ball(domain.radius * 0.9, dim, r_local);
    for (std::size_t c = 0; c < dim; ++c) theta[c] += domain.center[c];
    return theta;
  };

  // Value sandwich: l <= l_smoothed <= l + G r, within 3 standard errors of
  // the Monte-Carlo estimate of the smoothed value.
  {
    RngStream probe_rng = rng.substream(0);
    const std::size_t sandwich_probes = std::max<std::size_t>(100, probes / 10);
    const std::size_t k = 2000;
    double worst_overshoot = -1e300;
    long violations = 0;
    for (std::size_t i = 0; i < sandwich_probes; ++i) {
      std::vector<double> theta = random_theta(probe_rng);
      std::vector<double> z = sample_item(spec, probe_rng);
      double exact = loss.value(theta, z);
      SmoothedValue smoothed = smoothed_value_mc(loss, theta, z, r, k, probe_rng);
      double slack = 3.0 * smoothed.stderr_ + 1e-12;
      double overshoot = std::max(exact - slack - smoothed.value,
                                  smoothed.value - (exact + G * r + slack));
      worst_overshoot = std::max(worst_overshoot, overshoot);
      if (overshoot > 0) ++violations;
    }
    CheckReport report;
    report.name = "smoothing_sandwich";
    report.statistic = worst_overshoot;
    report.bound = 0.0;
    report.trials = static_cast<long>(sandwich_probes);
    report.seed = rng.seed();
    report.pass = violations == 0;
    report.note = "violations=" + std::to_string(violations);
    reports.push_back(report);
  }

  // Lipschitz preservation: every smoothed gradient has norm <= G.
  {
    RngStream probe_rng = rng.substream(1);
    double worst = 0.0;
    for (std::size_t i = 0; i < probes; ++i) {
      std::vector<double> theta = random_theta(probe_rng);
      std::vector<double> z = sample_item(spec, probe_rng);
      worst = std::max(
          worst, Norm(smoothed_grad_item(loss, theta, z, r, probe_rng)));
    }
    CheckReport report;
    report.name = "smoothing_lipschitz";
    report.statistic = worst;
    report.bound = G;
    report.trials = static_cast<long>(probes);
    report.seed = rng.seed();
    report.pass = worst <= G + 1e-12;
    reports.push_back(report);
  }

  // Smoothness: MC-averaged gradients of the smoothed loss differ by at most
  // (G sqrt(d) / r) ||theta1 - theta2|| plus 3x the MC error on >= 99% of
  // probes.
  {
    RngStream probe_rng = rng.substream(2);
    const std::size_t k = 500;
    const double smooth_const = G * std::sqrt(static_cast<double>(dim)) / r;
    long passed = 0;
    auto mc_gradient = [&](const std::vector<double>& theta,
                           const std::vector<double>& z, double* se) {
      std::vector<double> mean(dim, 0.0);
      std::vector<double> sum_sq(dim, 0.0);
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<double> g = smoothed_grad_item(loss, theta, z, r, probe_rng);
        for (std::size_t c = 0; c < dim; ++c) {
          mean[c] += g[c];
          sum_sq[c] += g[c] * g[c];
        }
      }
      double var_total = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        mean[c] /= static_cast<double>(k);
        double var = std::max(0.0, sum_sq[c] / static_cast<double>(k) -
                                       mean[c] * mean[c]);
        var_total += var / static_cast<double>(k);
      }
      *se = std::sqrt(var_total);
      return mean;
    };
    for (std::size_t i = 0; i < probes; ++i) {
      std::vector<double> theta1 = random_theta(probe_rng);
      std::vector<double> theta2 = random_theta(probe_rng);
      std::vector<double> z = sample_item(spec, probe_rng);
      double se1 = 0.0;
      double se2 = 0.0;
      std::vector<double> g1 = mc_gradient(theta1, z, &se1);
      std::vector<double> g2 = mc_gradient(theta2, z, &se2);
      for (std::size_t c = 0; c < dim; ++c) g1[c] -= g2[c];
      double lhs = Norm(g1);
      std::vector<double> dtheta(dim);
      for (std::size_t c = 0; c < dim; ++c) dtheta[c] = theta1[c] - theta2[c];
      double rhs = smooth_const * Norm(dtheta) + 3.0 * (se1 + se2);
      if (lhs <= rhs) ++passed;
    }
    CheckReport report;
    report.name = "smoothing_smoothness";
    report.statistic =
        static_cast<double>(passed) / static_cast<double>(probes);
    report.bound = 0.99;
    report.trials = static_cast<long>(probes);
    report.seed = rng.seed();
    report.pass = report.statistic >= report.bound;
    reports.push_back(report);
  }
  return reports;
}

CheckReport finite_diff_check(const LossOracle& loss,
                              const std::vector<double>& theta,
                              const std::vector<double>& z, double h) {
  if (!(h > 0)) {
    throw std::invalid_argument("finite_diff_check: h must be positive");
  }
  const std::size_t dim = theta.size();
  std::vector<double> subgrad = loss.subgradient(theta, z);
  const double f0 = loss.value(theta, z);

  CheckReport report;
  report.name = "finite_diff";
  report.bound = 1e-4;
  report.trials = 1;

  std::vector<double> central(dim, 0.0);
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<double> plus = theta;
    std::vector<double> minus = theta;
    plus[c] += h;
    minus[c] -= h;
    const double f_plus = loss.value(plus, z);
    const double f_minus = loss.value(minus, z);
    const double forward = (f_plus - f0) / h;
    const double backward = (f0 - f_minus) / h;
    if (std::abs(forward - backward) >
        1e-3 * (std::abs(forward) + std::abs(backward) + 1.0)) {
      report.pass = true;
      report.statistic = 0.0;
      report.note = "kink detected at coordinate " + std::to_string(c) +
                    "; check skipped";
      return report;
    }
    central[c] = (f_plus - f_minus) / (2.0 * h);
  }

  double err = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    err += (central[c] - subgrad[c]) * (central[c] - subgrad[c]);
  }
  err = std::sqrt(err) / std::max(1.0, Norm(subgrad));
  report.statistic = err;
  report.pass = err <= report.bound;
  return report;
}

CheckReport empirical_noise_audit(const NoiseAuditParams& params,
                                  RngStream rng) {
  if (params.n == 0 || params.d == 0 || params.T == 0 ||
      params.collected == 0) {
    throw std::invalid_argument(
        "empirical_noise_audit: counts must be positive");
  }
  std::vector<double> point(params.d, 0.3);
  UserDataset data(params.n, 1, params.d);
  for (std::size_t i = 0; i < params.n; ++i) data.mutable_item(i, 0) = point;

  const auto identity_query = [](const UserItems& items) { return items[0]; };

  double sum_sq = 0.0;
  std::size_t collected = 0;
  std::size_t attempts = 0;
  const std::size_t max_attempts = 50 * params.collected;
  double variance_formula = 0.0;
  while (collected < params.collected && attempts < max_attempts) {
    MeanSession session = open_session(data, params.budget, params.tau,
                                       params.T, rng.substream(attempts));
    ++attempts;
    variance_formula = session.noise_variance();
    QueryResult result = session.query(identity_query);
    if (result.halted) continue;
    for (std::size_t c = 0; c < params.d; ++c) {
      const double centered = result.estimate[c] - point[c];
      sum_sq += centered * centered;
    }
    ++collected;
  }

  CheckReport report;
  report.name = "noise_variance_audit";
  report.trials = static_cast<long>(collected);
  report.seed = rng.seed();
  report.bound = variance_formula;
  if (collected == 0) {
    report.pass = false;
    report.note = "all sessions halted";
    return report;
  }
  report.statistic =
      sum_sq / static_cast<double>(collected * params.d);
  report.pass =
      std::abs(report.statistic / variance_formula - 1.0) <= 0.2;
  report.note = "attempts=" + std::to_string(attempts);
  return report;
}

namespace {

// Natural mixed instance generator for the sensitivity audit: iid Gaussian
// point sets and two-cluster point sets, tau scaled off the median pairwise
// distance, replacement either resampled or pushed far away.
struct SensitivityInstance {
  std::vector<std::vector<double>> points;
  std::vector<double> replacement;
  std::size_t index;
  double tau;
};

SensitivityInstance MakeSensitivityInstance(RngStream& rng) {
  SensitivityInstance inst;
  const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform() * 48.0);
  const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform() * 20.0);

  PopulationSpec base;
  base.center.assign(d, 0.0);
  if (rng.uniform() < 0.5) {
    base.stddev = std::exp(2.0 * rng.uniform() - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      inst.points.push_back(sample_item(base, rng));
    }
  } else {
    const std::size_t n1 =
        1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n - 1));
    const double separation = 0.5 + 3.5 * rng.uniform();
    PopulationSpec far = base;
    far.center[0] = separation;
    base.stddev = 0.25;
    far.stddev = 0.25;
    for (std::size_t i = 0; i < n; ++i) {
      inst.points.push_back(sample_item(i < n1 ? base : far, rng));
    }
  }

  const double median = MedianPairwiseDistance(inst.points);
  inst.tau = median * (0.3 + 1.2 * rng.uniform());
  inst.index = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
  if (inst.index >= n) inst.index = n - 1;
  if (rng.uniform() < 0.5) {
    PopulationSpec repl;
    repl.center.assign(d, 0.0);
    repl.stddev = 1.0;
    inst.replacement = sample_item(repl, rng);
  } else {
    inst.replacement = inst.points[inst.index];
    inst.replacement[0] += 50.0 * inst.tau;
  }
  return inst;
}

std::vector<CheckReport> SensitivitySuite(std::size_t trials,
                                          std::uint64_t seed) {
  RngStream rng(seed, 101);
  long violations = 0;
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    SensitivityInstance inst = MakeSensitivityInstance(rng);
    CheckReport single = check_prob_sensitivity(inst.points, inst.replacement,
                                                inst.index, inst.tau);
    worst = std::max(worst, single.statistic);
    if (!single.pass) ++violations;
  }
  CheckReport report;
  report.name = "sensitivity_l1_audit";
  report.statistic = worst;
  report.bound = 2.0;
  report.trials = static_cast<long>(trials);
  report.seed = seed;
  report.pass = violations == 0;
  report.note = "violations=" + std::to_string(violations) + " of " +
                std::to_string(trials) +
                "; random iid-gaussian and two-cluster instances";
  return {report};
}

std::vector<CheckReport> CouplingSuite(std::size_t draws, std::uint64_t seed) {
  std::vector<CheckReport> reports;
  const double zeta = 0.01;
  const double threshold = 2.0 + 8.0 * std::log(1.0 / zeta);

  {
    RngStream rng(seed, 201);
    const std::size_t n = 8;
    std::vector<double> p(n);
    std::vector<double> p_prime(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = 0.1 + 0.8 * rng.uniform();
      p_prime[i] = 0.1 + 0.8 * rng.uniform();
    }
    std::vector<long> count_x(n, 0);
    std::vector<long> count_y(n, 0);
    for (std::size_t t = 0; t < draws; ++t) {
      CoupleSample sample = couple_bernoulli(p, p_prime, rng);
      for (std::size_t i = 0; i < n; ++i) {
        count_x[i] += sample.x[i];
        count_y[i] += sample.y[i];
      }
    }
    double worst_z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double total = static_cast<double>(draws);
      const double sigma_x = std::sqrt(p[i] * (1 - p[i]) / total);
      const double sigma_y =
          std::sqrt(p_prime[i] * (1 - p_prime[i]) / total);
      worst_z = std::max(
          worst_z,
          std::abs(static_cast<double>(count_x[i]) / total - p[i]) / sigma_x);
      worst_z = std::max(
          worst_z, std::abs(static_cast<double>(count_y[i]) / total -
                            p_prime[i]) /
                       sigma_y);
    }
    CheckReport report;
    report.name = "coupling_marginals";
    report.statistic = worst_z;
    report.bound = 3.0;
    report.trials = static_cast<long>(draws);
    report.seed = seed;
    report.pass = worst_z <= report.bound;
    reports.push_back(report);
  }

  {
    RngStream rng(seed, 202);
    long exceed = 0;
    long total = 0;
    // Three shapes with ||p - p'||_1 = 2: many small gaps, few large gaps,
    // and very many tiny gaps.
    std::vector<std::pair<std::size_t, double>> shapes = {
        {40, 0.05}, {4, 0.5}, {200, 0.01}};
    for (const auto& [n, gap] : shapes) {
      std::vector<double> p(n);
      std::vector<double> p_prime(n);
      for (std::size_t i = 0; i < n; ++i) {
        p[i] = gap + (1.0 - gap) * 0.5;
        p_prime[i] = p[i] - gap;
      }
      for (std::size_t t = 0; t < draws / shapes.size(); ++t) {
        CoupleSample sample = couple_bernoulli(p, p_prime, rng);
        if (static_cast<double>(sample.hamming) > threshold) ++exceed;
        ++total;
      }
    }
    CheckReport report;
    report.name = "coupling_tail";
    report.statistic = static_cast<double>(exceed) / static_cast<double>(total);
    report.bound = zeta;
    report.trials = total;
    report.seed = seed;
    report.pass = report.statistic <= report.bound;
    report.note = "threshold=" + std::to_string(threshold);
    reports.push_back(report);
  }
  return reports;
}

std::vector<CheckReport> SmoothingSuite(std::size_t probes,
                                        std::uint64_t seed) {
  Domain domain{std::vector<double>(3, 0.0), 2.0};
  NormLoss loss(domain);
  PopulationSpec spec;
  spec.center = {0.5, -0.25, 0.1};
  return check_smoothing(loss, spec, 0.5, probes, RngStream(seed, 301));
}

std::vector<CheckReport> ConcentrationSuite(std::size_t dataset_draws,
                                            std::uint64_t seed) {
  Domain domain{std::vector<double>(5, 0.0), 4.0};
  NormLoss loss(domain);
  PopulationSpec spec;
  spec.center.assign(5, 0.0);
  std::vector<double> theta = {2.0, 1.0, -0.6, 0.4, 0.2};
  CheckReport report = check_gradient_concentration(
      loss, spec, theta, 20, 16, 0.1, 0.05, dataset_draws, 1000000,
      RngStream(seed, 401));
  return {report};
}

std::vector<CheckReport> NoiseSuite(std::size_t collected,
                                    std::uint64_t seed) {
  std::vector<CheckReport> reports;
  NoiseAuditParams spot;
  spot.n = 10;
  spot.d = 2;
  spot.tau = 1.0;
  spot.T = 1;
  spot.budget = PrivacyBudget(1.0, 0.1);
  spot.collected = collected;
  reports.push_back(empirical_noise_audit(spot, RngStream(seed, 501)));
  reports.back().name = "noise_variance_spot";

  NoiseAuditParams doubled = spot;
  doubled.n = 20;
  CheckReport at_2n = empirical_noise_audit(doubled, RngStream(seed, 502));
  CheckReport ratio;
  ratio.name = "noise_variance_quartering";
  ratio.statistic = reports.back().statistic / at_2n.statistic;
  ratio.bound = 4.0;
  ratio.trials = at_2n.trials;
  ratio.seed = seed;
  ratio.pass = std::abs(ratio.statistic / 4.0 - 1.0) <= 0.25;
  ratio.note = "empirical variance ratio at n vs 2n";
  reports.push_back(ratio);
  return reports;
}

std::vector<CheckReport> ScheduleSuite(std::uint64_t seed) {
  std::vector<CheckReport> reports;
  {
    PrivacyBudget budget(1.0, 0.1);
    SGDConfig cfg = default_config(10, 4, 5, budget, 1.0, 2.0, 1000000);
    const double td = static_cast<double>(cfg.T);
    double worst = std::abs(static_cast<double>(cfg.T) - 1690.0);
    worst = std::max(worst, std::abs(cfg.r * std::sqrt(td) -
                                     std::pow(5.0, 0.25) * cfg.R_hat) /
                                (std::pow(5.0, 0.25) * cfg.R_hat));
    const double log_mnd = std::log(4.0 * 10.0 * 5.0 / 0.1);
    const double t1 =
        std::sqrt(4.0) * 10.0 * 1.0 / (td * std::sqrt(5.0 * log_mnd * log_mnd));
    const double t2 = 1.0 / std::pow(td, 0.75);
    const double t3 = std::sqrt(40.0) / td;
    const double eta = (2.0 / 1.0) * std::min({t1, t2, t3});
    worst = std::max(worst, std::abs(cfg.eta - eta) / eta);
    CheckReport report;
    report.name = "schedule_identities";
    report.statistic = worst;
    report.bound = 1e-12;
    report.trials = 1;
    report.seed = seed;
    report.pass = worst <= report.bound;
    reports.push_back(report);
  }
  {
    PrivacyBudget budget(2.0, 1e-5);
    LocalizationSchedule plan = localization_schedule(
        64, 4, 5, budget, 1.0, 1.0, 4.0, 20000, std::vector<double>(5, 0.0));
    bool shape_ok = plan.k == 3 && plan.n_formula ==
                                       std::vector<std::size_t>{8, 16, 32};
    bool chain_ok = true;
    double prev_d = plan.D0;
    for (std::size_t j = 0; j < plan.k; ++j) {
      if (std::sqrt(prev_d * plan.E[j]) > plan.D[j] * (1.0 + 1e-12)) {
        chain_ok = false;
      }
      prev_d = plan.D[j];
    }
    CheckReport report;
    report.name = "localization_chain";
    report.statistic = plan.D.back() / (32.0 * plan.E.back());
    report.bound = 1.0;
    report.trials = 1;
    report.seed = seed;
    report.pass = shape_ok && chain_ok && report.statistic <= 1.0;
    report.note = "k=" + std::to_string(plan.k);
    reports.push_back(report);
  }
  return reports;
}

}  // namespace

std::vector<CheckReport> run_verify_suite(const std::string& suite,
                                          std::size_t trials,
                                          std::uint64_t seed) {
  auto pick = [&](std::size_t fallback) {
    return trials == 0 ? fallback : trials;
  };
  if (suite == "sensitivity") return SensitivitySuite(pick(1000), seed);
  if (suite == "coupling") return CouplingSuite(pick(100000), seed);
  if (suite == "smoothing") return SmoothingSuite(pick(1000), seed);
  if (suite == "concentration") return ConcentrationSuite(pick(1000), seed);
  if (suite == "noise") return NoiseSuite(pick(4000), seed);
  if (suite == "schedule") return ScheduleSuite(seed);
  if (suite == "all") {
    std::vector<CheckReport> all;
    for (const char* name : {"sensitivity", "coupling", "smoothing",
                             "concentration", "noise", "schedule"}) {
      std::vector<CheckReport> part = run_verify_suite(name, trials, seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown verify suite '" + suite + "'");
}

}  // namespace userdp
