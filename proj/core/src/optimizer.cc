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

#include "userdp/optimizer.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "userdp/smoothing.h"

namespace userdp {
namespace {

double Norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

SGDConfig default_config(std::size_t n, std::size_t m, std::size_t d,
                         const PrivacyBudget& budget, double G, double R,
                         std::size_t t_cap,
                         const std::vector<double>& center) {
  if (n == 0 || m == 0 || d == 0) {
    throw std::invalid_argument("default_config: n, m, d must be positive");
  }
  if (!(G > 0) || !(R > 0) || t_cap == 0) {
    throw std::invalid_argument(
        "default_config: G, R, t_cap must be positive");
  }
  if (!center.empty() && center.size() != d) {
    throw std::invalid_argument("default_config: center dimension mismatch");
  }
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double dd = static_cast<double>(d);
  const double eps = budget.epsilon;
  const double delta = budget.delta;

  SGDConfig cfg{.budget = budget};
  cfg.t_cap = t_cap;
  const double t_formula = std::ceil(md * md * nd * nd + md * nd * std::sqrt(dd));
  cfg.T = static_cast<std::size_t>(
      std::min(static_cast<double>(t_cap), t_formula));
  const double td = static_cast<double>(cfg.T);

  cfg.R_hat = R;
  cfg.r = std::pow(dd, 0.25) * R / std::sqrt(td);

  const double log_mnd = std::log(md * nd * dd / delta);
  const double term_private =
      std::sqrt(md) * nd * eps / (td * std::sqrt(dd * log_mnd * log_mnd));
  const double term_smooth = 1.0 / std::pow(td, 0.75);
  const double term_stat = std::sqrt(nd * md) / td;
  cfg.eta = (R / G) * std::min({term_private, term_smooth, term_stat});

  // ln(n d m e^eps T / delta) expanded as eps + ln(n d m T / delta).
  cfg.tau = G * (eps + std::log(nd * dd * md * td / delta)) / std::sqrt(md);

  cfg.theta0 = center.empty() ? std::vector<double>(d, 0.0) : center;
  if (nd < std::log(md * dd * nd / delta) / eps) {
    cfg.warnings.push_back(
        "utility precondition unmet: n < ln(m d n / delta) / epsilon");
  }
  return cfg;
}

DpsgdResult dpsgd(const UserDataView& data, const LossOracle& loss,
                  const SGDConfig& config, RngStream rng) {
  const std::size_t dim = loss.domain().center.size();
  if (config.theta0.size() != dim) {
    throw std::invalid_argument("dpsgd: theta0 dimension mismatch with loss");
  }
  if (config.T == 0 || config.T > config.t_cap) {
    throw std::invalid_argument("dpsgd: need 1 <= T <= t_cap");
  }
  if (!(config.eta > 0) || !(config.tau > 0) || !(config.r >= 0)) {
    throw std::invalid_argument("dpsgd: eta, tau must be positive, r >= 0");
  }
  if (config.r > loss.max_smoothing_radius()) {
    throw std::invalid_argument(
        "dpsgd: smoothing radius exceeds the loss's domain extension");
  }

  const std::size_t n = data.n();
  const std::size_t m = data.m();
  const double session_delta =
      config.budget.delta /
      (2.0 * static_cast<double>(config.T) * static_cast<double>(m) *
       static_cast<double>(n) * static_cast<double>(dim));
  PrivacyBudget session_budget(config.budget.epsilon, session_delta);
  MeanSession session = open_session(data, session_budget, config.tau,
                                     config.T, rng.substream(0));
  RngStream smoothing_rng = rng.substream(1);

  DpsgdResult result;
  std::vector<double> theta = config.theta0;
  std::vector<double> sum(dim, 0.0);
  for (std::size_t t = 1; t <= config.T; ++t) {
    for (std::size_t c = 0; c < dim; ++c) sum[c] += theta[c];
    QueryResult answer = session.query([&](const UserItems& items) {
      return user_avg_smoothed_grad(loss, theta, items, config.r,
                                    smoothing_rng);
    });
    result.iterations_run = t;
    if (answer.halted) {
      result.theta_hat = config.theta0;
      result.halted = true;
      return result;
    }
    std::vector<double> next(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      next[c] = theta[c] - config.eta * answer.estimate[c];
    }
    next = project(loss.domain(), next);
    IterationStat stat;
    stat.t = t;
    stat.selected_count = answer.selected_count;
    stat.score = answer.score;
    std::vector<double> step(dim);
    for (std::size_t c = 0; c < dim; ++c) step[c] = next[c] - theta[c];
    stat.step_norm = Norm(step);
    result.trace.push_back(stat);
    theta = std::move(next);
  }
  for (std::size_t c = 0; c < dim; ++c) {
    sum[c] /= static_cast<double>(config.T);
  }
  result.theta_hat = std::move(sum);
  return result;
}

std::size_t localization_phase_count(std::size_t n, std::size_t m) {
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  if (mn <= 2.0) return 1;
  const double k = std::ceil(std::log2(std::log2(mn)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(k));
}

LocalizationSchedule localization_schedule(std::size_t n, std::size_t m,
                                           std::size_t d,
                                           const PrivacyBudget& budget,
                                           double G, double mu, double C,
                                           std::size_t t_cap,
                                           const std::vector<double>& center) {
  if (!(mu > 0)) {
    throw std::invalid_argument("localization_schedule: mu must be positive");
  }
  if (!(C > 2)) {
    throw std::invalid_argument("localization_schedule: C must exceed 2");
  }
  LocalizationSchedule plan;
  plan.k = localization_phase_count(n, m);
  plan.C = C;

  const std::size_t denom0 = std::size_t{1} << (plan.k + 1);  // 2^(k+1)
  if (n / denom0 == 0) {
    throw std::invalid_argument(
        "localized_dpsgd: need at least n = " + std::to_string(denom0) +
        " users for k = " + std::to_string(plan.k) + " phases");
  }

  const double eps = budget.epsilon;
  const double delta = budget.delta;
  const double md = static_cast<double>(m);
  const double dd = static_cast<double>(d);
  auto phase_error = [&](std::size_t ni) {
    const double nd = static_cast<double>(ni);
    const double log_term = std::log(nd * dd * md / delta);
    return (4.0 * C * C * G * G / mu) *
           (1.0 / (nd * md) +
            dd * log_term * log_term / (nd * nd * eps * eps * md));
  };

  std::size_t assigned = 0;
  for (std::size_t i = 1; i <= plan.k; ++i) {
    std::size_t ni = n / (std::size_t{1} << (plan.k + 1 - i));
    plan.n_formula.push_back(ni);
    assigned += ni;
  }
  plan.n_alloc = plan.n_formula;
  plan.n_alloc.back() += n - assigned;  // leftovers go to the last phase

  plan.E0 = phase_error(n / denom0);
  plan.D0 = 2.0 * G * G / mu;
  double prev_d = plan.D0;
  for (std::size_t i = 1; i <= plan.k; ++i) {
    const double ei = phase_error(plan.n_formula[i - 1]);
    const double di =
        16.0 * ei *
        std::pow(2.0 * G * G / (16.0 * mu * plan.E0),
                 1.0 / static_cast<double>(std::size_t{1} << i));
    plan.E.push_back(ei);
    plan.D.push_back(di);
    plan.R_hat.push_back(std::sqrt(2.0 * prev_d / mu));
    prev_d = di;
  }

  for (std::size_t j = 0; j < plan.k; ++j) {
    plan.phase_configs.push_back(default_config(
        plan.n_alloc[j], m, d, budget, G, plan.R_hat[j], t_cap, center));
  }
  return plan;
}

LocalizedResult localized_dpsgd(const UserDataView& data,
                                const LossOracle& loss,
                                const PrivacyBudget& budget, double C,
                                std::size_t t_cap, RngStream rng) {
  const double mu = loss.strong_convexity();
  if (!(mu > 0)) {
    throw std::invalid_argument(
        "localized_dpsgd: loss must be strongly convex");
  }
  LocalizedResult result;
  result.schedule = localization_schedule(
      data.n(), data.m(), loss.domain().center.size(), budget,
      loss.lipschitz(), mu, C, t_cap, loss.domain().center);

  std::vector<double> theta = loss.domain().center;
  std::size_t begin = 0;
  for (std::size_t j = 0; j < result.schedule.k; ++j) {
    UserSliceView phase_users(data, begin, result.schedule.n_alloc[j]);
    begin += result.schedule.n_alloc[j];
    SGDConfig cfg = result.schedule.phase_configs[j];
    cfg.theta0 = theta;
    DpsgdResult phase = dpsgd(phase_users, loss, cfg, rng.substream(j));
    result.any_phase_halted = result.any_phase_halted || phase.halted;
    theta = phase.theta_hat;
    result.phases.push_back(std::move(phase));
  }
  result.theta_hat = std::move(theta);
  return result;
}

std::vector<double> nonprivate_sgd(const UserDataView& data,
                                   const LossOracle& loss, std::size_t T,
                                   const StepSize& step, RngStream rng) {
  (void)rng;  // full-batch descent is deterministic; kept for interface parity
  if (T == 0) {
    throw std::invalid_argument("nonprivate_sgd: T must be positive");
  }
  const std::size_t dim = loss.domain().center.size();
  const double count = static_cast<double>(data.n() * data.m());
  std::vector<double> theta = loss.domain().center;
  std::vector<double> sum(dim, 0.0);
  for (std::size_t t = 1; t <= T; ++t) {
    for (std::size_t c = 0; c < dim; ++c) sum[c] += theta[c];
    std::vector<double> grad(dim, 0.0);
    for (std::size_t i = 0; i < data.n(); ++i) {
      for (const std::vector<double>& z : data.user(i)) {
        std::vector<double> g = loss.subgradient(theta, z);
        for (std::size_t c = 0; c < dim; ++c) grad[c] += g[c];
      }
    }
    const double eta = step(t);
    for (std::size_t c = 0; c < dim; ++c) {
      theta[c] -= eta * grad[c] / count;
    }
    theta = project(loss.domain(), theta);
  }
  for (std::size_t c = 0; c < dim; ++c) sum[c] /= static_cast<double>(T);
  return sum;
}

std::vector<double> nonprivate_sgd(const UserDataView& data,
                                   const LossOracle& loss, std::size_t T,
                                   double eta, RngStream rng) {
  if (!(eta > 0)) {
    throw std::invalid_argument("nonprivate_sgd: eta must be positive");
  }
  return nonprivate_sgd(
      data, loss, T, [eta](std::size_t) { return eta; }, std::move(rng));
}

}  // namespace userdp
