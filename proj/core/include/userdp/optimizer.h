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

#ifndef USERDP_OPTIMIZER_H_
#define USERDP_OPTIMIZER_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "userdp/concentrated_mean.h"
#include "userdp/dataset.h"
#include "userdp/losses.h"
#include "userdp/rng.h"

namespace userdp {

// Default hard cap on iterations: the schedule's T grows like m^2 n^2 and is
// astronomically large at moderate scale, so desk runs cap it and record the
// cap in reports.
inline constexpr std::size_t kDefaultIterationCap = 200000;

struct SGDConfig {
  std::size_t T = 1;
  double eta = 0.0;
  double r = 0.0;
  double tau = 0.0;
  double R_hat = 0.0;
  PrivacyBudget budget;
  std::vector<double> theta0;
  std::size_t t_cap = kDefaultIterationCap;
  std::vector<std::string> warnings;
};

// Schedule for one run over n users of m items in dimension d with
// initial-distance bound R (the domain diameter unless a better bound is
// known):
//   T   = min(t_cap, ceil(m^2 n^2 + m n sqrt(d)))
//   r   = d^(1/4) R / sqrt(T)
//   eta = (R/G) min{ sqrt(m) n eps / (T sqrt(d ln^2(mnd/delta))),
//                    1/T^(3/4), sqrt(nm)/T }
//   tau = G ln(n d m e^eps T / delta) / sqrt(m)
// theta0 defaults to `center` (the origin when empty). Records a warning
// when n < ln(m d n / delta) / eps, the regime where the utility analysis
// degrades.
SGDConfig default_config(std::size_t n, std::size_t m, std::size_t d,
                         const PrivacyBudget& budget, double G, double R,
                         std::size_t t_cap = kDefaultIterationCap,
                         const std::vector<double>& center = {});

struct IterationStat {
  std::size_t t = 0;
  long selected_count = 0;
  double score = 0.0;
  double step_norm = 0.0;
};

struct DpsgdResult {
  std::vector<double> theta_hat;
  bool halted = false;
  std::size_t iterations_run = 0;
  std::vector<IterationStat> trace;
};

// Multi-pass projected SGD over the smoothed loss, with every gradient
// routed through one private mean-estimation session opened at budget
// (eps, delta / (2 T m n d)). Each iteration queries the user-averaged
// smoothed gradient at theta_t, then steps and projects. If the session's
// concentration gate trips, returns theta0 with halted = true; otherwise
// returns the average of theta_1..theta_T.
DpsgdResult dpsgd(const UserDataView& data, const LossOracle& loss,
                  const SGDConfig& config, RngStream rng);

// Phase plan for the strongly convex localization wrapper. n_formula are
// the textbook phase sizes floor(n / 2^(k+1-i)); n_alloc adds the leftover
// users to the last phase. E, D, R_hat follow the recursion
//   E_i = (4 C^2 G^2 / mu) (1/(n_i m) + d ln^2(n_i d m / delta)/(n_i^2 eps^2 m))
//   D_0 = 2 G^2 / mu,  D_i = 16 E_i (2 G^2 / (16 mu E_0))^(1/2^i)
//   R_hat_j = sqrt(2 D_{j-1} / mu)
// with E_0 evaluated at n_0 = floor(n / 2^(k+1)).
struct LocalizationSchedule {
  std::size_t k = 1;
  double C = 4.0;
  std::vector<std::size_t> n_formula;
  std::vector<std::size_t> n_alloc;
  double E0 = 0.0;
  double D0 = 0.0;
  std::vector<double> E;
  std::vector<double> D;
  std::vector<double> R_hat;
  std::vector<SGDConfig> phase_configs;
};

// Number of localization phases: max(1, ceil(log2 log2 (m n))).
std::size_t localization_phase_count(std::size_t n, std::size_t m);

// Computes the full phase plan. Throws std::invalid_argument when mu <= 0
// or n < 2^(k+1) (the error message lists the minimum n).
LocalizationSchedule localization_schedule(std::size_t n, std::size_t m,
                                           std::size_t d,
                                           const PrivacyBudget& budget,
                                           double G, double mu, double C,
                                           std::size_t t_cap,
                                           const std::vector<double>& center);

struct LocalizedResult {
  std::vector<double> theta_hat;
  LocalizationSchedule schedule;
  std::vector<DpsgdResult> phases;
  bool any_phase_halted = false;
};

// Runs dpsgd over k disjoint user blocks with geometrically shrinking
// initial-distance bounds, warm-starting each phase at the previous phase's
// output; returns the last phase's output.
LocalizedResult localized_dpsgd(const UserDataView& data,
                                const LossOracle& loss,
                                const PrivacyBudget& budget, double C,
                                std::size_t t_cap, RngStream rng);

using StepSize = std::function<double(std::size_t t)>;

// Non-private baseline: full-batch projected subgradient descent on the raw
// items with iterate averaging. step(t) is evaluated at t = 1..T.
std::vector<double> nonprivate_sgd(const UserDataView& data,
                                   const LossOracle& loss, std::size_t T,
                                   const StepSize& step, RngStream rng);

std::vector<double> nonprivate_sgd(const UserDataView& data,
                                   const LossOracle& loss, std::size_t T,
                                   double eta, RngStream rng);

}  // namespace userdp

#endif  // USERDP_OPTIMIZER_H_
