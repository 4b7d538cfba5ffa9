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

#ifndef USERDP_VERIFY_H_
#define USERDP_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "userdp/dataset.h"
#include "userdp/losses.h"
#include "userdp/rng.h"

namespace userdp {

// Outcome of one executable property check. statistic and bound share
// units; seed replays the identical statistic.
struct CheckReport {
  std::string name;
  bool pass = false;
  double statistic = 0.0;
  double bound = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
  std::string note;
};

// Exact l1 distance between the selection-probability vectors of a point
// set and its neighbor with points[index] replaced. Passes iff the distance
// is <= 2, the documented sensitivity bound. No randomness in the statistic.
CheckReport check_prob_sensitivity(
    const std::vector<std::vector<double>>& points,
    const std::vector<double>& replacement, std::size_t index, double tau);

struct CoupleSample {
  std::vector<int> x;
  std::vector<int> y;
  long hamming = 0;
  double l1 = 0.0;           // ||p - p'||_1, echoed for convenience
  bool l1_exceeds_two = false;
};

// Samples the maximal per-coordinate coupling of Ber(p) and Ber(p'): one
// shared uniform per coordinate, so marginals are exact and coordinates
// disagree with probability |p_i - p_i'|. Throws std::invalid_argument on
// probabilities outside [0, 1] or length mismatch.
CoupleSample couple_bernoulli(const std::vector<double>& p,
                              const std::vector<double>& p_prime,
                              RngStream& rng);

// Empirical audit of the per-user gradient concentration radius
// G ln(n d / gamma) / sqrt(m): estimates the population smoothed gradient
// from pop_items fresh items (>= 1e6 for the acceptance setting), then
// measures the fraction of users across `dataset_draws` datasets whose
// user-averaged smoothed gradient deviates by more than the radius. Passes
// iff the fraction is at most gamma/n plus 3 sigma sampling slack.
CheckReport check_gradient_concentration(const LossOracle& loss,
                                         const PopulationSpec& spec,
                                         const std::vector<double>& theta,
                                         std::size_t n, std::size_t m,
                                         double r, double gamma,
                                         std::size_t dataset_draws,
                                         std::size_t pop_items,
                                         RngStream rng);

// The three smoothing property probes: value sandwich
// l <= l_smoothed <= l + G r (within Monte-Carlo error), gradient norms
// <= G, and the G sqrt(d) / r smoothness bound on >= 99% of probes.
std::vector<CheckReport> check_smoothing(const LossOracle& loss,
                                         const PopulationSpec& spec, double r,
                                         std::size_t probes, RngStream rng);

// Central differences vs the subgradient at step h; passes at relative
// error <= 1e-4. Detects kinks by forward/backward disagreement and skips
// them with a note (vacuous pass).
CheckReport finite_diff_check(const LossOracle& loss,
                              const std::vector<double>& theta,
                              const std::vector<double>& z, double h);

struct NoiseAuditParams {
  std::size_t n = 10;
  std::size_t d = 2;
  double tau = 1.0;
  std::size_t T = 1;
  PrivacyBudget budget{1.0, 0.1};
  std::size_t collected = 10000;  // non-halted estimates to gather
};

// Runs single-query sessions on degenerate concentrated inputs (all points
// identical, so the full dataset is always selected on a surviving gate)
// and compares the empirical per-coordinate estimate variance with the
// session's noise_variance. Passes within +/-20%.
CheckReport empirical_noise_audit(const NoiseAuditParams& params,
                                  RngStream rng);

// Named suites for the CLI: "sensitivity", "coupling", "smoothing",
// "concentration", "noise", "schedule", or "all". trials == 0 keeps each
// suite's default count. Throws std::invalid_argument on unknown names.
std::vector<CheckReport> run_verify_suite(const std::string& suite,
                                          std::size_t trials,
                                          std::uint64_t seed);

}  // namespace userdp

#endif  // USERDP_VERIFY_H_
