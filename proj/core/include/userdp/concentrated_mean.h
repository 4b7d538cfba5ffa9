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

#ifndef USERDP_CONCENTRATED_MEAN_H_
#define USERDP_CONCENTRATED_MEAN_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "userdp/above_threshold.h"
#include "userdp/dataset.h"
#include "userdp/rng.h"

namespace userdp {

// Normalized count of point pairs within distance tau, self-pairs included:
// (1/n) * sum_j sum_k 1(||p_j - p_k|| <= tau). Ranges in [1, n]. Throws
// std::invalid_argument on empty input or non-positive tau.
double concentration_score(const std::vector<std::vector<double>>& points,
                           double tau);

// f_j = #{k : ||p_j - p_k|| <= 2*tau}, k over all n points including j.
std::vector<int> outlier_scores(const std::vector<std::vector<double>>& points,
                                double tau);

// Piecewise selection probability: 0 if f < n/2; 1 if f >= 2n/3;
// (f - n/2) / (n/6) otherwise. Throws std::invalid_argument when f is
// outside [0, n].
double selection_probability(int f, std::size_t n);

// Independent Bernoulli inclusion per index; returns the selected indices in
// increasing order. Throws std::invalid_argument on probabilities outside
// [0, 1]. Uses the plain uniform path (not subject to noise hooks).
std::vector<std::size_t> subsample(const std::vector<double>& probabilities,
                                   RngStream& rng);

// One adaptive mean-estimation answer. halted == true means the
// concentration gate tripped and the session is permanently closed; the
// estimate is empty in that case. score and selected_count are diagnostics.
struct QueryResult {
  std::vector<double> estimate;
  long selected_count = 0;
  double score = 0.0;
  bool halted = false;
};

// Evaluates one user's items to a query vector.
using UserQuery =
    std::function<std::vector<double>(const UserItems& items)>;

// Adaptive private mean-estimation pipeline over a fixed dataset: a
// concentration gate (above-threshold at 4n/5 with budget epsilon/2 and
// query sensitivity 2), score-based outlier-removal subsampling, and a
// Gaussian-noised mean with per-coordinate variance
// 8 tau^2 T ln(e^eps T / delta) ln(e^(eps/2) / delta) / (n^2 eps^2).
class MeanSession {
 public:
  MeanSession(const UserDataView& data, const PrivacyBudget& budget,
              double tau, std::size_t t_declared, RngStream rng);

  // Answers one mean-estimation query. Returns the halt sentinel forever
  // once the gate has tripped; throws std::logic_error when the declared
  // query budget is exhausted.
  QueryResult query(const UserQuery& q);

  double noise_variance() const { return noise_variance_; }
  double tau() const { return tau_; }
  std::size_t t_declared() const { return t_declared_; }
  std::size_t queries_used() const { return queries_used_; }
  bool halted() const { return halted_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  const UserDataView* data_;
  PrivacyBudget budget_;
  double tau_;
  std::size_t t_declared_;
  std::size_t queries_used_ = 0;
  double noise_variance_;
  ATState at_;
  bool halted_ = false;
  RngStream rng_;
  std::vector<std::string> warnings_;
};

// Per-coordinate Gaussian variance of the session's noise line.
double session_noise_variance(std::size_t n, double tau, std::size_t t,
                              const PrivacyBudget& budget);

// Opens a session. Warns (does not fail) when n < 16 ln(T/delta) / epsilon,
// a proxy for the utility precondition whose gamma term is unknowable here.
// Throws std::invalid_argument on invalid tau or T.
MeanSession open_session(const UserDataView& data, const PrivacyBudget& budget,
                         double tau, std::size_t t_declared, RngStream rng);

}  // namespace userdp

#endif  // USERDP_CONCENTRATED_MEAN_H_
