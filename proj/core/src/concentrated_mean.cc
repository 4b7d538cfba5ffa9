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

#include "userdp/concentrated_mean.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace userdp {
namespace {

// The concentration score of a one-user swap moves by at most (2n-1)/n < 2.
constexpr double kScoreSensitivity = 2.0;

double SquaredDistance(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

void ValidatePoints(const std::vector<std::vector<double>>& points,
                    double tau) {
  if (points.empty()) {
    throw std::invalid_argument("points must be non-empty");
  }
  if (!(tau > 0)) {
    throw std::invalid_argument("tau must be positive");
  }
  const std::size_t d = points[0].size();
  if (d == 0) {
    throw std::invalid_argument("points must have positive dimension");
  }
  for (const std::vector<double>& p : points) {
    if (p.size() != d) {
      throw std::invalid_argument("points must share one dimension");
    }
  }
}

}  // namespace

double concentration_score(const std::vector<std::vector<double>>& points,
                           double tau) {
  ValidatePoints(points, tau);
  const std::size_t n = points.size();
  const double tau_sq = tau * tau;
  long close_pairs = 0;
  for (std::size_t j = 0; j < n; ++j) {
    ++close_pairs;  // self-pair
    for (std::size_t k = j + 1; k < n; ++k) {
      if (SquaredDistance(points[j], points[k]) <= tau_sq) close_pairs += 2;
    }
  }
  return static_cast<double>(close_pairs) / static_cast<double>(n);
}

std::vector<int> outlier_scores(const std::vector<std::vector<double>>& points,
                                double tau) {
  ValidatePoints(points, tau);
  const std::size_t n = points.size();
  const double radius_sq = 4.0 * tau * tau;  // (2 tau)^2
  std::vector<int> f(n, 1);                  // self counted
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (SquaredDistance(points[j], points[k]) <= radius_sq) {
        ++f[j];
        ++f[k];
      }
    }
  }
  return f;
}

double selection_probability(int f, std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("selection_probability: n must be positive");
  }
  if (f < 0 || static_cast<std::size_t>(f) > n) {
    throw std::invalid_argument(
        "selection_probability: f must lie in [0, n]");
  }
  const double nd = static_cast<double>(n);
  const double fd = static_cast<double>(f);
  if (fd < nd / 2.0) return 0.0;
  if (fd >= 2.0 * nd / 3.0) return 1.0;
  return (fd - nd / 2.0) / (nd / 6.0);
}

std::vector<std::size_t> subsample(const std::vector<double>& probabilities,
                                   RngStream& rng) {
  for (double p : probabilities) {
    if (!(p >= 0.0) || !(p <= 1.0)) {
      throw std::invalid_argument("subsample: probabilities must be in [0,1]");
    }
  }
  std::vector<std::size_t> selected;
  for (std::size_t j = 0; j < probabilities.size(); ++j) {
    if (rng.uniform() < probabilities[j]) selected.push_back(j);
  }
  return selected;
}

double session_noise_variance(std::size_t n, double tau, std::size_t t,
                              const PrivacyBudget& budget) {
  const double nd = static_cast<double>(n);
  const double td = static_cast<double>(t);
  const double eps = budget.epsilon;
  // ln(e^eps T / delta) = eps + ln(T/delta); ln(e^(eps/2)/delta) =
  // eps/2 + ln(1/delta). Expanded form avoids overflow for tiny delta.
  const double log_a = eps + std::log(td / budget.delta);
  const double log_b = eps / 2.0 + std::log(1.0 / budget.delta);
  return 8.0 * tau * tau * td * log_a * log_b / (nd * nd * eps * eps);
}

MeanSession::MeanSession(const UserDataView& data, const PrivacyBudget& budget,
                         double tau, std::size_t t_declared, RngStream rng)
    : data_(&data),
      budget_(budget),
      tau_(tau),
      t_declared_(t_declared),
      rng_(std::move(rng)) {
  if (!(tau > 0)) {
    throw std::invalid_argument("open_session: tau must be positive");
  }
  if (t_declared == 0) {
    throw std::invalid_argument("open_session: T must be at least 1");
  }
  const std::size_t n = data.n();
  noise_variance_ = session_noise_variance(n, tau, t_declared, budget);
  const double min_users =
      16.0 * std::log(static_cast<double>(t_declared) / budget.delta) /
      budget.epsilon;
  if (static_cast<double>(n) < min_users) {
    warnings_.push_back(
        "session utility precondition unmet: n = " + std::to_string(n) +
        " < 16 ln(T/delta)/epsilon = " + std::to_string(min_users));
  }
  at_ = at_init(4.0 * static_cast<double>(n) / 5.0, budget.epsilon / 2.0,
                kScoreSensitivity, rng_);
}

QueryResult MeanSession::query(const UserQuery& q) {
  QueryResult result;
  if (halted_) {
    result.halted = true;
    return result;
  }
  if (queries_used_ >= t_declared_) {
    throw std::logic_error("session_query: declared query budget exhausted");
  }
  ++queries_used_;

  const std::size_t n = data_->n();
  std::vector<std::vector<double>> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back(q(data_->user(i)));
    if (points.back().size() != points.front().size() ||
        points.back().empty()) {
      throw std::invalid_argument(
          "session_query: query values must share one positive dimension");
    }
  }
  const std::size_t dim = points.front().size();

  result.score = concentration_score(points, tau_);
  if (at_step(at_, result.score, rng_) == ATAnswer::kBottom) {
    halted_ = true;
    result.halted = true;
    return result;
  }

  std::vector<int> f = outlier_scores(points, tau_);
  std::vector<double> probabilities(n);
  for (std::size_t j = 0; j < n; ++j) {
    probabilities[j] = selection_probability(f[j], n);
  }
  std::vector<std::size_t> selected = subsample(probabilities, rng_);
  result.selected_count = static_cast<long>(selected.size());

  std::vector<double> mean(dim, 0.0);
  if (!selected.empty()) {
    for (std::size_t idx : selected) {
      for (std::size_t c = 0; c < dim; ++c) mean[c] += points[idx][c];
    }
    for (double& v : mean) v /= static_cast<double>(selected.size());
  }

  std::vector<double> noise = sample_gaussian_vector(noise_variance_, dim, rng_);
  result.estimate.resize(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    result.estimate[c] = mean[c] + noise[c];
  }
  return result;
}

MeanSession open_session(const UserDataView& data, const PrivacyBudget& budget,
                         double tau, std::size_t t_declared, RngStream rng) {
  return MeanSession(data, budget, tau, t_declared, std::move(rng));
}

}  // namespace userdp
