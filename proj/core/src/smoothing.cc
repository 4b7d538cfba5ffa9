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

#include "userdp/smoothing.h"

#include <cmath>
#include <stdexcept>

namespace userdp {
namespace {

void ValidateRadius(const LossOracle& loss, double r) {
  if (!(r >= 0)) {
    throw std::invalid_argument("smoothing radius must be non-negative");
  }
  if (r > loss.max_smoothing_radius()) {
    throw std::invalid_argument(
        "smoothing radius exceeds the loss's declared domain extension");
  }
}

std::vector<double> Perturb(const std::vector<double>& theta, double r,
                            RngStream& rng) {
  std::vector<double> y = sample_uniform_ball(r, theta.size(), rng);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += theta[i];
  return y;
}

}  // namespace

std::vector<double> smoothed_grad_item(const LossOracle& loss,
                                       const std::vector<double>& theta,
                                       const std::vector<double>& z, double r,
                                       RngStream& rng) {
  ValidateRadius(loss, r);
  if (r == 0.0) return loss.subgradient(theta, z);
  return loss.subgradient(Perturb(theta, r, rng), z);
}

std::vector<double> user_avg_smoothed_grad(const LossOracle& loss,
                                           const std::vector<double>& theta,
                                           const UserItems& items, double r,
                                           RngStream& rng) {
  ValidateRadius(loss, r);
  if (items.empty()) {
    throw std::invalid_argument("user_avg_smoothed_grad: empty user");
  }
  std::vector<double> avg(theta.size(), 0.0);
  for (const std::vector<double>& z : items) {
    std::vector<double> g = smoothed_grad_item(loss, theta, z, r, rng);
    for (std::size_t i = 0; i < avg.size(); ++i) avg[i] += g[i];
  }
  for (double& x : avg) x /= static_cast<double>(items.size());
  return avg;
}

SmoothedValue smoothed_value_mc(const LossOracle& loss,
                                const std::vector<double>& theta,
                                const std::vector<double>& z, double r,
                                std::size_t k, RngStream& rng) {
  ValidateRadius(loss, r);
  if (k == 0) {
    throw std::invalid_argument("smoothed_value_mc: k must be positive");
  }
  SmoothedValue out;
  if (r == 0.0) {
    out.value = loss.value(theta, z);
    out.stderr_ = 0.0;
    return out;
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double v = loss.value(Perturb(theta, r, rng), z);
    sum += v;
    sum_sq += v * v;
  }
  const double kd = static_cast<double>(k);
  out.value = sum / kd;
  double variance = std::max(0.0, sum_sq / kd - out.value * out.value);
  out.stderr_ = std::sqrt(variance / kd);
  return out;
}

}  // namespace userdp
