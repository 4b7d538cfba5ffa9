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

#ifndef USERDP_SMOOTHING_H_
#define USERDP_SMOOTHING_H_

#include <cstddef>
#include <vector>

#include "userdp/dataset.h"
#include "userdp/losses.h"
#include "userdp/rng.h"

namespace userdp {

// Stochastic gradient of the ball-convolved loss at theta for one item:
// subgradient(theta + y; z) with a fresh y uniform in the r-ball. r == 0
// degenerates to the raw subgradient. Throws std::invalid_argument when r
// is negative or exceeds the loss's declared extension radius.
std::vector<double> smoothed_grad_item(const LossOracle& loss,
                                       const std::vector<double>& theta,
                                       const std::vector<double>& z, double r,
                                       RngStream& rng);

// (1/m) sum_j subgradient(theta + y_j; z_j) with m independent fresh y_j.
std::vector<double> user_avg_smoothed_grad(const LossOracle& loss,
                                           const std::vector<double>& theta,
                                           const UserItems& items, double r,
                                           RngStream& rng);

struct SmoothedValue {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Monte-Carlo estimate of the ball-convolved loss value at theta for item z
// from k draws, with its standard error. r == 0 returns the exact value.
SmoothedValue smoothed_value_mc(const LossOracle& loss,
                                const std::vector<double>& theta,
                                const std::vector<double>& z, double r,
                                std::size_t k, RngStream& rng);

}  // namespace userdp

#endif  // USERDP_SMOOTHING_H_
