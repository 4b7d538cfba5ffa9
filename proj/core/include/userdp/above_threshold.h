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

#ifndef USERDP_ABOVE_THRESHOLD_H_
#define USERDP_ABOVE_THRESHOLD_H_

#include "userdp/rng.h"

namespace userdp {

enum class ATAnswer { kTop, kBottom };

// Streaming above-threshold state. The threshold is privatized exactly once
// at initialization with Laplace scale 2*sensitivity/epsilon_at; each query
// gets fresh Laplace noise of scale 4*sensitivity/epsilon_at. The instance
// halts permanently after its first below-threshold answer.
struct ATState {
  double noisy_threshold = 0.0;
  double epsilon_at = 0.0;
  double sensitivity = 1.0;
  bool halted = false;
};

// Initializes the state with noisy_threshold = threshold - Lap(2s/eps_at).
// Throws std::invalid_argument on non-positive epsilon_at or sensitivity.
ATState at_init(double threshold, double epsilon_at, double sensitivity,
                RngStream& rng);

// Answers one query: draws nu ~ Lap(4s/eps_at) and returns kTop if
// query_value + nu >= noisy_threshold, otherwise returns kBottom and halts
// the state. Throws std::logic_error when stepping a halted state.
ATAnswer at_step(ATState& state, double query_value, RngStream& rng);

// Accuracy width of the mechanism: with probability at least 1 - gamma over
// a stream of t queries, every kTop answer has true value >= threshold -
// alpha and the halting answer (if any) has true value <= threshold + alpha,
// with alpha = 8 * sensitivity * ln(2t/gamma) / epsilon_at.
double at_accuracy_width(std::size_t t, double gamma, double epsilon_at,
                         double sensitivity);

}  // namespace userdp

#endif  // USERDP_ABOVE_THRESHOLD_H_
