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

#include "userdp/above_threshold.h"

#include <cmath>
#include <stdexcept>

namespace userdp {

ATState at_init(double threshold, double epsilon_at, double sensitivity,
                RngStream& rng) {
  if (!(epsilon_at > 0)) {
    throw std::invalid_argument("at_init: epsilon_at must be positive");
  }
  if (!(sensitivity > 0)) {
    throw std::invalid_argument("at_init: sensitivity must be positive");
  }
  ATState state;
  state.epsilon_at = epsilon_at;
  state.sensitivity = sensitivity;
  state.noisy_threshold =
      threshold - sample_laplace(2.0 * sensitivity / epsilon_at, rng);
  state.halted = false;
  return state;
}

ATAnswer at_step(ATState& state, double query_value, RngStream& rng) {
  if (state.halted) {
    throw std::logic_error("at_step: instance already halted");
  }
  double nu =
      sample_laplace(4.0 * state.sensitivity / state.epsilon_at, rng);
  if (query_value + nu >= state.noisy_threshold) {
    return ATAnswer::kTop;
  }
  state.halted = true;
  return ATAnswer::kBottom;
}

double at_accuracy_width(std::size_t t, double gamma, double epsilon_at,
                         double sensitivity) {
  if (t == 0 || !(gamma > 0) || !(gamma < 1) || !(epsilon_at > 0) ||
      !(sensitivity > 0)) {
    throw std::invalid_argument("at_accuracy_width: invalid parameters");
  }
  return 8.0 * sensitivity * std::log(2.0 * static_cast<double>(t) / gamma) /
         epsilon_at;
}

}  // namespace userdp
