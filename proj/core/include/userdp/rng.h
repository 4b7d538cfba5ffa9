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

#ifndef USERDP_RNG_H_
#define USERDP_RNG_H_

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace userdp {

enum class NoiseMode { kReal, kZeroed, kRecordReplay };

// Test-time control over noise draws. In zeroed mode every noise sampler
// returns exactly 0 (vectors of zeros) without consuming randomness. In
// record-replay mode the raw uniforms behind noise draws are captured on
// first use and replayed after rewind(), so the same underlying draw can be
// re-expanded under different sampler parameters. Data generation and
// Bernoulli subsampling never pass through the hook; only noise does.
class NoiseHook {
 public:
  explicit NoiseHook(NoiseMode mode) : mode_(mode) {}

  NoiseMode mode() const { return mode_; }

  // Returns the next uniform for a noise draw: replays the tape when
  // possible, otherwise records a fresh draw. Only used in kRecordReplay.
  template <typename FreshFn>
  double next_uniform(FreshFn fresh) {
    if (position_ < tape_.size()) return tape_[position_++];
    double u = fresh();
    tape_.push_back(u);
    ++position_;
    return u;
  }

  // Restarts replay from the beginning of the tape.
  void rewind() { position_ = 0; }

  const std::vector<double>& tape() const { return tape_; }

 private:
  NoiseMode mode_;
  std::vector<double> tape_;
  std::size_t position_ = 0;
};

// Deterministic, splittable randomness source. Identical (seed, stream_id)
// pairs yield identical draw sequences; distinct stream_ids yield
// statistically independent streams. substream() derives a child stream
// whose id mixes the parent id and the child index, and which shares the
// parent's noise hook.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  RngStream substream(std::uint64_t child_id) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform();

  // Uniform for a noise draw; routes through the hook in record-replay mode.
  double noise_uniform();

  void set_hook(std::shared_ptr<NoiseHook> hook) { hook_ = std::move(hook); }
  const std::shared_ptr<NoiseHook>& hook() const { return hook_; }
  bool zeroed() const {
    return hook_ != nullptr && hook_->mode() == NoiseMode::kZeroed;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 gen_;
  std::shared_ptr<NoiseHook> hook_;
};

// Draw from the Laplace density (1/2b) exp(-|x|/b) with b = scale.
// Zeroed hook returns exactly 0. Throws std::invalid_argument on scale <= 0.
double sample_laplace(double scale, RngStream& rng);

// d independent zero-mean Gaussian coordinates with the given per-coordinate
// variance. Zeroed hook returns the zero vector. Throws std::invalid_argument
// on variance <= 0 or d == 0.
std::vector<double> sample_gaussian_vector(double variance, std::size_t d,
                                           RngStream& rng);

// Uniform draw from the d-dimensional Euclidean ball of the given radius
// centered at the origin: isotropic direction times radius * U^(1/d).
// Zeroed hook returns the zero vector. Throws std::invalid_argument on
// radius <= 0 or d == 0.
std::vector<double> sample_uniform_ball(double radius, std::size_t d,
                                        RngStream& rng);

}  // namespace userdp

#endif  // USERDP_RNG_H_
