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

#include "userdp/rng.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace userdp {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer; mixes a 64-bit value into a well-distributed one.
std::uint64_t Mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::mt19937_64 MakeEngine(std::uint64_t seed, std::uint64_t stream_id) {
  // Expand (seed, stream_id) into eight 32-bit words via a SplitMix64 walk
  // so that nearby seeds and stream ids still produce unrelated states.
  std::uint64_t state = seed ^ Mix(stream_id + kGolden);
  std::uint32_t words[8];
  for (int i = 0; i < 4; ++i) {
    state += kGolden;
    std::uint64_t w = Mix(state);
    words[2 * i] = static_cast<std::uint32_t>(w);
    words[2 * i + 1] = static_cast<std::uint32_t>(w >> 32);
  }
  std::seed_seq seq(words, words + 8);
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), gen_(MakeEngine(seed, stream_id)) {}

RngStream RngStream::substream(std::uint64_t child_id) const {
  RngStream child(seed_, Mix(stream_id_ + kGolden * (child_id + 1)));
  child.hook_ = hook_;
  return child;
}

double RngStream::uniform() {
  // 53 significant bits shifted into the open interval (0, 1).
  return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::noise_uniform() {
  if (hook_ != nullptr && hook_->mode() == NoiseMode::kRecordReplay) {
    return hook_->next_uniform([this] { return uniform(); });
  }
  return uniform();
}

double sample_laplace(double scale, RngStream& rng) {
  if (!(scale > 0)) {
    throw std::invalid_argument("sample_laplace: scale must be positive");
  }
  if (rng.zeroed()) return 0.0;
  double u = rng.noise_uniform() - 0.5;
  double sign = u < 0 ? -1.0 : 1.0;
  // Inverse CDF; log1p keeps precision for draws near the mode.
  return -scale * sign * std::log1p(-2.0 * std::abs(u));
}

namespace {

// Standard normals via Box-Muller; consumes exactly 2*ceil(d/2) uniforms.
void FillStandardNormals(std::vector<double>& out, RngStream& rng,
                         bool noise_path) {
  const std::size_t d = out.size();
  for (std::size_t i = 0; i < d; i += 2) {
    double u1 = noise_path ? rng.noise_uniform() : rng.uniform();
    double u2 = noise_path ? rng.noise_uniform() : rng.uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    out[i] = radius * std::cos(angle);
    if (i + 1 < d) out[i + 1] = radius * std::sin(angle);
  }
}

}  // namespace

std::vector<double> sample_gaussian_vector(double variance, std::size_t d,
                                           RngStream& rng) {
  if (!(variance > 0)) {
    throw std::invalid_argument(
        "sample_gaussian_vector: variance must be positive");
  }
  if (d == 0) {
    throw std::invalid_argument(
        "sample_gaussian_vector: dimension must be positive");
  }
  std::vector<double> out(d, 0.0);
  if (rng.zeroed()) return out;
  FillStandardNormals(out, rng, /*noise_path=*/true);
  double stddev = std::sqrt(variance);
  for (double& x : out) x *= stddev;
  return out;
}

std::vector<double> sample_uniform_ball(double radius, std::size_t d,
                                        RngStream& rng) {
  if (!(radius > 0)) {
    throw std::invalid_argument(
        "sample_uniform_ball: radius must be positive");
  }
  if (d == 0) {
    throw std::invalid_argument(
        "sample_uniform_ball: dimension must be positive");
  }
  std::vector<double> out(d, 0.0);
  if (rng.zeroed()) return out;
  FillStandardNormals(out, rng, /*noise_path=*/true);
  double norm = 0.0;
  for (double x : out) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    out.assign(d, 0.0);
    out[0] = 1.0;
    norm = 1.0;
  }
  double r = radius * std::pow(rng.noise_uniform(), 1.0 / static_cast<double>(d));
  for (double& x : out) x *= r / norm;
  return out;
}

}  // namespace userdp
