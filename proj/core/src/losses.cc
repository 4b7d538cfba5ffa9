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

#include "userdp/losses.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace userdp {
namespace {

double Norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> Diff(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::vector<double> ProjectOntoBall(const std::vector<double>& center,
                                    double radius,
                                    const std::vector<double>& x) {
  std::vector<double> diff = Diff(x, center);
  double norm = Norm(diff);
  if (norm <= radius) return x;
  std::vector<double> out(center);
  double scale = radius / norm;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += diff[i] * scale;
  return out;
}

void FillStandardNormalsPlain(std::vector<double>& out, RngStream& rng) {
  for (std::size_t i = 0; i < out.size(); i += 2) {
    double u1 = rng.uniform();
    double u2 = rng.uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    out[i] = radius * std::cos(angle);
    if (i + 1 < out.size()) out[i + 1] = radius * std::sin(angle);
  }
}

}  // namespace

std::vector<double> project(const Domain& domain,
                            const std::vector<double>& theta) {
  if (theta.size() != domain.center.size()) {
    throw std::invalid_argument("project: dimension mismatch with domain");
  }
  return ProjectOntoBall(domain.center, domain.radius, theta);
}

NormLoss::NormLoss(Domain domain) : domain_(std::move(domain)) {
  if (domain_.center.empty() || !(domain_.radius > 0)) {
    throw std::invalid_argument("NormLoss: invalid domain");
  }
}

double NormLoss::value(const std::vector<double>& theta,
                       const std::vector<double>& z) const {
  return Norm(Diff(theta, z));
}

std::vector<double> NormLoss::subgradient(const std::vector<double>& theta,
                                          const std::vector<double>& z) const {
  std::vector<double> g = Diff(theta, z);
  double norm = Norm(g);
  if (norm == 0.0) return std::vector<double>(theta.size(), 0.0);
  for (double& x : g) x /= norm;
  return g;
}

QuadraticLoss::QuadraticLoss(Domain domain, double mu,
                             std::vector<double> z_center, double z_clip_radius)
    : domain_(std::move(domain)),
      mu_(mu),
      z_center_(std::move(z_center)),
      z_clip_radius_(z_clip_radius) {
  if (domain_.center.empty() || !(domain_.radius > 0)) {
    throw std::invalid_argument("QuadraticLoss: invalid domain");
  }
  if (!(mu > 0)) {
    throw std::invalid_argument("QuadraticLoss: mu must be positive");
  }
  if (z_center_.size() != domain_.center.size() || !(z_clip_radius_ >= 0) ||
      !std::isfinite(z_clip_radius_)) {
    throw std::invalid_argument("QuadraticLoss: invalid z clip spec");
  }
  // Gradient norm mu * ||theta - z|| over theta in the domain extended by
  // half its radius (the max_smoothing_radius contract) and clipped z.
  lipschitz_ = mu_ * (1.5 * domain_.radius +
                      Norm(Diff(domain_.center, z_center_)) + z_clip_radius_);
}

void QuadraticLoss::check_clipped(const std::vector<double>& z) const {
  if (Norm(Diff(z, z_center_)) > z_clip_radius_ * (1.0 + 1e-12) + 1e-12) {
    throw std::invalid_argument(
        "QuadraticLoss: sample outside the declared clip ball");
  }
}

double QuadraticLoss::value(const std::vector<double>& theta,
                            const std::vector<double>& z) const {
  check_clipped(z);
  double n = Norm(Diff(theta, z));
  return 0.5 * mu_ * n * n;
}

std::vector<double> QuadraticLoss::subgradient(
    const std::vector<double>& theta, const std::vector<double>& z) const {
  check_clipped(z);
  std::vector<double> g = Diff(theta, z);
  for (double& x : g) x *= mu_;
  return g;
}

std::vector<double> sample_item(const PopulationSpec& spec, RngStream& rng) {
  const std::size_t d = spec.dimension();
  if (d == 0) {
    throw std::invalid_argument("sample_item: population must have d >= 1");
  }
  if (spec.kind == "point_mass") return spec.center;
  if (spec.kind == "gaussian" || spec.kind == "clipped_gaussian") {
    std::vector<double> item(d, 0.0);
    FillStandardNormalsPlain(item, rng);
    for (std::size_t i = 0; i < d; ++i) {
      item[i] = spec.center[i] + spec.stddev * item[i];
    }
    if (spec.kind == "clipped_gaussian") {
      item = ProjectOntoBall(spec.center, spec.clip_radius, item);
    }
    return item;
  }
  throw std::invalid_argument("sample_item: unknown population kind '" +
                              spec.kind + "'");
}

UserDataset sample_population(const PopulationSpec& spec, std::size_t n,
                              std::size_t m, RngStream& rng) {
  UserDataset data(n, m, spec.dimension());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      data.mutable_item(i, j) = sample_item(spec, rng);
    }
  }
  return data;
}

std::vector<double> analytic_minimizer(const LossOracle& loss,
                                       const PopulationSpec& spec) {
  return project(loss.domain(), spec.center);
}

RiskEstimate population_risk(const LossOracle& loss,
                             const std::vector<double>& theta,
                             const PopulationSpec& spec, std::size_t k_fresh,
                             RngStream& rng) {
  if (k_fresh < 1000) {
    throw std::invalid_argument("population_risk: k_fresh must be >= 1000");
  }
  std::vector<std::vector<double>> items;
  items.reserve(k_fresh);
  for (std::size_t i = 0; i < k_fresh; ++i) {
    items.push_back(sample_item(spec, rng));
  }
  return risk_on_items(loss, theta, items);
}

RiskEstimate risk_on_items(const LossOracle& loss,
                           const std::vector<double>& theta,
                           const std::vector<std::vector<double>>& items) {
  if (items.empty()) {
    throw std::invalid_argument("risk_on_items: empty item set");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const std::vector<double>& z : items) {
    double v = loss.value(theta, z);
    sum += v;
    sum_sq += v * v;
  }
  const double k = static_cast<double>(items.size());
  RiskEstimate est;
  est.value = sum / k;
  double variance = std::max(0.0, sum_sq / k - est.value * est.value);
  est.stderr_ = std::sqrt(variance / k);
  return est;
}

std::unique_ptr<LossOracle> make_loss(const std::string& id, Domain domain,
                                      double mu,
                                      const std::vector<double>& z_center,
                                      double z_clip_radius) {
  if (id == "norm") {
    return std::make_unique<NormLoss>(std::move(domain));
  }
  if (id == "quadratic") {
    return std::make_unique<QuadraticLoss>(std::move(domain), mu, z_center,
                                           z_clip_radius);
  }
  throw std::invalid_argument("make_loss: unknown loss id '" + id + "'");
}

}  // namespace userdp
