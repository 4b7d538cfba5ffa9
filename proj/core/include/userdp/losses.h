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

#ifndef USERDP_LOSSES_H_
#define USERDP_LOSSES_H_

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "userdp/dataset.h"
#include "userdp/rng.h"

namespace userdp {

// Euclidean ball domain. The schedule formulas use the diameter convention,
// so the "R" they consume is 2 * radius.
struct Domain {
  std::vector<double> center;
  double radius = 0.0;

  double diameter() const { return 2.0 * radius; }
};

// Euclidean projection onto the domain ball; identity on interior points.
std::vector<double> project(const Domain& domain,
                            const std::vector<double>& theta);

// Convex loss family l(theta; z): value, subgradient, Lipschitz constant G,
// ball domain, and strong convexity mu (0 if merely convex). Subgradients
// must have norm <= G on the domain extended by max_smoothing_radius().
class LossOracle {
 public:
  virtual ~LossOracle() = default;

  virtual double value(const std::vector<double>& theta,
                       const std::vector<double>& z) const = 0;
  virtual std::vector<double> subgradient(
      const std::vector<double>& theta, const std::vector<double>& z) const = 0;
  virtual double lipschitz() const = 0;
  virtual const Domain& domain() const = 0;
  virtual double strong_convexity() const = 0;
  virtual std::string id() const = 0;

  // Largest smoothing radius for which the declared G is valid on the
  // extended domain. Infinite for globally Lipschitz losses.
  virtual double max_smoothing_radius() const {
    return std::numeric_limits<double>::infinity();
  }
};

// ||theta - z||_2: 1-Lipschitz, convex, non-smooth at theta = z where the
// subgradient is taken as 0.
class NormLoss final : public LossOracle {
 public:
  explicit NormLoss(Domain domain);

  double value(const std::vector<double>& theta,
               const std::vector<double>& z) const override;
  std::vector<double> subgradient(const std::vector<double>& theta,
                                  const std::vector<double>& z) const override;
  double lipschitz() const override { return 1.0; }
  const Domain& domain() const override { return domain_; }
  double strong_convexity() const override { return 0.0; }
  std::string id() const override { return "norm"; }

 private:
  Domain domain_;
};

// (mu/2) ||theta - z||^2 with z required to lie within z_clip_radius of
// z_center; G is the gradient-norm bound over the half-radius-extended
// domain and the clipped z range. Throws on unclipped z.
class QuadraticLoss final : public LossOracle {
 public:
  QuadraticLoss(Domain domain, double mu, std::vector<double> z_center,
                double z_clip_radius);

  double value(const std::vector<double>& theta,
               const std::vector<double>& z) const override;
  std::vector<double> subgradient(const std::vector<double>& theta,
                                  const std::vector<double>& z) const override;
  double lipschitz() const override { return lipschitz_; }
  const Domain& domain() const override { return domain_; }
  double strong_convexity() const override { return mu_; }
  std::string id() const override { return "quadratic"; }
  double max_smoothing_radius() const override { return domain_.radius / 2.0; }

  const std::vector<double>& z_center() const { return z_center_; }
  double z_clip_radius() const { return z_clip_radius_; }

 private:
  void check_clipped(const std::vector<double>& z) const;

  Domain domain_;
  double mu_;
  std::vector<double> z_center_;
  double z_clip_radius_;
  double lipschitz_;
};

// Item distribution: i.i.d. draws across users and items. "gaussian" is
// N(center, stddev^2 I); "point_mass" is deterministic at center;
// "clipped_gaussian" projects gaussian draws onto the ball of clip_radius
// around center (symmetric, so the item mean stays center).
struct PopulationSpec {
  std::string kind = "gaussian";
  std::vector<double> center;
  double stddev = 1.0;
  double clip_radius = std::numeric_limits<double>::infinity();

  std::size_t dimension() const { return center.size(); }
};

// One item draw from the population. Uses the plain uniform path so that
// data generation is never affected by noise hooks.
std::vector<double> sample_item(const PopulationSpec& spec, RngStream& rng);

// n users x m items of i.i.d. draws.
UserDataset sample_population(const PopulationSpec& spec, std::size_t n,
                              std::size_t m, RngStream& rng);

// The population minimizer of both built-in losses constrained to the
// domain: the projection of the population center.
std::vector<double> analytic_minimizer(const LossOracle& loss,
                                       const PopulationSpec& spec);

struct RiskEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Monte-Carlo estimate of E_z l(theta; z) from k_fresh fresh draws.
// Requires k_fresh >= 1000.
RiskEstimate population_risk(const LossOracle& loss,
                             const std::vector<double>& theta,
                             const PopulationSpec& spec, std::size_t k_fresh,
                             RngStream& rng);

// Mean loss over a fixed item set (used for common-random-number risk
// comparisons across candidate points).
RiskEstimate risk_on_items(const LossOracle& loss,
                           const std::vector<double>& theta,
                           const std::vector<std::vector<double>>& items);

// Builds one of the built-in losses by id ("norm" or "quadratic").
std::unique_ptr<LossOracle> make_loss(const std::string& id, Domain domain,
                                      double mu,
                                      const std::vector<double>& z_center,
                                      double z_clip_radius);

}  // namespace userdp

#endif  // USERDP_LOSSES_H_
