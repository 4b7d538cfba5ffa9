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

#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "userdp/concentrated_mean.h"
#include "userdp/dataset.h"
#include "userdp/losses.h"
#include "userdp/optimizer.h"
#include "userdp/rng.h"
#include "userdp/smoothing.h"

namespace {

using userdp::Domain;
using userdp::NormLoss;
using userdp::PopulationSpec;
using userdp::PrivacyBudget;
using userdp::RngStream;
using userdp::UserDataset;

std::vector<std::vector<double>> MakePoints(std::size_t n, std::size_t d,
                                            double spread) {
  RngStream rng(7);
  std::vector<std::vector<double>> points(n, std::vector<double>(d));
  for (auto& p : points) {
    for (double& x : p) x = spread * (rng.uniform() - 0.5);
  }
  return points;
}

void BM_ConcentrationScore(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto points = MakePoints(n, 8, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(userdp::concentration_score(points, 2.0));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_ConcentrationScore)->Range(16, 1024)->Complexity();

void BM_MeanSessionQuery(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  PopulationSpec spec;
  spec.center = std::vector<double>(8, 0.25);
  spec.stddev = 0.05;
  RngStream data_rng(11);
  UserDataset data = userdp::sample_population(spec, n, 4, data_rng);
  auto query = [](const userdp::UserItems& items) {
    std::vector<double> mean(items[0].size(), 0.0);
    for (const auto& item : items) {
      for (std::size_t j = 0; j < item.size(); ++j) mean[j] += item[j];
    }
    for (double& v : mean) v /= static_cast<double>(items.size());
    return mean;
  };
  std::uint64_t session_id = 0;
  for (auto _ : state) {
    auto session = userdp::open_session(data, PrivacyBudget(1.0, 1e-5), 2.0,
                                        1, RngStream(3, session_id++));
    benchmark::DoNotOptimize(session.query(query));
  }
}
BENCHMARK(BM_MeanSessionQuery)->Range(16, 256);

void BM_UserAvgSmoothedGrad(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  Domain domain{std::vector<double>(16, 0.0), 2.0};
  NormLoss loss(domain);
  auto items = MakePoints(m, 16, 2.0);
  std::vector<double> theta(16, 0.1);
  RngStream rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        userdp::user_avg_smoothed_grad(loss, theta, items, 0.1, rng));
  }
}
BENCHMARK(BM_UserAvgSmoothedGrad)->Range(4, 256);

void BM_Dpsgd(benchmark::State& state) {
  PopulationSpec spec;
  spec.center = {0.5, -0.25, 0.1};
  RngStream data_rng(13);
  UserDataset data = userdp::sample_population(spec, 16, 4, data_rng);
  Domain domain{std::vector<double>(3, 0.0), 2.0};
  NormLoss loss(domain);
  auto config = userdp::default_config(16, 4, 3, PrivacyBudget(1.0, 1e-5),
                                       loss.lipschitz(), domain.diameter(),
                                       /*t_cap=*/64, domain.center);
  std::uint64_t run_id = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        userdp::dpsgd(data, loss, config, RngStream(17, run_id++)));
  }
}
BENCHMARK(BM_Dpsgd);

}  // namespace

BENCHMARK_MAIN();
