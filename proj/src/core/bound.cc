// Copyright 2026 The greedysuite Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/bound.h"

#include <algorithm>
#include <cstdio>

#include "core/error.h"
#include "core/random.h"

namespace greedysuite {

CandidatePool RandomPool(std::mt19937_64& rng, int units, int candidates,
                         double density) {
  UniversePtr universe = CoverageUniverse::Uniform(units);
  std::vector<TestCandidate> tests;
  for (int i = 0; i < candidates; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "t%02d", i);
    TestCandidate c{id, CoverageVector(universe), true, std::nullopt};
    for (int u = 0; u < units; ++u) {
      if (UniformUnit(rng) < density) c.coverage.set(u);
    }
    tests.push_back(std::move(c));
  }
  return CandidatePool(universe, std::move(tests));
}

BoundExperimentReport RunBoundExperiment(const BoundExperimentConfig& config) {
  if (config.instances < 1 || config.candidates < 1 || config.k < 1 ||
      config.min_units < 1 || config.max_units < config.min_units) {
    throw Error(ErrorCode::kInvalidArgument, "invalid bound experiment config");
  }
  BoundExperimentReport report;
  report.config = config;
  std::mt19937_64 rng(config.seed);
  const UtilityConfig cfg;
  double ratio_sum = 0.0;
  for (int i = 0; i < config.instances; ++i) {
    BoundInstance inst;
    inst.units = config.min_units +
                 static_cast<int>(UniformIndex(
                     rng, static_cast<std::uint64_t>(config.max_units -
                                                     config.min_units + 1)));
    inst.density = 0.05 + 0.45 * UniformUnit(rng);
    const CandidatePool pool =
        RandomPool(rng, inst.units, config.candidates, inst.density);
    const SelectionResult greedy = GreedySelect(pool, config.k, cfg);
    const OptimalResult opt = BruteForceOptimal(pool, config.k, cfg);
    const RatioReport ratio = VerifyRatio(greedy, opt);
    inst.greedy_utility = ratio.greedy_utility;
    inst.optimal_utility = ratio.optimal_utility;
    inst.ratio = ratio.ratio;
    inst.bound_holds = ratio.bound_holds;
    if (!inst.bound_holds) ++report.violations;
    if (inst.greedy_utility < inst.optimal_utility - kUtilityTolerance) {
      ++report.greedy_below_optimal;
    }
    report.min_ratio = std::min(report.min_ratio, inst.ratio);
    ratio_sum += inst.ratio;
    report.instances.push_back(inst);
  }
  report.mean_ratio = ratio_sum / config.instances;
  return report;
}

}  // namespace greedysuite
