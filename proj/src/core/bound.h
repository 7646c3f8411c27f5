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

#ifndef GREEDYSUITE_CORE_BOUND_H_
#define GREEDYSUITE_CORE_BOUND_H_

#include <cstdint>
#include <random>
#include <vector>

#include "core/greedy.h"

namespace greedysuite {

// Seeded random max-coverage instance: `units` line units, `candidates`
// tests ("t00", "t01", ...) each covering every unit independently with
// probability `density`.
CandidatePool RandomPool(std::mt19937_64& rng, int units, int candidates,
                         double density);

struct BoundExperimentConfig {
  std::uint64_t seed = 0;
  int instances = 200;
  int candidates = 12;
  int k = 4;
  int min_units = 4;
  int max_units = 40;
};

struct BoundInstance {
  int units = 0;
  double density = 0.0;
  double greedy_utility = 0.0;
  double optimal_utility = 0.0;
  double ratio = 1.0;
  bool bound_holds = true;
};

struct BoundExperimentReport {
  BoundExperimentConfig config;
  std::vector<BoundInstance> instances;
  int violations = 0;
  int greedy_below_optimal = 0;
  double min_ratio = 1.0;
  double mean_ratio = 1.0;
};

// Greedy vs exhaustive optimum on `instances` random pools. Universe sizes are
// uniform in [min_units, max_units]; densities uniform in [0.05, 0.5].
BoundExperimentReport RunBoundExperiment(const BoundExperimentConfig& config);

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_BOUND_H_
