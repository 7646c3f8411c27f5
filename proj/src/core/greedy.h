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

#ifndef GREEDYSUITE_CORE_GREEDY_H_
#define GREEDYSUITE_CORE_GREEDY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/coverage.h"

namespace greedysuite {

struct TestCandidate {
  std::string id;
  CoverageVector coverage;
  bool valid = true;
  std::optional<std::string> source;
};

// A finite pool of candidate tests over one universe. Ids are unique.
class CandidatePool {
 public:
  CandidatePool() = default;
  CandidatePool(UniversePtr universe, std::vector<TestCandidate> candidates);

  const UniversePtr& universe() const { return universe_; }
  const std::vector<TestCandidate>& candidates() const { return candidates_; }
  std::size_t size() const { return candidates_.size(); }
  bool empty() const { return candidates_.empty(); }

  // nullptr when absent.
  const TestCandidate* Find(const std::string& id) const;

  // Valid candidates sorted by id; the order every selector iterates in.
  std::vector<const TestCandidate*> ValidById() const;

  // Hash over universe digest, ids, validity and coverage bits.
  std::uint64_t digest() const { return digest_; }

 private:
  UniversePtr universe_;
  std::vector<TestCandidate> candidates_;
  std::uint64_t digest_ = 0;
};

// Identifies the (pool, K, weights) a result was computed for.
struct Provenance {
  std::uint64_t pool_digest = 0;
  int budget = 0;
  double weight_line = 1.0;
  double weight_branch = 1.0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct SelectionResult {
  std::vector<std::string> chosen;
  std::vector<double> gains;
  double final_utility = 0.0;
  int budget = 0;
  Provenance provenance;

  friend bool operator==(const SelectionResult&,
                         const SelectionResult&) = default;
};

struct OptimalResult {
  std::vector<std::string> chosen;  // sorted
  double optimal_utility = 0.0;
  Provenance provenance;
};

struct RatioReport {
  double greedy_utility = 0.0;
  double optimal_utility = 0.0;
  double ratio = 1.0;
  bool bound_holds = true;
};

// 1 - 1/e.
inline constexpr double kGreedyBound = 0.63212055882855767;

// Largest C(n, K) brute_force_optimal will enumerate.
inline constexpr std::uint64_t kBruteForceLimit = 2'000'000;

// Picks, at every step, the valid candidate with the largest marginal gain
// against the running union; ties (within kUtilityTolerance of the step's
// maximum) go to the lexicographically smallest id. Stops after K picks, when
// the valid pool is exhausted, or when the best gain is zero.
SelectionResult GreedySelect(const CandidatePool& pool, int k,
                             const UtilityConfig& cfg);

// Same contract and output as GreedySelect, using stale upper bounds in a
// max-heap that are re-evaluated before a candidate is committed.
SelectionResult LazyGreedySelect(const CandidatePool& pool, int k,
                                 const UtilityConfig& cfg);

// Exhaustive search over all subsets of at most K valid candidates. Ties go
// to the lexicographically smallest sorted id list. Throws kSizeGuard when
// C(n, min(K, n)) exceeds kBruteForceLimit.
OptimalResult BruteForceOptimal(const CandidatePool& pool, int k,
                                const UtilityConfig& cfg);

RatioReport VerifyRatio(const SelectionResult& greedy,
                        const OptimalResult& optimal);

std::uint64_t Binomial(std::uint64_t n, std::uint64_t k);

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_GREEDY_H_
