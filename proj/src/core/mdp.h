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

#ifndef GREEDYSUITE_CORE_MDP_H_
#define GREEDYSUITE_CORE_MDP_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/coverage.h"
#include "core/greedy.h"

namespace greedysuite {

// Testing state: the tests chosen so far and the union of what they cover.
struct SuiteState {
  int step_index = 0;
  std::vector<std::string> selected_ids;
  CoverageVector covered;

  const UniversePtr& universe() const { return covered.universe(); }
  bool Contains(const std::string& id) const;

  friend bool operator==(const SuiteState&, const SuiteState&) = default;
};

struct TransitionRecord {
  SuiteState state_before;
  std::string action_id;
  bool action_valid = true;
  double gain = 0.0;
  SuiteState state_after;
};

struct Trajectory {
  std::string task_id;
  UniversePtr universe;
  std::vector<TransitionRecord> transitions;
  double final_line_coverage = 0.0;

  std::size_t length() const { return transitions.size(); }
  // s_0 .. s_L.
  std::vector<SuiteState> States() const;
  const SuiteState& FinalState() const;
  // Only meaningful for an empty trajectory; FinalState() falls back to it.
  SuiteState initial;
  std::vector<std::string> diagnostics;
};

struct CoverageAtK {
  int k = 0;
  double line_fraction = 0.0;
  // Absent when the universe has no branch units.
  std::optional<double> branch_fraction;
};

SuiteState InitialState(const UniversePtr& universe);

// Deterministic transition S_t = S_{t-1} + {a}. Invalid candidates are
// recorded with gain 0 and leave the covered set untouched. Throws
// kDuplicateId when the candidate was already selected and kUniverseMismatch
// for a foreign candidate.
TransitionRecord Transition(const SuiteState& state,
                            const TestCandidate& candidate,
                            const UtilityConfig& cfg = {});

// Folds Transition over `ordered` from the empty state. Errors are rethrown
// with the failing position and id prepended.
Trajectory Replay(const std::string& task_id,
                  std::span<const TestCandidate* const> ordered,
                  const UniversePtr& universe, const UtilityConfig& cfg = {});

// Fraction of line units covered; 0 for a universe without line units.
double LineFraction(const CoverageVector& covered);
std::optional<double> BranchFraction(const CoverageVector& covered);

std::vector<CoverageAtK> CoverageAtKSeries(const Trajectory& trajectory);

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_MDP_H_
