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

#include "core/mdp.h"

#include <algorithm>

#include "core/error.h"

namespace greedysuite {

bool SuiteState::Contains(const std::string& id) const {
  return std::find(selected_ids.begin(), selected_ids.end(), id) !=
         selected_ids.end();
}

std::vector<SuiteState> Trajectory::States() const {
  std::vector<SuiteState> out;
  if (transitions.empty()) {
    out.push_back(initial);
    return out;
  }
  out.reserve(transitions.size() + 1);
  out.push_back(transitions.front().state_before);
  for (const TransitionRecord& t : transitions) out.push_back(t.state_after);
  return out;
}

const SuiteState& Trajectory::FinalState() const {
  return transitions.empty() ? initial : transitions.back().state_after;
}

SuiteState InitialState(const UniversePtr& universe) {
  SuiteState s;
  s.covered = CoverageVector(universe);
  return s;
}

TransitionRecord Transition(const SuiteState& state,
                            const TestCandidate& candidate,
                            const UtilityConfig& cfg) {
  state.covered.CheckSameUniverse(candidate.coverage);
  if (state.Contains(candidate.id)) {
    throw Error(ErrorCode::kDuplicateId,
                "test '" + candidate.id + "' is already in the suite");
  }
  TransitionRecord rec;
  rec.state_before = state;
  rec.action_id = candidate.id;
  rec.action_valid = candidate.valid;
  rec.state_after = state;
  rec.state_after.step_index = state.step_index + 1;
  rec.state_after.selected_ids.push_back(candidate.id);
  if (candidate.valid) {
    rec.gain = MarginalGain(state.covered, candidate.coverage, cfg);
    rec.state_after.covered |= candidate.coverage;
  }
  return rec;
}

Trajectory Replay(const std::string& task_id,
                  std::span<const TestCandidate* const> ordered,
                  const UniversePtr& universe, const UtilityConfig& cfg) {
  Trajectory traj;
  traj.task_id = task_id;
  traj.universe = universe;
  traj.initial = InitialState(universe);
  SuiteState state = traj.initial;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const TestCandidate& c = *ordered[i];
    try {
      traj.transitions.push_back(Transition(state, c, cfg));
    } catch (const Error& e) {
      throw Error(e.code(), "replay step " + std::to_string(i) + " ('" + c.id +
                                "'): " + e.what());
    }
    state = traj.transitions.back().state_after;
  }
  traj.final_line_coverage = LineFraction(state.covered);
  return traj;
}

double LineFraction(const CoverageVector& covered) {
  const int total = covered.universe() ? covered.universe()->line_count() : 0;
  if (total == 0) return 0.0;
  return static_cast<double>(covered.count_lines()) / total;
}

std::optional<double> BranchFraction(const CoverageVector& covered) {
  const int total = covered.universe() ? covered.universe()->branch_count() : 0;
  if (total == 0) return std::nullopt;
  return static_cast<double>(covered.count_branches()) / total;
}

std::vector<CoverageAtK> CoverageAtKSeries(const Trajectory& trajectory) {
  std::vector<CoverageAtK> out;
  for (std::size_t i = 0; i < trajectory.transitions.size(); ++i) {
    const CoverageVector& c = trajectory.transitions[i].state_after.covered;
    out.push_back({static_cast<int>(i + 1), LineFraction(c), BranchFraction(c)});
  }
  return out;
}

}  // namespace greedysuite
