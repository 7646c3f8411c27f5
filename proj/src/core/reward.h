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

#ifndef GREEDYSUITE_CORE_REWARD_H_
#define GREEDYSUITE_CORE_REWARD_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/coverage.h"
#include "core/mdp.h"

namespace greedysuite {

enum class ExecStatus { kPass, kFail, kRuntimeError, kSyntaxError, kTimeout };

const char* ExecStatusName(ExecStatus status);
ExecStatus ParseExecStatus(const std::string& name);

struct ExecutionOutcome {
  std::string test_id;
  ExecStatus status = ExecStatus::kPass;
  // Line and branch units of the task universe hit by this test.
  CoverageVector covered;
  bool has_assertion = true;
  int wall_time_ms = 0;
  std::string error_message;
};

// Valid(a): the test parsed, finished inside the time limit, passed, and
// asserted something.
bool IsValid(const ExecutionOutcome& outcome);

// Defaults carried into record metadata. The KL coefficient is consumed only
// by an external trainer.
inline constexpr int kDefaultGroupSize = 8;
inline constexpr double kDefaultKlBeta = 0.001;

// (covered_after - covered_before) / (total - covered_before); 0 when nothing
// is left to cover. Requires 0 <= covered_before <= covered_after <= total.
double DeltaCov(int total_lines, int covered_before, int covered_after);

// Normalised new-line gain gated by validity, in [0, 1].
double StepReward(const SuiteState& state, const ExecutionOutcome& outcome);

// A_i = r_i - mean(r). Requires at least two rewards.
std::vector<double> GroupAdvantages(std::span<const double> rewards);

struct GroupSample {
  std::string action_text;
  ExecutionOutcome outcome;
  double reward = 0.0;
};

struct RewardGroup {
  SuiteState state;
  std::vector<GroupSample> samples;
  std::vector<double> advantages;

  std::size_t size() const { return samples.size(); }
};

struct GroupAction {
  std::string text;
  ExecutionOutcome outcome;
};

RewardGroup BuildRewardGroup(const SuiteState& state,
                             std::span<const GroupAction> actions);

struct TrainingRecord {
  std::string task_id;
  std::string state_text;
  std::string action_text;
  double reward = 0.0;
  double advantage = 0.0;
  int group_size = 0;
  std::uint64_t seed = 0;
  std::string universe_digest;

  friend bool operator==(const TrainingRecord&,
                         const TrainingRecord&) = default;
};

std::vector<TrainingRecord> EmitTrainingRecords(const RewardGroup& group,
                                                const std::string& task_id,
                                                const std::string& state_text,
                                                std::uint64_t seed);

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_REWARD_H_
