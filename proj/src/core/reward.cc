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

#include "core/reward.h"

#include <cmath>

#include "core/error.h"

namespace greedysuite {

const char* ExecStatusName(ExecStatus status) {
  switch (status) {
    case ExecStatus::kPass: return "pass";
    case ExecStatus::kFail: return "fail";
    case ExecStatus::kRuntimeError: return "runtime_error";
    case ExecStatus::kSyntaxError: return "syntax_error";
    case ExecStatus::kTimeout: return "timeout";
  }
  return "runtime_error";
}

ExecStatus ParseExecStatus(const std::string& name) {
  if (name == "pass") return ExecStatus::kPass;
  if (name == "fail") return ExecStatus::kFail;
  if (name == "runtime_error") return ExecStatus::kRuntimeError;
  if (name == "syntax_error") return ExecStatus::kSyntaxError;
  if (name == "timeout") return ExecStatus::kTimeout;
  throw Error(ErrorCode::kInvalidArgument, "unknown status '" + name + "'");
}

bool IsValid(const ExecutionOutcome& outcome) {
  return outcome.status == ExecStatus::kPass && outcome.has_assertion;
}

double DeltaCov(int total_lines, int covered_before, int covered_after) {
  if (covered_before < 0 || covered_before > covered_after ||
      covered_after > total_lines) {
    throw Error(ErrorCode::kInvalidArgument,
                "delta_cov needs 0 <= L_S <= L_N <= L_A, got L_A=" +
                    std::to_string(total_lines) +
                    " L_S=" + std::to_string(covered_before) +
                    " L_N=" + std::to_string(covered_after));
  }
  if (total_lines == covered_before) return 0.0;
  return static_cast<double>(covered_after - covered_before) /
         static_cast<double>(total_lines - covered_before);
}

double StepReward(const SuiteState& state, const ExecutionOutcome& outcome) {
  state.covered.CheckSameUniverse(outcome.covered);
  if (!IsValid(outcome)) return 0.0;
  const int total = state.universe()->line_count();
  const int before = static_cast<int>(state.covered.count_lines());
  const int after =
      static_cast<int>((state.covered | outcome.covered).count_lines());
  return DeltaCov(total, before, after);
}

std::vector<double> GroupAdvantages(std::span<const double> rewards) {
  if (rewards.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "group advantages need G >= 2, got G=" +
                    std::to_string(rewards.size()));
  }
  double sum = 0.0;
  for (double r : rewards) sum += r;
  const double mean = sum / static_cast<double>(rewards.size());
  std::vector<double> out;
  out.reserve(rewards.size());
  for (double r : rewards) out.push_back(r - mean);
  return out;
}

RewardGroup BuildRewardGroup(const SuiteState& state,
                             std::span<const GroupAction> actions) {
  if (actions.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "reward group needs G >= 2 actions, got " +
                    std::to_string(actions.size()));
  }
  RewardGroup group;
  group.state = state;
  std::vector<double> rewards;
  for (const GroupAction& a : actions) {
    const double r = StepReward(state, a.outcome);
    group.samples.push_back({a.text, a.outcome, r});
    rewards.push_back(r);
  }
  group.advantages = GroupAdvantages(rewards);
  return group;
}

std::vector<TrainingRecord> EmitTrainingRecords(const RewardGroup& group,
                                                const std::string& task_id,
                                                const std::string& state_text,
                                                std::uint64_t seed) {
  std::vector<TrainingRecord> out;
  const std::string digest =
      group.state.universe() ? group.state.universe()->digest_hex() : "";
  for (std::size_t i = 0; i < group.samples.size(); ++i) {
    TrainingRecord rec;
    rec.task_id = task_id;
    rec.state_text = state_text;
    rec.action_text = group.samples[i].action_text;
    rec.reward = group.samples[i].reward;
    rec.advantage = group.advantages.at(i);
    rec.group_size = static_cast<int>(group.samples.size());
    rec.seed = seed;
    rec.universe_digest = digest;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace greedysuite
