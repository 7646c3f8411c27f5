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

#ifndef GREEDYSUITE_CORE_ORCHESTRATOR_H_
#define GREEDYSUITE_CORE_ORCHESTRATOR_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/annotator.h"
#include "core/executor.h"
#include "core/generator.h"
#include "core/mdp.h"
#include "core/pipeline.h"
#include "core/reward.h"

namespace greedysuite {

enum class PolicyKind { kPoolGreedy, kPoolRandom, kExternal };

const char* PolicyKindName(PolicyKind kind);
PolicyKind ParsePolicyKind(const std::string& name);

inline constexpr int kDefaultBudget = 5;

struct Policy {
  PolicyKind kind = PolicyKind::kPoolGreedy;
  std::uint64_t seed = 0;
  UtilityConfig utility;
  AnnotationConfig annotation;

  // External policy only. The factories take precedence over the endpoint
  // strings; one client pair is created per episode.
  std::string generator_endpoint;
  int generator_timeout_ms = 30000;
  std::string executor;
  int exec_timeout_ms = kDefaultExecTimeoutMs;
  std::function<std::unique_ptr<GeneratorClient>()> generator_factory;
  std::function<std::unique_ptr<ExecutorClient>()> executor_factory;
};

struct EpisodeStep {
  int index = 0;
  std::string test_id;
  std::string test_text;
  ExecStatus status = ExecStatus::kPass;
  bool generated = true;  // false when the generator call itself failed
  bool parsed = true;
  bool valid = true;
  double gain = 0.0;  // utility gain of the transition
  double reward = 0.0;
  int line_units_before = 0;
  int line_units_after = 0;
  std::string diagnostic;
};

struct EpisodeReport {
  std::string task_id;
  PolicyKind policy = PolicyKind::kPoolGreedy;
  int budget = 0;
  std::vector<EpisodeStep> steps;
  double final_line_coverage = 0.0;
  std::optional<double> final_branch_coverage;
  std::vector<CoverageAtK> coverage_at_k;
  double syntactic_rate = 0.0;
  double execution_rate = 0.0;

  std::vector<std::string> chosen() const;
  // Status of every chosen test, keyed by id.
  std::map<std::string, ExecStatus> Statuses() const;
};

// perceive -> act -> execute -> update for up to K steps. Pool policies stop
// when no selectable candidate is left; a failed generation or execution is
// scored as an invalid step and still consumes budget. Throws kUnreachable
// when an external endpoint cannot be reached at all.
EpisodeReport RunEpisode(const TaskBundle& task, const Policy& policy,
                         int k = kDefaultBudget);

struct KillRecord {
  std::optional<std::string> task_id;  // absent: applies to every task
  std::string mutant_id;
  std::vector<std::string> killed_by;
};

struct SolutionOutcome {
  std::optional<std::string> task_id;
  std::string test_id;
  std::string solution_id;  // "canonical" for the reference solution
  ExecStatus status = ExecStatus::kPass;
};

inline constexpr char kCanonicalSolution[] = "canonical";

std::vector<KillRecord> ParseKillMatrix(const std::string& jsonl);
std::vector<SolutionOutcome> ParseSolutionOutcomes(const std::string& jsonl);

// True iff some test passes on the canonical solution and fails or errors on
// the buggy one. Both maps must hold the same test ids.
bool DetectBug(const std::map<std::string, ExecStatus>& canonical,
               const std::map<std::string, ExecStatus>& buggy);

struct TaskFailure {
  std::string task_id;
  std::string error;
};

struct BenchmarkReport {
  PolicyKind policy = PolicyKind::kPoolGreedy;
  int budget = 0;
  int total_tasks = 0;
  int completed_tasks = 0;
  std::vector<EpisodeReport> episodes;  // completed, in input order
  std::vector<TaskFailure> failures;
  double line_coverage = 0.0;
  std::optional<double> branch_coverage;
  double syntactic_rate = 0.0;
  double execution_rate = 0.0;
  std::optional<double> mutation_score;
  std::optional<double> bug_detection_rate;
  std::vector<std::string> warnings;
};

// Runs one episode per task in parallel and macro-averages over completed
// tasks. Per-task errors are reported, never propagated.
BenchmarkReport Evaluate(const std::vector<TaskBundle>& tasks,
                         const Policy& policy, int k,
                         const std::optional<std::vector<KillRecord>>& kills = {},
                         const std::optional<std::vector<SolutionOutcome>>&
                             solutions = {});

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_ORCHESTRATOR_H_
