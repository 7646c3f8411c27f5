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

#ifndef GREEDYSUITE_CORE_PIPELINE_H_
#define GREEDYSUITE_CORE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "core/annotator.h"
#include "core/coverage.h"
#include "core/greedy.h"
#include "core/mdp.h"
#include "core/reward.h"

namespace greedysuite {

// One program under test with its universe and candidate pool, as read from a
// coverage-matrix JSONL file.
//
// Header keys: "universe", "line_count" (required), "task_id" and
// "focal_source" (optional). Candidate keys: "test_id", "covered_units",
// "valid" (required), "source", "status", "has_assertion" (optional).
//
// With a focal source, every line unit label must end in its 1-based source
// line ("file.py:12" or "12"). Without one, the source is synthesised as one
// line per line unit (its label), in id order.
struct TaskBundle {
  std::string task_id;
  std::string source_text;
  bool source_synthesized = false;
  UniversePtr universe;
  CandidatePool pool;
  std::map<std::string, ExecutionOutcome> outcomes;  // by test id
  std::map<int, int> unit_line;                      // line unit -> line
  std::unordered_map<int, int> line_unit;            // line -> line unit
  std::unordered_map<std::string, int> arc_unit;     // "a->b" -> branch unit

  const ExecutionOutcome& OutcomeFor(const std::string& test_id) const;
};

TaskBundle ParseCandidates(std::string_view jsonl,
                           const std::string& default_task_id);
// Task id defaults to the file stem.
TaskBundle IngestCandidates(const std::filesystem::path& path);

// Source of `bundle` with every uncovered executable line marked.
std::string StateText(const TaskBundle& bundle, const CoverageVector& covered,
                      const AnnotationConfig& cfg = {});

// Greedy ordering of the full valid pool: the greedy prefix while gains are
// positive, then the rest in id order with gain 0, replayed step by step.
Trajectory GreedyOrder(const TaskBundle& bundle, const UtilityConfig& cfg = {});

inline constexpr double kDefaultCoverageThreshold = 0.90;

// Keep iff the trajectory is nonempty and final line coverage is strictly
// above `threshold`.
bool FilterTrajectory(const Trajectory& trajectory,
                      double threshold = kDefaultCoverageThreshold);

struct StateSnapshot {
  SuiteState state;
  std::string greedy_action_id;
};

// States s_0 .. s_{L-1}, each labelled with the action taken from it.
std::vector<StateSnapshot> Decompose(const Trajectory& trajectory);

struct DatasetManifest {
  int kept_tasks = 0;
  int dropped_tasks = 0;
  int total_states = 0;
  double threshold = kDefaultCoverageThreshold;
  std::uint64_t seed = 0;
  std::vector<std::string> kept_task_ids;
  std::vector<std::string> dropped_task_ids;
};

// greedy order -> filter -> decompose for every bundle (in parallel), then
// writes one JSONL record per snapshot sorted by (task_id, step).
DatasetManifest BuildDataset(const std::vector<TaskBundle>& bundles,
                             double threshold, std::uint64_t seed,
                             const std::filesystem::path& out_path,
                             const AnnotationConfig& annotation = {});

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_PIPELINE_H_
