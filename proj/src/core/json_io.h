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

#ifndef GREEDYSUITE_CORE_JSON_IO_H_
#define GREEDYSUITE_CORE_JSON_IO_H_

#include <string>
#include <vector>

#include "core/bound.h"
#include "core/greedy.h"
#include "core/mdp.h"
#include "core/orchestrator.h"
#include "core/pipeline.h"
#include "core/reward.h"
#include "json.hpp"

namespace greedysuite {

nlohmann::json ToJson(const SelectionResult& result);
nlohmann::json ToJson(const OptimalResult& result);
nlohmann::json ToJson(const RatioReport& report);
nlohmann::json ToJson(const Trajectory& trajectory);
nlohmann::json ToJson(const std::vector<CoverageAtK>& series);
nlohmann::json ToJson(const TrainingRecord& record);
nlohmann::json ToJson(const DatasetManifest& manifest);
nlohmann::json ToJson(const EpisodeReport& report);
nlohmann::json ToJson(const BenchmarkReport& report);
nlohmann::json ToJson(const BoundExperimentReport& report);

TrainingRecord TrainingRecordFromJson(const nlohmann::json& j);

// One JSON document per record, newline-terminated.
std::string ToJsonl(const std::vector<TrainingRecord>& records);
std::vector<TrainingRecord> TrainingRecordsFromJsonl(const std::string& text);

struct RecordedStep {
  std::string test_id;
  double gain = 0.0;
  std::vector<int> covered_after;
};

struct RecordedTrajectory {
  std::string task_id;
  std::vector<RecordedStep> steps;
  double final_line_coverage = 0.0;
};

RecordedTrajectory RecordedTrajectoryFromJson(const nlohmann::json& j);

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_JSON_IO_H_
