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

#include "core/json_io.h"

#include <sstream>

#include "core/error.h"

namespace greedysuite {

using nlohmann::json;

namespace {

json ProvenanceJson(const Provenance& p) {
  return {{"pool_digest", HexDigest(p.pool_digest)},
          {"budget", p.budget},
          {"weights", {{"line", p.weight_line}, {"branch", p.weight_branch}}}};
}

json OptionalNumber(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json ToJson(const SelectionResult& result) {
  return {{"chosen", result.chosen},
          {"gains", result.gains},
          {"final_utility", result.final_utility},
          {"budget", result.budget},
          {"provenance", ProvenanceJson(result.provenance)}};
}

json ToJson(const OptimalResult& result) {
  return {{"chosen", result.chosen},
          {"optimal_utility", result.optimal_utility},
          {"budget", result.provenance.budget},
          {"provenance", ProvenanceJson(result.provenance)}};
}

json ToJson(const RatioReport& report) {
  return {{"greedy_utility", report.greedy_utility},
          {"optimal_utility", report.optimal_utility},
          {"ratio", report.ratio},
          {"bound", kGreedyBound},
          {"bound_holds", report.bound_holds}};
}

json ToJson(const Trajectory& trajectory) {
  json steps = json::array();
  for (const TransitionRecord& t : trajectory.transitions) {
    steps.push_back({{"test_id", t.action_id},
                     {"gain", t.gain},
                     {"covered_after", t.state_after.covered.ids()}});
  }
  json j = {{"task_id", trajectory.task_id},
            {"steps", steps},
            {"final_line_coverage", trajectory.final_line_coverage}};
  if (!trajectory.diagnostics.empty()) j["diagnostics"] = trajectory.diagnostics;
  return j;
}

json ToJson(const std::vector<CoverageAtK>& series) {
  json out = json::array();
  for (const CoverageAtK& p : series) {
    out.push_back({{"k", p.k},
                   {"line_fraction", p.line_fraction},
                   {"branch_fraction", OptionalNumber(p.branch_fraction)}});
  }
  return out;
}

json ToJson(const TrainingRecord& record) {
  return {{"task_id", record.task_id},
          {"state_text", record.state_text},
          {"action_text", record.action_text},
          {"reward", record.reward},
          {"advantage", record.advantage},
          {"group_size", record.group_size},
          {"seed", record.seed},
          {"universe_digest", record.universe_digest}};
}

TrainingRecord TrainingRecordFromJson(const json& j) {
  TrainingRecord r;
  r.task_id = j.at("task_id").get<std::string>();
  r.state_text = j.at("state_text").get<std::string>();
  r.action_text = j.at("action_text").get<std::string>();
  r.reward = j.at("reward").get<double>();
  r.advantage = j.at("advantage").get<double>();
  r.group_size = j.at("group_size").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.universe_digest = j.at("universe_digest").get<std::string>();
  return r;
}

std::string ToJsonl(const std::vector<TrainingRecord>& records) {
  std::string out;
  for (const TrainingRecord& r : records) out += ToJson(r).dump() + "\n";
  return out;
}

std::vector<TrainingRecord> TrainingRecordsFromJsonl(const std::string& text) {
  std::vector<TrainingRecord> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(TrainingRecordFromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(n, e.what());
    }
  }
  return out;
}

json ToJson(const DatasetManifest& manifest) {
  return {{"kept_tasks", manifest.kept_tasks},
          {"dropped_tasks", manifest.dropped_tasks},
          {"total_states", manifest.total_states},
          {"threshold", manifest.threshold},
          {"seed", manifest.seed},
          {"kept_task_ids", manifest.kept_task_ids},
          {"dropped_task_ids", manifest.dropped_task_ids}};
}

json ToJson(const EpisodeReport& report) {
  json steps = json::array();
  for (const EpisodeStep& s : report.steps) {
    json step = {{"step", s.index},
                 {"test_id", s.test_id},
                 {"status", ExecStatusName(s.status)},
                 {"generated", s.generated},
                 {"parsed", s.parsed},
                 {"valid", s.valid},
                 {"gain", s.gain},
                 {"reward", s.reward},
                 {"line_units_before", s.line_units_before},
                 {"line_units_after", s.line_units_after}};
    if (!s.test_text.empty()) step["test_text"] = s.test_text;
    if (!s.diagnostic.empty()) step["diagnostic"] = s.diagnostic;
    steps.push_back(std::move(step));
  }
  return {{"task_id", report.task_id},
          {"policy", PolicyKindName(report.policy)},
          {"budget", report.budget},
          {"chosen", report.chosen()},
          {"steps", steps},
          {"final_line_coverage", report.final_line_coverage},
          {"final_branch_coverage", OptionalNumber(report.final_branch_coverage)},
          {"coverage_at_k", ToJson(report.coverage_at_k)},
          {"syntactic_rate", report.syntactic_rate},
          {"execution_rate", report.execution_rate}};
}

json ToJson(const BenchmarkReport& report) {
  json episodes = json::array();
  for (const EpisodeReport& e : report.episodes) episodes.push_back(ToJson(e));
  json failures = json::array();
  for (const TaskFailure& f : report.failures) {
    failures.push_back({{"task_id", f.task_id}, {"error", f.error}});
  }
  json j = {{"policy", PolicyKindName(report.policy)},
            {"budget", report.budget},
            {"total_tasks", report.total_tasks},
            {"completed_tasks", report.completed_tasks},
            {"line_coverage", report.line_coverage},
            {"branch_coverage", OptionalNumber(report.branch_coverage)},
            {"syntactic_rate", report.syntactic_rate},
            {"execution_rate", report.execution_rate},
            {"episodes", episodes},
            {"failures", failures},
            {"warnings", report.warnings}};
  // Absent rather than zero when no data was supplied.
  if (report.mutation_score) j["mutation_score"] = *report.mutation_score;
  if (report.bug_detection_rate) {
    j["bug_detection_rate"] = *report.bug_detection_rate;
  }
  return j;
}

json ToJson(const BoundExperimentReport& report) {
  json instances = json::array();
  for (const BoundInstance& i : report.instances) {
    instances.push_back({{"units", i.units},
                         {"density", i.density},
                         {"greedy_utility", i.greedy_utility},
                         {"optimal_utility", i.optimal_utility},
                         {"ratio", i.ratio},
                         {"bound_holds", i.bound_holds}});
  }
  const auto& c = report.config;
  return {{"config",
           {{"seed", c.seed},
            {"instances", c.instances},
            {"candidates", c.candidates},
            {"k", c.k},
            {"min_units", c.min_units},
            {"max_units", c.max_units}}},
          {"bound", kGreedyBound},
          {"violations", report.violations},
          {"greedy_below_optimal", report.greedy_below_optimal},
          {"min_ratio", report.min_ratio},
          {"mean_ratio", report.mean_ratio},
          {"instances", instances}};
}

RecordedTrajectory RecordedTrajectoryFromJson(const json& j) {
  try {
    RecordedTrajectory t;
    t.task_id = j.at("task_id").get<std::string>();
    for (const json& s : j.at("steps")) {
      t.steps.push_back({s.at("test_id").get<std::string>(),
                         s.at("gain").get<double>(),
                         s.at("covered_after").get<std::vector<int>>()});
    }
    t.final_line_coverage = j.at("final_line_coverage").get<double>();
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed trajectory: ") + e.what());
  }
}

}  // namespace greedysuite
