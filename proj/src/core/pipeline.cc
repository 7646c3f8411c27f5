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

#include "core/pipeline.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "core/error.h"
#include "core/parallel.h"
#include "json.hpp"

namespace greedysuite {

using nlohmann::json;

namespace {

std::optional<int> ParseTrailingInt(std::string_view label) {
  auto colon = label.rfind(':');
  if (colon != std::string_view::npos) label = label.substr(colon + 1);
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(label.data(), label.data() + label.size(), value);
  if (ec != std::errc() || ptr != label.data() + label.size()) {
    return std::nullopt;
  }
  return value;
}

std::string_view ArcPart(std::string_view label) {
  auto colon = label.rfind(':');
  return colon == std::string_view::npos ? label : label.substr(colon + 1);
}

template <typename T>
T Require(const json& obj, const char* key, int line) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(line, std::string("missing \"") + key + "\"");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(line, std::string("\"") + key + "\" has the wrong type");
  }
}

void ParseHeader(const json& header, int line, TaskBundle& bundle) {
  if (!header.is_object() || !header.contains("universe")) {
    throw ParseError(line, "first record must be the universe header");
  }
  const json& units_json = header.at("universe");
  if (!units_json.is_array()) {
    throw ParseError(line, "\"universe\" must be an array");
  }
  std::vector<CoverageUnit> units;
  for (const json& u : units_json) {
    if (!u.is_object()) throw ParseError(line, "universe entries must be objects");
    CoverageUnit unit;
    unit.id = Require<int>(u, "id", line);
    try {
      unit.kind = ParseUnitKind(Require<std::string>(u, "kind", line));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
    unit.label = Require<std::string>(u, "label", line);
    units.push_back(std::move(unit));
  }
  try {
    bundle.universe = CoverageUniverse::Create(std::move(units));
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
  const int line_count = Require<int>(header, "line_count", line);
  if (line_count != bundle.universe->line_count()) {
    throw ParseError(line, "line_count " + std::to_string(line_count) +
                               " but the universe has " +
                               std::to_string(bundle.universe->line_count()) +
                               " line units");
  }
  if (header.contains("task_id")) {
    bundle.task_id = Require<std::string>(header, "task_id", line);
  }
  std::optional<std::string> focal;
  if (header.contains("focal_source")) {
    focal = Require<std::string>(header, "focal_source", line);
    if (focal->empty()) focal.reset();
  }

  int ordinal = 0;
  for (const CoverageUnit& u : bundle.universe->units()) {
    if (u.kind == UnitKind::kBranch) {
      bundle.arc_unit.emplace(std::string(ArcPart(u.label)), u.id);
      continue;
    }
    int source_line = ++ordinal;
    if (focal) {
      auto parsed = ParseTrailingInt(u.label);
      if (!parsed) {
        throw ParseError(line, "line unit label '" + u.label +
                                   "' does not end in a line number");
      }
      source_line = *parsed;
    }
    bundle.unit_line[u.id] = source_line;
    if (!bundle.line_unit.emplace(source_line, u.id).second) {
      throw ParseError(line, "two line units map to source line " +
                                 std::to_string(source_line));
    }
  }

  if (focal) {
    bundle.source_text = *focal;
    const int n = CountLines(bundle.source_text);
    for (const auto& [unit, source_line] : bundle.unit_line) {
      if (source_line < 1 || source_line > n) {
        throw ParseError(line, "line unit " + std::to_string(unit) +
                                   " points at line " +
                                   std::to_string(source_line) +
                                   " of a " + std::to_string(n) +
                                   "-line focal source");
      }
    }
  } else {
    bundle.source_synthesized = true;
    for (const auto& [unit, source_line] : bundle.unit_line) {
      bundle.source_text += bundle.universe->unit(unit).label + "\n";
    }
    if (bundle.source_text.empty()) bundle.source_text = "# no line units\n";
  }
}

}  // namespace

const ExecutionOutcome& TaskBundle::OutcomeFor(const std::string& test_id) const {
  auto it = outcomes.find(test_id);
  if (it == outcomes.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "task '" + task_id + "' has no test '" + test_id + "'");
  }
  return it->second;
}

TaskBundle ParseCandidates(std::string_view jsonl,
                           const std::string& default_task_id) {
  TaskBundle bundle;
  bundle.task_id = default_task_id;
  std::vector<TestCandidate> candidates;
  std::map<std::string, int> first_line;

  std::istringstream in{std::string(jsonl)};
  std::string text;
  int line = 0;
  bool have_header = false;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(line, std::string("invalid JSON: ") + e.what());
    }
    if (!have_header) {
      ParseHeader(record, line, bundle);
      have_header = true;
      continue;
    }
    if (!record.is_object()) throw ParseError(line, "record must be an object");
    if (record.contains("universe")) {
      throw ParseError(line, "second universe header");
    }

    TestCandidate c;
    c.id = Require<std::string>(record, "test_id", line);
    auto [it, inserted] = first_line.emplace(c.id, line);
    if (!inserted) {
      throw ParseError(line, "duplicate test_id '" + c.id +
                                 "' (first defined on line " +
                                 std::to_string(it->second) + ")");
    }
    const auto unit_ids = Require<std::vector<int>>(record, "covered_units", line);
    c.coverage = CoverageVector(bundle.universe);
    for (int id : unit_ids) {
      if (id < 0 || static_cast<std::size_t>(id) >= bundle.universe->size()) {
        throw ParseError(line, "unit id " + std::to_string(id) +
                                   " outside universe of " +
                                   std::to_string(bundle.universe->size()));
      }
      c.coverage.set(id);
    }
    c.valid = Require<bool>(record, "valid", line);
    if (record.contains("source") && !record.at("source").is_null()) {
      c.source = Require<std::string>(record, "source", line);
    }

    ExecutionOutcome outcome;
    outcome.test_id = c.id;
    outcome.covered = c.coverage;
    outcome.status = c.valid ? ExecStatus::kPass : ExecStatus::kFail;
    outcome.has_assertion = c.valid;
    if (record.contains("status")) {
      try {
        outcome.status = ParseExecStatus(Require<std::string>(record, "status", line));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
    }
    if (record.contains("has_assertion")) {
      outcome.has_assertion = Require<bool>(record, "has_assertion", line);
    }
    if (IsValid(outcome) != c.valid) {
      throw ParseError(line, "\"valid\" contradicts \"status\"/\"has_assertion\"");
    }
    bundle.outcomes.emplace(c.id, std::move(outcome));
    candidates.push_back(std::move(c));
  }
  if (!have_header) throw ParseError(line + 1, "missing universe header");
  bundle.pool = CandidatePool(bundle.universe, std::move(candidates));
  return bundle;
}

TaskBundle IngestCandidates(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseCandidates(buf.str(), path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

std::string StateText(const TaskBundle& bundle, const CoverageVector& covered,
                      const AnnotationConfig& cfg) {
  std::set<int> executable;
  std::set<int> hit;
  for (const auto& [unit, line] : bundle.unit_line) {
    executable.insert(line);
    if (covered.test(unit)) hit.insert(line);
  }
  return ProjectUncovered(bundle.source_text, executable, hit, cfg);
}

Trajectory GreedyOrder(const TaskBundle& bundle, const UtilityConfig& cfg) {
  const std::vector<const TestCandidate*> valid = bundle.pool.ValidById();
  if (valid.empty()) {
    Trajectory empty;
    empty.task_id = bundle.task_id;
    empty.universe = bundle.universe;
    empty.initial = InitialState(bundle.universe);
    empty.diagnostics.push_back("no valid candidates in pool of " +
                                std::to_string(bundle.pool.size()));
    return empty;
  }
  const SelectionResult prefix =
      GreedySelect(bundle.pool, static_cast<int>(valid.size()), cfg);
  std::vector<const TestCandidate*> order;
  for (const std::string& id : prefix.chosen) order.push_back(bundle.pool.Find(id));
  for (const TestCandidate* c : valid) {
    if (std::find(prefix.chosen.begin(), prefix.chosen.end(), c->id) ==
        prefix.chosen.end()) {
      order.push_back(c);
    }
  }
  return Replay(bundle.task_id, order, bundle.universe, cfg);
}

bool FilterTrajectory(const Trajectory& trajectory, double threshold) {
  return trajectory.length() > 0 && trajectory.final_line_coverage > threshold;
}

std::vector<StateSnapshot> Decompose(const Trajectory& trajectory) {
  std::vector<StateSnapshot> out;
  out.reserve(trajectory.length());
  for (const TransitionRecord& t : trajectory.transitions) {
    out.push_back({t.state_before, t.action_id});
  }
  return out;
}

DatasetManifest BuildDataset(const std::vector<TaskBundle>& bundles,
                             double threshold, std::uint64_t seed,
                             const std::filesystem::path& out_path,
                             const AnnotationConfig& annotation) {
  std::vector<const TaskBundle*> sorted;
  for (const TaskBundle& b : bundles) sorted.push_back(&b);
  std::sort(sorted.begin(), sorted.end(),
            [](const TaskBundle* a, const TaskBundle* b) {
              return a->task_id < b->task_id;
            });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->task_id == sorted[i - 1]->task_id) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate task id '" + sorted[i]->task_id + "'");
    }
  }

  struct TaskOutput {
    bool kept = false;
    std::vector<std::string> lines;
    std::optional<Error> error;
  };
  std::vector<TaskOutput> outputs(sorted.size());
  ParallelFor(sorted.size(), [&](std::size_t i) {
    const TaskBundle& bundle = *sorted[i];
    TaskOutput& out = outputs[i];
    try {
      const Trajectory traj = GreedyOrder(bundle);
      out.kept = FilterTrajectory(traj, threshold);
      if (!out.kept) return;
      for (const StateSnapshot& snap : Decompose(traj)) {
        json rec = {
            {"task_id", bundle.task_id},
            {"step", snap.state.step_index},
            {"selected_ids", snap.state.selected_ids},
            {"covered_units", snap.state.covered.ids()},
            {"annotated_source",
             StateText(bundle, snap.state.covered, annotation)},
            {"greedy_action_id", snap.greedy_action_id},
        };
        out.lines.push_back(rec.dump());
      }
    } catch (const Error& e) {
      out.error.emplace(e.code(),
                        "task '" + bundle.task_id + "': " + e.what());
    } catch (const std::exception& e) {
      out.error.emplace(ErrorCode::kInternal,
                        "task '" + bundle.task_id + "': " + e.what());
    }
  });
  for (const TaskOutput& out : outputs) {
    if (out.error) throw *out.error;
  }

  DatasetManifest manifest;
  manifest.threshold = threshold;
  manifest.seed = seed;
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw Error(ErrorCode::kIo, "cannot open " + out_path.string() +
                                    " for writing");
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const std::string& task_id = sorted[i]->task_id;
    if (!outputs[i].kept) {
      ++manifest.dropped_tasks;
      manifest.dropped_task_ids.push_back(task_id);
      continue;
    }
    ++manifest.kept_tasks;
    manifest.kept_task_ids.push_back(task_id);
    for (const std::string& line : outputs[i].lines) {
      file << line << '\n';
      ++manifest.total_states;
    }
    if (!file) {
      throw Error(ErrorCode::kIo, "write failed for task '" + task_id +
                                      "' in " + out_path.string());
    }
  }
  file.flush();
  if (!file) {
    throw Error(ErrorCode::kIo, "flush failed for " + out_path.string());
  }
  return manifest;
}

}  // namespace greedysuite
