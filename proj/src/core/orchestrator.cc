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

#include "core/orchestrator.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "core/error.h"
#include "core/parallel.h"
#include "core/random.h"
#include "json.hpp"

namespace greedysuite {

using nlohmann::json;

const char* PolicyKindName(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kPoolGreedy: return "pool_greedy";
    case PolicyKind::kPoolRandom: return "pool_random";
    case PolicyKind::kExternal: return "external_generator";
  }
  return "pool_greedy";
}

PolicyKind ParsePolicyKind(const std::string& name) {
  if (name == "pool_greedy" || name == "greedy") return PolicyKind::kPoolGreedy;
  if (name == "pool_random" || name == "random") return PolicyKind::kPoolRandom;
  if (name == "external_generator" || name == "external") {
    return PolicyKind::kExternal;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown policy '" + name + "'");
}

std::vector<std::string> EpisodeReport::chosen() const {
  std::vector<std::string> ids;
  for (const EpisodeStep& s : steps) ids.push_back(s.test_id);
  return ids;
}

std::map<std::string, ExecStatus> EpisodeReport::Statuses() const {
  std::map<std::string, ExecStatus> out;
  for (const EpisodeStep& s : steps) out[s.test_id] = s.status;
  return out;
}

namespace {

ExecutionOutcome OutcomeFromResponse(const TaskBundle& task,
                                     const std::string& test_id,
                                     const ExecResponse& response) {
  ExecutionOutcome out;
  out.test_id = test_id;
  out.status = response.status;
  out.has_assertion = response.has_assertion;
  out.wall_time_ms = response.wall_time_ms;
  out.error_message = response.error_message.value_or("");
  out.covered = CoverageVector(task.universe);
  if (response.status == ExecStatus::kSyntaxError) return out;
  for (int line : response.covered_lines) {
    auto it = task.line_unit.find(line);
    if (it != task.line_unit.end()) out.covered.set(it->second);
  }
  for (const std::string& arc : response.covered_branches) {
    auto it = task.arc_unit.find(arc);
    if (it != task.arc_unit.end()) out.covered.set(it->second);
  }
  return out;
}

ExecutionOutcome FailedOutcome(const TaskBundle& task, const std::string& id,
                               const std::string& message) {
  ExecutionOutcome out;
  out.test_id = id;
  out.status = ExecStatus::kRuntimeError;
  out.has_assertion = false;
  out.covered = CoverageVector(task.universe);
  out.error_message = message;
  return out;
}

// Index into the id-sorted `remaining` of the largest marginal gain, ties to
// the smallest id.
std::size_t GreedyPick(const std::vector<const TestCandidate*>& remaining,
                       const CoverageVector& covered, const UtilityConfig& cfg) {
  std::vector<double> gains;
  double best = 0.0;
  for (const TestCandidate* c : remaining) {
    gains.push_back(MarginalGain(covered, c->coverage, cfg));
    best = std::max(best, gains.back());
  }
  std::size_t pick = 0;
  while (gains[pick] < best - kUtilityTolerance) ++pick;
  return pick;
}

}  // namespace

EpisodeReport RunEpisode(const TaskBundle& task, const Policy& policy, int k) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "budget K must be >= 1, got " + std::to_string(k));
  }
  policy.utility.Validate();

  EpisodeReport report;
  report.task_id = task.task_id;
  report.policy = policy.kind;
  report.budget = k;

  Trajectory traj;
  traj.task_id = task.task_id;
  traj.universe = task.universe;
  traj.initial = InitialState(task.universe);
  SuiteState state = traj.initial;

  std::vector<const TestCandidate*> remaining;
  if (policy.kind == PolicyKind::kPoolGreedy) {
    remaining = task.pool.ValidById();
  } else if (policy.kind == PolicyKind::kPoolRandom) {
    for (const TestCandidate& c : task.pool.candidates()) remaining.push_back(&c);
    std::sort(remaining.begin(), remaining.end(),
              [](const TestCandidate* a, const TestCandidate* b) {
                return a->id < b->id;
              });
  }
  std::mt19937_64 rng(policy.seed ^ Fnv1a(task.task_id));

  std::unique_ptr<GeneratorClient> generator;
  std::unique_ptr<ExecutorClient> executor;
  if (policy.kind == PolicyKind::kExternal) {
    if (policy.generator_factory) {
      generator = policy.generator_factory();
    } else if (!policy.generator_endpoint.empty()) {
      generator = std::make_unique<HttpGenerator>(policy.generator_endpoint,
                                                  policy.generator_timeout_ms);
    }
    if (policy.executor_factory) {
      executor = policy.executor_factory();
    } else if (!policy.executor.empty()) {
      executor = MakeExecutor(policy.executor);
    }
    if (!generator || !executor) {
      throw Error(ErrorCode::kInvalidArgument,
                  "external policy needs both a generator and an executor");
    }
  }
  std::vector<std::string> history;

  for (int step = 0; step < k; ++step) {
    EpisodeStep st;
    st.index = step;
    TestCandidate action;
    ExecutionOutcome outcome;

    if (policy.kind != PolicyKind::kExternal) {
      if (remaining.empty()) break;
      const std::size_t pick =
          policy.kind == PolicyKind::kPoolGreedy
              ? GreedyPick(remaining, state.covered, policy.utility)
              : static_cast<std::size_t>(UniformIndex(rng, remaining.size()));
      action = *remaining[pick];
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
      outcome = task.OutcomeFor(action.id);
      st.test_text = action.source.value_or("");
    } else {
      const std::string id = "gen-" + std::to_string(step + 1);
      const std::string state_text =
          StateText(task, state.covered, policy.annotation);
      try {
        st.test_text = generator->Generate(state_text, history);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kTransport) throw;
        st.generated = false;
        st.diagnostic = e.what();
      }
      if (st.generated) {
        history.push_back(st.test_text);
        ExecRequest req{task.task_id + "/" + id, task.source_text,
                        st.test_text, policy.exec_timeout_ms};
        try {
          outcome = OutcomeFromResponse(task, id, executor->Execute(req));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kTransport) throw;
          outcome = FailedOutcome(task, id, e.what());
          st.diagnostic = e.what();
        }
      } else {
        outcome = FailedOutcome(task, id, st.diagnostic);
      }
      action.id = id;
      action.coverage = outcome.covered;
      action.valid = IsValid(outcome);
      action.source = st.test_text;
    }

    st.test_id = action.id;
    st.status = outcome.status;
    st.parsed = st.generated && outcome.status != ExecStatus::kSyntaxError;
    st.valid = IsValid(outcome);
    if (st.diagnostic.empty()) st.diagnostic = outcome.error_message;
    action.valid = st.valid;
    st.reward = StepReward(state, outcome);
    TransitionRecord rec = Transition(state, action, policy.utility);
    st.gain = rec.gain;
    st.line_units_before = static_cast<int>(state.covered.count_lines());
    st.line_units_after = static_cast<int>(rec.state_after.covered.count_lines());
    state = rec.state_after;
    traj.transitions.push_back(std::move(rec));
    report.steps.push_back(std::move(st));
  }

  traj.final_line_coverage = LineFraction(state.covered);
  report.final_line_coverage = traj.final_line_coverage;
  report.final_branch_coverage = BranchFraction(state.covered);
  report.coverage_at_k = CoverageAtKSeries(traj);
  if (!report.steps.empty()) {
    const double n = static_cast<double>(report.steps.size());
    const auto parsed = std::count_if(report.steps.begin(), report.steps.end(),
                                      [](const EpisodeStep& s) { return s.parsed; });
    const auto valid = std::count_if(report.steps.begin(), report.steps.end(),
                                     [](const EpisodeStep& s) { return s.valid; });
    report.syntactic_rate = static_cast<double>(parsed) / n;
    report.execution_rate = static_cast<double>(valid) / n;
  }
  return report;
}

namespace {

template <typename Fn>
void ForEachJsonLine(const std::string& jsonl, Fn&& fn) {
  std::istringstream in(jsonl);
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(json::parse(text), line);
    } catch (const json::exception& e) {
      throw ParseError(line, e.what());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
  }
}

std::optional<std::string> OptionalTask(const json& j) {
  if (j.contains("task_id") && j.at("task_id").is_string()) {
    return j.at("task_id").get<std::string>();
  }
  return std::nullopt;
}

bool AppliesTo(const std::optional<std::string>& record_task,
               const std::string& task_id) {
  return !record_task || *record_task == task_id;
}

// Summed in sorted order so the result does not depend on task order.
double Mean(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

std::vector<KillRecord> ParseKillMatrix(const std::string& jsonl) {
  std::vector<KillRecord> out;
  ForEachJsonLine(jsonl, [&](const json& j, int) {
    KillRecord r;
    r.task_id = OptionalTask(j);
    r.mutant_id = j.at("mutant_id").get<std::string>();
    r.killed_by = j.at("killed_by").get<std::vector<std::string>>();
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<SolutionOutcome> ParseSolutionOutcomes(const std::string& jsonl) {
  std::vector<SolutionOutcome> out;
  ForEachJsonLine(jsonl, [&](const json& j, int) {
    SolutionOutcome r;
    r.task_id = OptionalTask(j);
    r.test_id = j.at("test_id").get<std::string>();
    r.solution_id = j.at("solution_id").get<std::string>();
    r.status = ParseExecStatus(j.at("status").get<std::string>());
    out.push_back(std::move(r));
  });
  return out;
}

bool DetectBug(const std::map<std::string, ExecStatus>& canonical,
               const std::map<std::string, ExecStatus>& buggy) {
  std::vector<std::string> mismatched;
  for (const auto& [id, status] : canonical) {
    if (!buggy.contains(id)) mismatched.push_back(id);
  }
  for (const auto& [id, status] : buggy) {
    if (!canonical.contains(id)) mismatched.push_back(id);
  }
  if (!mismatched.empty()) {
    std::string ids;
    for (const std::string& id : mismatched) ids += (ids.empty() ? "" : ", ") + id;
    throw Error(ErrorCode::kInvalidArgument,
                "canonical and buggy outcomes disagree on test ids: " + ids);
  }
  for (const auto& [id, status] : canonical) {
    if (status != ExecStatus::kPass) continue;
    const ExecStatus b = buggy.at(id);
    if (b == ExecStatus::kFail || b == ExecStatus::kRuntimeError) return true;
  }
  return false;
}

BenchmarkReport Evaluate(const std::vector<TaskBundle>& tasks,
                         const Policy& policy, int k,
                         const std::optional<std::vector<KillRecord>>& kills,
                         const std::optional<std::vector<SolutionOutcome>>&
                             solutions) {
  if (tasks.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "evaluate needs at least one task");
  }
  BenchmarkReport report;
  report.policy = policy.kind;
  report.budget = k;
  report.total_tasks = static_cast<int>(tasks.size());

  std::vector<std::optional<EpisodeReport>> episodes(tasks.size());
  std::vector<std::string> errors(tasks.size());
  ParallelFor(tasks.size(), [&](std::size_t i) {
    try {
      episodes[i] = RunEpisode(tasks[i], policy, k);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  std::vector<double> line, branch, syntactic, execution, mutation, bugs;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!episodes[i]) {
      report.failures.push_back({tasks[i].task_id, errors[i]});
      continue;
    }
    const EpisodeReport& ep = *episodes[i];
    line.push_back(ep.final_line_coverage);
    if (ep.final_branch_coverage) branch.push_back(*ep.final_branch_coverage);
    syntactic.push_back(ep.syntactic_rate);
    execution.push_back(ep.execution_rate);

    if (kills) {
      std::set<std::string> valid_chosen;
      for (const EpisodeStep& s : ep.steps) {
        if (s.valid) valid_chosen.insert(s.test_id);
      }
      int total = 0;
      int killed = 0;
      for (const KillRecord& r : *kills) {
        if (!AppliesTo(r.task_id, ep.task_id)) continue;
        ++total;
        if (std::any_of(r.killed_by.begin(), r.killed_by.end(),
                        [&](const std::string& t) {
                          return valid_chosen.contains(t);
                        })) {
          ++killed;
        }
      }
      if (total > 0) mutation.push_back(static_cast<double>(killed) / total);
    }

    if (solutions) {
      const std::vector<std::string> chosen = ep.chosen();
      std::map<std::string, ExecStatus> canonical = ep.Statuses();
      std::map<std::string, std::map<std::string, ExecStatus>> buggy;
      for (const SolutionOutcome& o : *solutions) {
        if (!AppliesTo(o.task_id, ep.task_id)) continue;
        if (std::find(chosen.begin(), chosen.end(), o.test_id) == chosen.end()) {
          continue;
        }
        if (o.solution_id == kCanonicalSolution) {
          canonical[o.test_id] = o.status;
        } else {
          buggy[o.solution_id][o.test_id] = o.status;
        }
      }
      int evaluated = 0;
      int detected = 0;
      for (const auto& [solution, outcomes] : buggy) {
        try {
          detected += DetectBug(canonical, outcomes) ? 1 : 0;
          ++evaluated;
        } catch (const Error& e) {
          report.warnings.push_back("task '" + ep.task_id + "', solution '" +
                                    solution + "': " + e.what());
        }
      }
      if (evaluated > 0) bugs.push_back(static_cast<double>(detected) / evaluated);
    }
    report.episodes.push_back(ep);
  }

  report.completed_tasks = static_cast<int>(report.episodes.size());
  if (report.completed_tasks == 0) {
    report.warnings.push_back("no task completed; averages are 0");
  }
  report.line_coverage = Mean(line);
  if (!branch.empty()) report.branch_coverage = Mean(branch);
  report.syntactic_rate = Mean(syntactic);
  report.execution_rate = Mean(execution);
  if (kills) {
    if (kills->empty()) {
      report.warnings.push_back("kill matrix is empty; mutation score omitted");
    } else if (mutation.empty()) {
      report.warnings.push_back(
          "no kill-matrix record matches a completed task; mutation score "
          "omitted");
    } else {
      report.mutation_score = Mean(mutation);
    }
  }
  if (solutions) {
    if (bugs.empty()) {
      report.warnings.push_back(
          "no buggy-solution outcomes for the chosen tests; bug detection "
          "rate omitted");
    } else {
      report.bug_detection_rate = Mean(bugs);
    }
  }
  return report;
}

}  // namespace greedysuite
