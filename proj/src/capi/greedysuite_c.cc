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

#include "greedysuite/greedysuite.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <set>
#include <string>
#include <vector>

#include "core/annotator.h"
#include "core/bound.h"
#include "core/error.h"
#include "core/greedy.h"
#include "core/json_io.h"
#include "core/mdp.h"
#include "core/orchestrator.h"
#include "core/pipeline.h"
#include "core/reward.h"

struct gs_session {
  greedysuite::UtilityConfig utility;
  greedysuite::AnnotationConfig annotation;
  std::uint64_t seed = 0;
  std::string executor;
  int exec_timeout_ms = greedysuite::kDefaultExecTimeoutMs;
  std::string generator;
  int generator_timeout_ms = 30000;
};

struct gs_task {
  greedysuite::TaskBundle bundle;
};

namespace {

using greedysuite::Error;
using greedysuite::ErrorCode;
using nlohmann::json;

thread_local std::string g_last_error;

gs_status Fail(gs_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into a status and the thread's message.
template <typename Fn>
gs_status Guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return GS_OK;
  } catch (const Error& e) {
    return Fail(static_cast<gs_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(GS_ERR_INTERNAL, "out of memory");
  } catch (const json::exception& e) {
    return Fail(GS_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return Fail(GS_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(GS_ERR_INTERNAL, "unknown error");
  }
}

void Require(bool condition, const char* what) {
  if (!condition) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what));
  }
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const gs_session& SessionOrDefault(const gs_session* session) {
  static const gs_session kDefault;
  return session ? *session : kDefault;
}

greedysuite::Policy MakePolicy(const gs_session& s, gs_policy_kind kind) {
  greedysuite::Policy p;
  switch (kind) {
    case GS_POLICY_POOL_GREEDY: p.kind = greedysuite::PolicyKind::kPoolGreedy; break;
    case GS_POLICY_POOL_RANDOM: p.kind = greedysuite::PolicyKind::kPoolRandom; break;
    case GS_POLICY_EXTERNAL: p.kind = greedysuite::PolicyKind::kExternal; break;
    default:
      throw Error(ErrorCode::kInvalidArgument, "unknown policy kind");
  }
  p.seed = s.seed;
  p.utility = s.utility;
  p.annotation = s.annotation;
  p.executor = s.executor;
  p.exec_timeout_ms = s.exec_timeout_ms;
  p.generator_endpoint = s.generator;
  p.generator_timeout_ms = s.generator_timeout_ms;
  return p;
}

std::vector<greedysuite::TaskBundle> CollectTasks(const gs_task* const* tasks,
                                                  size_t count) {
  Require(tasks != nullptr || count == 0, "tasks must not be NULL");
  std::vector<greedysuite::TaskBundle> out;
  for (size_t i = 0; i < count; ++i) {
    Require(tasks[i] != nullptr, "task handle must not be NULL");
    out.push_back(tasks[i]->bundle);
  }
  return out;
}

std::vector<const greedysuite::TestCandidate*> LookUp(
    const greedysuite::TaskBundle& bundle, const char* const* ids,
    size_t count) {
  Require(ids != nullptr || count == 0, "ids must not be NULL");
  std::vector<const greedysuite::TestCandidate*> out;
  for (size_t i = 0; i < count; ++i) {
    Require(ids[i] != nullptr, "id must not be NULL");
    const auto* c = bundle.pool.Find(ids[i]);
    if (!c) {
      throw Error(ErrorCode::kInvalidArgument, "task '" + bundle.task_id +
                                                   "' has no test '" + ids[i] +
                                                   "'");
    }
    out.push_back(c);
  }
  return out;
}

json TrajectoryReport(const greedysuite::Trajectory& traj) {
  json j = greedysuite::ToJson(traj);
  j["coverage_at_k"] = greedysuite::ToJson(greedysuite::CoverageAtKSeries(traj));
  return j;
}

}  // namespace

extern "C" {

const char* gs_version(void) { return "0.1.0"; }

const char* gs_status_name(gs_status status) {
  switch (status) {
    case GS_OK: return "ok";
    case GS_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case GS_ERR_UNIVERSE_MISMATCH: return "universe_mismatch";
    case GS_ERR_DUPLICATE_ID: return "duplicate_id";
    case GS_ERR_PARSE: return "parse_error";
    case GS_ERR_SIZE_GUARD: return "size_guard";
    case GS_ERR_IO: return "io_error";
    case GS_ERR_TRANSPORT: return "transport_error";
    case GS_ERR_UNREACHABLE: return "unreachable";
    case GS_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* gs_last_error(void) { return g_last_error.c_str(); }

void gs_string_free(char* s) { std::free(s); }

gs_status gs_session_create(gs_session** out) {
  return Guard([&] {
    Require(out != nullptr, "out must not be NULL");
    *out = new gs_session();
  });
}

void gs_session_destroy(gs_session* session) { delete session; }

gs_status gs_session_set_weights(gs_session* session, const char* spec) {
  return Guard([&] {
    Require(session && spec, "session and spec must not be NULL");
    session->utility = greedysuite::UtilityConfig::Parse(spec);
  });
}

gs_status gs_session_set_seed(gs_session* session, uint64_t seed) {
  return Guard([&] {
    Require(session != nullptr, "session must not be NULL");
    session->seed = seed;
  });
}

gs_status gs_session_set_marker(gs_session* session, const char* marker) {
  return Guard([&] {
    Require(session && marker, "session and marker must not be NULL");
    greedysuite::AnnotationConfig cfg = session->annotation;
    cfg.marker_text = marker;
    cfg.Validate();
    session->annotation = cfg;
  });
}

gs_status gs_session_set_executor(gs_session* session,
                                  const char* endpoint_or_command,
                                  int timeout_ms) {
  return Guard([&] {
    Require(session && endpoint_or_command,
            "session and executor must not be NULL");
    Require(timeout_ms > 0, "executor timeout must be positive");
    session->executor = endpoint_or_command;
    session->exec_timeout_ms = timeout_ms;
  });
}

gs_status gs_session_set_generator(gs_session* session, const char* endpoint,
                                   int timeout_ms) {
  return Guard([&] {
    Require(session && endpoint, "session and endpoint must not be NULL");
    Require(timeout_ms > 0, "generator timeout must be positive");
    session->generator = endpoint;
    session->generator_timeout_ms = timeout_ms;
  });
}

gs_status gs_task_load(const char* path, gs_task** out) {
  return Guard([&] {
    Require(path && out, "path and out must not be NULL");
    *out = nullptr;
    auto task = std::make_unique<gs_task>();
    task->bundle = greedysuite::IngestCandidates(path);
    *out = task.release();
  });
}

gs_status gs_task_parse(const char* jsonl, const char* default_task_id,
                        gs_task** out) {
  return Guard([&] {
    Require(jsonl && out, "jsonl and out must not be NULL");
    *out = nullptr;
    auto task = std::make_unique<gs_task>();
    task->bundle = greedysuite::ParseCandidates(
        jsonl, default_task_id ? default_task_id : "task");
    *out = task.release();
  });
}

void gs_task_destroy(gs_task* task) { delete task; }

const char* gs_task_id(const gs_task* task) {
  return task ? task->bundle.task_id.c_str() : "";
}

size_t gs_task_candidate_count(const gs_task* task) {
  return task ? task->bundle.pool.size() : 0;
}

gs_status gs_select(const gs_session* session, const gs_task* task, int k,
                    gs_select_mode mode, char** out_json) {
  return Guard([&] {
    Require(task && out_json, "task and out_json must not be NULL");
    const gs_session& s = SessionOrDefault(session);
    const auto& pool = task->bundle.pool;
    json j;
    switch (mode) {
      case GS_SELECT_NAIVE:
        j = greedysuite::ToJson(greedysuite::GreedySelect(pool, k, s.utility));
        j["mode"] = "naive";
        break;
      case GS_SELECT_LAZY:
        j = greedysuite::ToJson(
            greedysuite::LazyGreedySelect(pool, k, s.utility));
        j["mode"] = "lazy";
        break;
      case GS_SELECT_ORACLE: {
        const auto optimal = greedysuite::BruteForceOptimal(pool, k, s.utility);
        const auto greedy = greedysuite::GreedySelect(pool, k, s.utility);
        j = greedysuite::ToJson(optimal);
        j["greedy"] = greedysuite::ToJson(greedy);
        j["ratio"] = greedysuite::ToJson(greedysuite::VerifyRatio(greedy, optimal));
        j["mode"] = "oracle";
        break;
      }
      default:
        throw Error(ErrorCode::kInvalidArgument, "unknown selection mode");
    }
    j["task_id"] = task->bundle.task_id;
    *out_json = CopyString(j.dump(2));
  });
}

gs_status gs_order(const gs_session* session, const gs_task* task,
                   char** out_json) {
  return Guard([&] {
    Require(task && out_json, "task and out_json must not be NULL");
    const gs_session& s = SessionOrDefault(session);
    *out_json = CopyString(
        TrajectoryReport(greedysuite::GreedyOrder(task->bundle, s.utility))
            .dump(2));
  });
}

gs_status gs_replay(const gs_session* session, const gs_task* task,
                    const char* const* ids, size_t count, char** out_json) {
  return Guard([&] {
    Require(task && out_json, "task and out_json must not be NULL");
    Require(count > 0, "replay needs at least one test id");
    const gs_session& s = SessionOrDefault(session);
    const auto order = LookUp(task->bundle, ids, count);
    *out_json = CopyString(
        TrajectoryReport(greedysuite::Replay(task->bundle.task_id, order,
                                             task->bundle.universe, s.utility))
            .dump(2));
  });
}

gs_status gs_replay_trajectory(const gs_session* session, const gs_task* task,
                               const char* trajectory_json, char** out_json) {
  return Guard([&] {
    Require(task && trajectory_json && out_json,
            "task, trajectory_json and out_json must not be NULL");
    const gs_session& s = SessionOrDefault(session);
    const auto recorded =
        greedysuite::RecordedTrajectoryFromJson(json::parse(trajectory_json));
    std::vector<const greedysuite::TestCandidate*> order;
    for (const auto& step : recorded.steps) {
      const char* id = step.test_id.c_str();
      order.push_back(LookUp(task->bundle, &id, 1).front());
    }
    const auto traj = greedysuite::Replay(task->bundle.task_id, order,
                                          task->bundle.universe, s.utility);
    for (std::size_t i = 0; i < recorded.steps.size(); ++i) {
      const auto& t = traj.transitions[i];
      if (std::abs(t.gain - recorded.steps[i].gain) >
              greedysuite::kUtilityTolerance ||
          t.state_after.covered.ids() != recorded.steps[i].covered_after) {
        throw Error(ErrorCode::kInvalidArgument,
                    "recorded step " + std::to_string(i) + " ('" + t.action_id +
                        "') does not match its replay");
      }
    }
    *out_json = CopyString(TrajectoryReport(traj).dump(2));
  });
}

gs_status gs_annotate(const gs_session* session, const char* source,
                      const char* coverage_json, char** out_text) {
  return Guard([&] {
    Require(source && coverage_json && out_text,
            "source, coverage_json and out_text must not be NULL");
    const gs_session& s = SessionOrDefault(session);
    const json cov = json::parse(coverage_json);
    const auto executable = cov.at("executable_lines").get<std::set<int>>();
    const auto covered = cov.at("covered_lines").get<std::set<int>>();
    *out_text = CopyString(
        greedysuite::ProjectUncovered(source, executable, covered, s.annotation));
  });
}

gs_status gs_strip_markers(const gs_session* session, const char* text,
                           char** out_text) {
  return Guard([&] {
    Require(text && out_text, "text and out_text must not be NULL");
    const gs_session& s = SessionOrDefault(session);
    *out_text = CopyString(greedysuite::StripMarkers(text, s.annotation));
  });
}

gs_status gs_build_dataset(const gs_session* session,
                           const gs_task* const* tasks, size_t count,
                           double threshold, const char* out_path,
                           char** out_manifest_json) {
  return Guard([&] {
    Require(out_path && out_manifest_json,
            "out_path and out_manifest_json must not be NULL");
    Require(threshold >= 0.0 && threshold <= 1.0,
            "threshold must lie in [0, 1]");
    const gs_session& s = SessionOrDefault(session);
    const auto manifest = greedysuite::BuildDataset(
        CollectTasks(tasks, count), threshold, s.seed, out_path, s.annotation);
    *out_manifest_json = CopyString(greedysuite::ToJson(manifest).dump(2));
  });
}

gs_status gs_run_episode(const gs_session* session, const gs_task* task,
                         gs_policy_kind policy, int k, char** out_json) {
  return Guard([&] {
    Require(task && out_json, "task and out_json must not be NULL");
    const auto report = greedysuite::RunEpisode(
        task->bundle, MakePolicy(SessionOrDefault(session), policy), k);
    *out_json = CopyString(greedysuite::ToJson(report).dump(2));
  });
}

gs_status gs_evaluate(const gs_session* session, const gs_task* const* tasks,
                      size_t count, gs_policy_kind policy, int k,
                      const char* kill_matrix_jsonl,
                      const char* solution_outcomes_jsonl, char** out_json) {
  return Guard([&] {
    Require(out_json != nullptr, "out_json must not be NULL");
    std::optional<std::vector<greedysuite::KillRecord>> kills;
    if (kill_matrix_jsonl) kills = greedysuite::ParseKillMatrix(kill_matrix_jsonl);
    std::optional<std::vector<greedysuite::SolutionOutcome>> outcomes;
    if (solution_outcomes_jsonl) {
      outcomes = greedysuite::ParseSolutionOutcomes(solution_outcomes_jsonl);
    }
    const auto report = greedysuite::Evaluate(
        CollectTasks(tasks, count),
        MakePolicy(SessionOrDefault(session), policy), k, kills, outcomes);
    *out_json = CopyString(greedysuite::ToJson(report).dump(2));
  });
}

gs_status gs_score_group(const gs_session* session, const gs_task* task,
                         const char* const* state_ids, size_t state_count,
                         const char* const* action_ids, size_t action_count,
                         char** out_jsonl) {
  return Guard([&] {
    Require(task && out_jsonl, "task and out_jsonl must not be NULL");
    const gs_session& s = SessionOrDefault(session);
    const auto& bundle = task->bundle;
    greedysuite::SuiteState state = greedysuite::InitialState(bundle.universe);
    for (const auto* c : LookUp(bundle, state_ids, state_count)) {
      state = greedysuite::Transition(state, *c, s.utility).state_after;
    }
    std::vector<greedysuite::GroupAction> actions;
    for (const auto* c : LookUp(bundle, action_ids, action_count)) {
      actions.push_back({c->source.value_or(c->id), bundle.OutcomeFor(c->id)});
    }
    const auto group = greedysuite::BuildRewardGroup(state, actions);
    const auto records = greedysuite::EmitTrainingRecords(
        group, bundle.task_id,
        greedysuite::StateText(bundle, state.covered, s.annotation), s.seed);
    *out_jsonl = CopyString(greedysuite::ToJsonl(records));
  });
}

gs_status gs_verify_bound(const gs_session* session, int instances,
                          int candidates, int k, int max_units,
                          char** out_json) {
  return Guard([&] {
    Require(out_json != nullptr, "out_json must not be NULL");
    greedysuite::BoundExperimentConfig cfg;
    cfg.seed = SessionOrDefault(session).seed;
    cfg.instances = instances;
    cfg.candidates = candidates;
    cfg.k = k;
    cfg.max_units = max_units;
    cfg.min_units = std::min(cfg.min_units, max_units);
    *out_json = CopyString(
        greedysuite::ToJson(greedysuite::RunBoundExperiment(cfg)).dump(2));
  });
}

}  // extern "C"
