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

// gs: command-line front end over the greedysuite C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "greedysuite/greedysuite.h"

namespace {

struct Failure {
  gs_status status;
  std::string message;
};

void Check(gs_status status) {
  if (status != GS_OK) throw Failure{status, gs_last_error()};
}

struct SessionDeleter {
  void operator()(gs_session* s) const { gs_session_destroy(s); }
};
struct TaskDeleter {
  void operator()(gs_task* t) const { gs_task_destroy(t); }
};
using SessionPtr = std::unique_ptr<gs_session, SessionDeleter>;
using TaskPtr = std::unique_ptr<gs_task, TaskDeleter>;

// Owns a string returned through a gs_* out-parameter.
class OwnedString {
 public:
  ~OwnedString() { gs_string_free(ptr_); }
  char** out() { return &ptr_; }
  std::string str() const { return ptr_ ? ptr_ : ""; }

 private:
  char* ptr_ = nullptr;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{GS_ERR_IO, "cannot open " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw Failure{GS_ERR_IO, "cannot write " + out_path};
}

TaskPtr LoadTask(const std::string& path) {
  gs_task* t = nullptr;
  Check(gs_task_load(path.c_str(), &t));
  return TaskPtr(t);
}

std::vector<TaskPtr> LoadTasks(const std::vector<std::string>& paths) {
  std::vector<TaskPtr> tasks;
  for (const std::string& p : paths) tasks.push_back(LoadTask(p));
  return tasks;
}

std::vector<const gs_task*> Raw(const std::vector<TaskPtr>& tasks) {
  std::vector<const gs_task*> out;
  for (const TaskPtr& t : tasks) out.push_back(t.get());
  return out;
}

std::vector<const char*> CStrings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const std::string& s : v) out.push_back(s.c_str());
  return out;
}

gs_policy_kind ParsePolicy(const std::string& name) {
  if (name == "pool_greedy" || name == "greedy") return GS_POLICY_POOL_GREEDY;
  if (name == "pool_random" || name == "random") return GS_POLICY_POOL_RANDOM;
  if (name == "external" || name == "external_generator") {
    return GS_POLICY_EXTERNAL;
  }
  throw Failure{GS_ERR_INVALID_ARGUMENT, "unknown policy '" + name + "'"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Step-wise greedy test-suite construction engine"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  int k = 5;
  std::string weights = "line=1,branch=1";
  std::string executor;
  int exec_timeout_ms = 3000;
  std::string generator;
  int generator_timeout_ms = 30000;
  std::string marker = "#uncovered";
  std::string out_path;
  app.add_option("--seed", seed, "Seed for random policies and records");
  app.add_option("--k", k, "Test budget K")->check(CLI::PositiveNumber);
  app.add_option("--weights", weights, "Utility weights, e.g. line=1,branch=1");
  app.add_option("--executor", executor,
                 "Executor: http:// endpoint or subprocess command");
  app.add_option("--exec-timeout-ms", exec_timeout_ms, "Per-test time limit");
  app.add_option("--generator", generator, "Generator HTTP endpoint");
  app.add_option("--generator-timeout-ms", generator_timeout_ms,
                 "Generator request timeout");
  app.add_option("--marker", marker, "Uncovered-line marker");
  app.add_option("--out", out_path, "Output file (default: stdout)");

  std::string pool;
  std::vector<std::string> pools;

  auto* select = app.add_subcommand("select", "Select K tests from a pool");
  std::string mode = "naive";
  select->add_option("--pool", pool, "Coverage-matrix JSONL")->required();
  select->add_option("--mode", mode, "naive | lazy | oracle")
      ->check(CLI::IsMember({"naive", "lazy", "oracle"}));

  auto* order = app.add_subcommand("order", "Greedy-order a whole pool");
  order->add_option("--pool", pool, "Coverage-matrix JSONL")->required();

  auto* replay = app.add_subcommand("replay", "Replay a test order");
  std::vector<std::string> ids;
  std::string trajectory_path;
  replay->add_option("--pool", pool, "Coverage-matrix JSONL")->required();
  auto* ids_opt = replay->add_option("--order", ids, "Test ids in order")
                      ->delimiter(',');
  replay->add_option("--trajectory", trajectory_path,
                     "Trajectory JSON to verify by replay")
      ->excludes(ids_opt);

  auto* annotate =
      app.add_subcommand("annotate", "Mark uncovered lines of a source file");
  std::string source_path;
  std::string coverage_path;
  bool strip = false;
  annotate->add_option("--source", source_path, "Source file")->required();
  annotate->add_option("--coverage", coverage_path,
                       "JSON with executable_lines and covered_lines");
  annotate->add_flag("--strip", strip, "Remove markers instead of adding them");

  auto* dataset = app.add_subcommand("build-dataset",
                                     "Build step-wise training states");
  double threshold = 0.90;
  std::string manifest_path;
  dataset->add_option("--pools", pools, "Coverage-matrix JSONL files")
      ->required();
  dataset->add_option("--threshold", threshold, "Keep if line coverage > this");
  dataset->add_option("--manifest", manifest_path,
                      "Manifest output (default: stdout)");

  auto* episode = app.add_subcommand("run-episode", "Run one episode");
  std::string policy = "pool_greedy";
  episode->add_option("--pool", pool, "Coverage-matrix JSONL")->required();
  episode->add_option("--policy", policy,
                      "pool_greedy | pool_random | external");

  auto* evaluate = app.add_subcommand("evaluate", "Run a benchmark");
  std::string kill_path;
  std::string buggy_path;
  evaluate->add_option("--pools", pools, "Coverage-matrix JSONL files")
      ->required();
  evaluate->add_option("--policy", policy,
                       "pool_greedy | pool_random | external");
  evaluate->add_option("--kill-matrix", kill_path, "Kill-matrix JSONL");
  evaluate->add_option("--buggy-outcomes", buggy_path,
                       "Per-solution outcome JSONL");

  auto* group = app.add_subcommand(
      "score-group", "Reward/advantage records for a group of candidates");
  std::vector<std::string> state_ids;
  std::vector<std::string> action_ids;
  group->add_option("--pool", pool, "Coverage-matrix JSONL")->required();
  group->add_option("--state", state_ids, "Tests already in the suite")
      ->delimiter(',');
  group->add_option("--actions", action_ids, "Sampled candidate tests")
      ->delimiter(',')
      ->required();

  auto* bound = app.add_subcommand(
      "verify-bound", "Greedy vs exhaustive optimum on random instances");
  int instances = 200;
  int candidates = 12;
  int max_units = 40;
  bound->add_option("--instances", instances, "Number of instances");
  bound->add_option("--candidates", candidates, "Candidates per instance");
  bound->add_option("--max-units", max_units, "Largest universe size");

  CLI11_PARSE(app, argc, argv);

  try {
    gs_session* raw = nullptr;
    Check(gs_session_create(&raw));
    SessionPtr session(raw);
    Check(gs_session_set_seed(session.get(), seed));
    Check(gs_session_set_weights(session.get(), weights.c_str()));
    Check(gs_session_set_marker(session.get(), marker.c_str()));
    if (!executor.empty()) {
      Check(gs_session_set_executor(session.get(), executor.c_str(),
                                    exec_timeout_ms));
    }
    if (!generator.empty()) {
      Check(gs_session_set_generator(session.get(), generator.c_str(),
                                     generator_timeout_ms));
    }

    OwnedString result;
    if (*select) {
      const gs_select_mode m = mode == "lazy"     ? GS_SELECT_LAZY
                               : mode == "oracle" ? GS_SELECT_ORACLE
                                                  : GS_SELECT_NAIVE;
      TaskPtr task = LoadTask(pool);
      Check(gs_select(session.get(), task.get(), k, m, result.out()));
    } else if (*order) {
      TaskPtr task = LoadTask(pool);
      Check(gs_order(session.get(), task.get(), result.out()));
    } else if (*replay) {
      TaskPtr task = LoadTask(pool);
      if (!trajectory_path.empty()) {
        Check(gs_replay_trajectory(session.get(), task.get(),
                                   ReadFile(trajectory_path).c_str(),
                                   result.out()));
      } else {
        if (ids.empty()) {
          throw Failure{GS_ERR_INVALID_ARGUMENT,
                        "replay needs --order or --trajectory"};
        }
        const auto c = CStrings(ids);
        Check(gs_replay(session.get(), task.get(), c.data(), c.size(),
                        result.out()));
      }
    } else if (*annotate) {
      const std::string source = ReadFile(source_path);
      if (strip) {
        Check(gs_strip_markers(session.get(), source.c_str(), result.out()));
      } else {
        if (coverage_path.empty()) {
          throw Failure{GS_ERR_INVALID_ARGUMENT, "annotate needs --coverage"};
        }
        Check(gs_annotate(session.get(), source.c_str(),
                          ReadFile(coverage_path).c_str(), result.out()));
      }
      // Annotated source is emitted byte-exact.
      if (out_path.empty() || out_path == "-") {
        std::cout << result.str();
      } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        out << result.str();
        if (!out) throw Failure{GS_ERR_IO, "cannot write " + out_path};
      }
      return 0;
    } else if (*dataset) {
      if (out_path.empty()) {
        throw Failure{GS_ERR_INVALID_ARGUMENT,
                      "build-dataset needs --out for the JSONL records"};
      }
      auto tasks = LoadTasks(pools);
      auto raw_tasks = Raw(tasks);
      Check(gs_build_dataset(session.get(), raw_tasks.data(), raw_tasks.size(),
                             threshold, out_path.c_str(), result.out()));
      Emit(result.str(), manifest_path);
      return 0;
    } else if (*episode) {
      TaskPtr task = LoadTask(pool);
      Check(gs_run_episode(session.get(), task.get(), ParsePolicy(policy), k,
                           result.out()));
    } else if (*evaluate) {
      auto tasks = LoadTasks(pools);
      auto raw_tasks = Raw(tasks);
      std::optional<std::string> kills;
      std::optional<std::string> buggy;
      if (!kill_path.empty()) kills = ReadFile(kill_path);
      if (!buggy_path.empty()) buggy = ReadFile(buggy_path);
      Check(gs_evaluate(session.get(), raw_tasks.data(), raw_tasks.size(),
                        ParsePolicy(policy), k,
                        kills ? kills->c_str() : nullptr,
                        buggy ? buggy->c_str() : nullptr, result.out()));
    } else if (*group) {
      TaskPtr task = LoadTask(pool);
      const auto s = CStrings(state_ids);
      const auto a = CStrings(action_ids);
      Check(gs_score_group(session.get(), task.get(), s.data(), s.size(),
                           a.data(), a.size(), result.out()));
    } else if (*bound) {
      const int bound_k = app.get_option("--k")->count() > 0 ? k : 4;
      Check(gs_verify_bound(session.get(), instances, candidates, bound_k,
                            max_units, result.out()));
      Emit(result.str(), out_path);
      if (nlohmann::json::parse(result.str()).at("violations").get<int>() != 0) {
        std::cerr << "gs: approximation bound violated\n";
        return 1;
      }
      return 0;
    }
    Emit(result.str(), out_path);
    return 0;
  } catch (const Failure& f) {
    std::cerr << "gs: " << gs_status_name(f.status) << ": " << f.message
              << "\n";
    return 2;
  }
}
