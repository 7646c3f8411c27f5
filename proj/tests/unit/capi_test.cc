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

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

using nlohmann::json;

const std::string kT123 = std::string(GS_FIXTURES) + "/t123.jsonl";

// Takes ownership of a string returned by the library.
std::string Take(char* s) {
  std::string out = s ? s : "";
  gs_string_free(s);
  return out;
}

class CapiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(gs_session_create(&session_), GS_OK);
    ASSERT_EQ(gs_task_load(kT123.c_str(), &task_), GS_OK) << gs_last_error();
  }
  void TearDown() override {
    gs_task_destroy(task_);
    gs_session_destroy(session_);
  }
  gs_session* session_ = nullptr;
  gs_task* task_ = nullptr;
};

TEST(CapiBasicsTest, VersionAndStatusNames) {
  EXPECT_STREQ(gs_version(), "0.1.0");
  EXPECT_STREQ(gs_status_name(GS_OK), "ok");
  EXPECT_STREQ(gs_status_name(GS_ERR_SIZE_GUARD), "size_guard");
  gs_string_free(nullptr);
  gs_task_destroy(nullptr);
  gs_session_destroy(nullptr);
}

TEST(CapiBasicsTest, LoadErrors) {
  gs_task* task = nullptr;
  EXPECT_EQ(gs_task_load("/nonexistent.jsonl", &task), GS_ERR_IO);
  EXPECT_EQ(task, nullptr);
  EXPECT_NE(std::string(gs_last_error()).find("nonexistent"), std::string::npos);
  EXPECT_EQ(gs_task_parse("{\"universe\": 3}", "x", &task), GS_ERR_PARSE);
  EXPECT_EQ(gs_task_load(nullptr, &task), GS_ERR_INVALID_ARGUMENT);
}

TEST_F(CapiTest, TaskAccessors) {
  EXPECT_STREQ(gs_task_id(task_), "t123");
  EXPECT_EQ(gs_task_candidate_count(task_), 3u);
}

TEST_F(CapiTest, SelectModes) {
  char* out = nullptr;
  ASSERT_EQ(gs_select(session_, task_, 2, GS_SELECT_NAIVE, &out), GS_OK);
  const json naive = json::parse(Take(out));
  EXPECT_EQ(naive.at("chosen"), json({"T1", "T2"}));
  EXPECT_EQ(naive.at("final_utility"), 5.0);

  ASSERT_EQ(gs_select(session_, task_, 2, GS_SELECT_LAZY, &out), GS_OK);
  json lazy = json::parse(Take(out));
  EXPECT_EQ(lazy.at("mode"), "lazy");
  lazy["mode"] = "naive";
  EXPECT_EQ(lazy, naive);

  ASSERT_EQ(gs_select(session_, task_, 2, GS_SELECT_ORACLE, &out), GS_OK);
  const json oracle = json::parse(Take(out));
  EXPECT_EQ(oracle.at("chosen"), json({"T2", "T3"}));
  EXPECT_EQ(oracle.at("optimal_utility"), 6.0);
  EXPECT_EQ(oracle.at("greedy").at("chosen"), json({"T1", "T2"}));
  EXPECT_NEAR(oracle.at("ratio").at("ratio").get<double>(), 5.0 / 6.0, 1e-12);

  EXPECT_EQ(gs_select(session_, task_, 0, GS_SELECT_NAIVE, &out),
            GS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(gs_select(session_, nullptr, 2, GS_SELECT_NAIVE, &out),
            GS_ERR_INVALID_ARGUMENT);
}

TEST_F(CapiTest, WeightsValidated) {
  EXPECT_EQ(gs_session_set_weights(session_, "line=1,branch=0.5"), GS_OK);
  EXPECT_EQ(gs_session_set_weights(session_, "line=-2"), GS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(gs_session_set_marker(session_, ""), GS_ERR_INVALID_ARGUMENT);
}

TEST_F(CapiTest, OrderAndReplay) {
  char* out = nullptr;
  ASSERT_EQ(gs_order(session_, task_, &out), GS_OK);
  const std::string order = Take(out);
  const json j = json::parse(order);
  EXPECT_EQ(j.at("steps").size(), 3u);
  EXPECT_EQ(j.at("coverage_at_k").size(), 3u);

  const char* ids[] = {"T2", "T3"};
  ASSERT_EQ(gs_replay(session_, task_, ids, 2, &out), GS_OK);
  EXPECT_EQ(json::parse(Take(out)).at("final_line_coverage"), 1.0);

  const char* dup[] = {"T2", "T2"};
  EXPECT_EQ(gs_replay(session_, task_, dup, 2, &out), GS_ERR_DUPLICATE_ID);
  const char* unknown[] = {"T7"};
  EXPECT_EQ(gs_replay(session_, task_, unknown, 1, &out),
            GS_ERR_INVALID_ARGUMENT);

  ASSERT_EQ(gs_replay_trajectory(session_, task_, order.c_str(), &out), GS_OK);
  Take(out);
  json tampered = j;
  tampered["steps"][1]["gain"] = 3.0;
  EXPECT_NE(gs_replay_trajectory(session_, task_, tampered.dump().c_str(), &out),
            GS_OK);
}

TEST_F(CapiTest, AnnotateAndStrip) {
  const char* src = "a = 1\nb = 2\nc = 3\n";
  char* out = nullptr;
  ASSERT_EQ(gs_annotate(session_, src,
                        R"({"executable_lines": [1, 2, 3], "covered_lines": [1, 3]})",
                        &out),
            GS_OK);
  const std::string annotated = Take(out);
  EXPECT_EQ(annotated, "a = 1\nb = 2 #uncovered\nc = 3\n");
  ASSERT_EQ(gs_strip_markers(session_, annotated.c_str(), &out), GS_OK);
  EXPECT_EQ(Take(out), src);
  EXPECT_EQ(gs_annotate(session_, src,
                        R"({"executable_lines": [9], "covered_lines": []})", &out),
            GS_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(gs_last_error()).find('9'), std::string::npos);
  ASSERT_EQ(gs_session_set_marker(session_, "#todo"), GS_OK);
  ASSERT_EQ(gs_annotate(session_, src,
                        R"({"executable_lines": [1], "covered_lines": []})", &out),
            GS_OK);
  EXPECT_EQ(Take(out), "a = 1 #todo\nb = 2\nc = 3\n");
}

TEST_F(CapiTest, BuildDataset) {
  const auto path =
      std::filesystem::temp_directory_path() / "gs_capi_dataset.jsonl";
  const gs_task* tasks[] = {task_};
  char* out = nullptr;
  ASSERT_EQ(gs_build_dataset(session_, tasks, 1, 0.9, path.c_str(), &out), GS_OK)
      << gs_last_error();
  const json m = json::parse(Take(out));
  EXPECT_EQ(m.at("kept_tasks"), 1);
  EXPECT_EQ(m.at("total_states"), 3);
}

TEST_F(CapiTest, EpisodeAndEvaluate) {
  char* out = nullptr;
  ASSERT_EQ(gs_run_episode(session_, task_, GS_POLICY_POOL_GREEDY, 2, &out),
            GS_OK);
  const json ep = json::parse(Take(out));
  EXPECT_EQ(ep.at("steps").size(), 2u);

  const gs_task* tasks[] = {task_};
  const char* kills = R"({"mutant_id": "m", "killed_by": ["T1"]})";
  ASSERT_EQ(gs_evaluate(session_, tasks, 1, GS_POLICY_POOL_GREEDY, 2, kills,
                        nullptr, &out),
            GS_OK);
  const json report = json::parse(Take(out));
  EXPECT_EQ(report.at("mutation_score"), 1.0);
  EXPECT_EQ(report.at("completed_tasks"), 1);

  ASSERT_EQ(gs_evaluate(session_, tasks, 1, GS_POLICY_POOL_GREEDY, 2, "",
                        nullptr, &out),
            GS_OK);
  const json empty = json::parse(Take(out));
  EXPECT_FALSE(empty.contains("mutation_score"));
  EXPECT_FALSE(empty.at("warnings").empty());

  EXPECT_EQ(gs_run_episode(session_, task_, GS_POLICY_EXTERNAL, 2, &out),
            GS_ERR_INVALID_ARGUMENT);
}

TEST_F(CapiTest, ScoreGroup) {
  const char* state[] = {"T1"};
  const char* actions[] = {"T2", "T3", "T1"};
  char* out = nullptr;
  ASSERT_EQ(gs_score_group(session_, task_, state, 1, actions, 3, &out), GS_OK)
      << gs_last_error();
  const std::string jsonl = Take(out);
  std::vector<double> rewards;
  double sum = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    const auto nl = jsonl.find('\n', pos);
    const json rec = json::parse(jsonl.substr(pos, nl - pos));
    EXPECT_EQ(rec.at("group_size"), 3);
    EXPECT_EQ(rec.at("task_id"), "t123");
    rewards.push_back(rec.at("reward").get<double>());
    sum += rec.at("advantage").get<double>();
    pos = nl + 1;
  }
  EXPECT_EQ(rewards, (std::vector<double>{0.5, 0.5, 0.0}));
  EXPECT_NEAR(sum, 0.0, 1e-12);

  const char* one[] = {"T2"};
  EXPECT_EQ(gs_score_group(session_, task_, state, 1, one, 1, &out),
            GS_ERR_INVALID_ARGUMENT);
  const char* unknown[] = {"T2", "nope"};
  EXPECT_EQ(gs_score_group(session_, task_, state, 1, unknown, 2, &out),
            GS_ERR_INVALID_ARGUMENT);
}

TEST_F(CapiTest, VerifyBound) {
  char* out = nullptr;
  ASSERT_EQ(gs_verify_bound(session_, 20, 12, 4, 40, &out), GS_OK);
  const json r = json::parse(Take(out));
  EXPECT_EQ(r.at("violations"), 0);
  EXPECT_EQ(gs_verify_bound(session_, 1, 60, 30, 40, &out), GS_ERR_SIZE_GUARD);
}

}  // namespace
