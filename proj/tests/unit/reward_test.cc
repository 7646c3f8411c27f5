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

#include <random>
#include <vector>

#include "core/error.h"
#include "core/json_io.h"
#include "gtest/gtest.h"

namespace greedysuite {
namespace {

ExecutionOutcome Outcome(const UniversePtr& u, std::initializer_list<int> ids,
                         ExecStatus status = ExecStatus::kPass,
                         bool has_assertion = true) {
  ExecutionOutcome o;
  o.test_id = "t";
  o.status = status;
  o.covered = CoverageVector(u, ids);
  o.has_assertion = has_assertion;
  return o;
}

SuiteState StateCovering(const UniversePtr& u, std::initializer_list<int> ids) {
  SuiteState s = InitialState(u);
  s.covered = CoverageVector(u, ids);
  return s;
}

TEST(ValidityTest, RequiresPassAndAssertion) {
  auto u = CoverageUniverse::Uniform(2);
  EXPECT_TRUE(IsValid(Outcome(u, {})));
  EXPECT_FALSE(IsValid(Outcome(u, {}, ExecStatus::kPass, false)));
  for (ExecStatus s : {ExecStatus::kFail, ExecStatus::kRuntimeError,
                       ExecStatus::kSyntaxError, ExecStatus::kTimeout}) {
    EXPECT_FALSE(IsValid(Outcome(u, {}, s)));
  }
}

TEST(ExecStatusTest, NamesRoundTrip) {
  for (ExecStatus s : {ExecStatus::kPass, ExecStatus::kFail,
                       ExecStatus::kRuntimeError, ExecStatus::kSyntaxError,
                       ExecStatus::kTimeout}) {
    EXPECT_EQ(ParseExecStatus(ExecStatusName(s)), s);
  }
  EXPECT_THROW(ParseExecStatus("crashed"), Error);
}

TEST(DeltaCovTest, Examples) {
  EXPECT_DOUBLE_EQ(DeltaCov(10, 4, 7), 0.5);
  EXPECT_DOUBLE_EQ(DeltaCov(10, 0, 10), 1.0);
  EXPECT_DOUBLE_EQ(DeltaCov(10, 4, 4), 0.0);
  EXPECT_DOUBLE_EQ(DeltaCov(10, 10, 10), 0.0);  // saturated
  EXPECT_DOUBLE_EQ(DeltaCov(0, 0, 0), 0.0);
}

TEST(DeltaCovTest, RejectsInconsistentCounts) {
  EXPECT_THROW(DeltaCov(10, 5, 4), Error);
  EXPECT_THROW(DeltaCov(10, 2, 11), Error);
  EXPECT_THROW(DeltaCov(10, -1, 3), Error);
}

TEST(StepRewardTest, CountsLinesOnly) {
  auto u = CoverageUniverse::Uniform(4, 4);
  const SuiteState s = StateCovering(u, {0});
  // Two of three remaining lines; branch units do not count.
  EXPECT_DOUBLE_EQ(StepReward(s, Outcome(u, {1, 2, 4, 5, 6})), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(StepReward(s, Outcome(u, {4, 5})), 0.0);
}

TEST(StepRewardTest, GateZeroesInvalid) {
  auto u = CoverageUniverse::Uniform(4);
  const SuiteState s = InitialState(u);
  EXPECT_EQ(StepReward(s, Outcome(u, {0, 1, 2, 3}, ExecStatus::kFail)), 0.0);
  EXPECT_EQ(StepReward(s, Outcome(u, {0, 1}, ExecStatus::kPass, false)), 0.0);
  EXPECT_EQ(StepReward(s, Outcome(u, {0, 1, 2, 3})), 1.0);
}

TEST(StepRewardTest, UniverseMismatch) {
  auto u = CoverageUniverse::Uniform(4);
  auto other = CoverageUniverse::Uniform(5);
  try {
    StepReward(InitialState(u), Outcome(other, {0}));
    FAIL() << "mismatch accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUniverseMismatch);
  }
}

TEST(AdvantageTest, SingleWinner) {
  std::vector<double> r = {1, 0, 0, 0, 0, 0, 0, 0};
  const auto a = GroupAdvantages(r);
  ASSERT_EQ(a.size(), 8u);
  EXPECT_DOUBLE_EQ(a[0], 0.875);
  for (int i = 1; i < 8; ++i) EXPECT_DOUBLE_EQ(a[i], -0.125);
}

TEST(AdvantageTest, UniformGroupIsZero) {
  std::vector<double> r(8, 0.3);
  for (double a : GroupAdvantages(r)) EXPECT_NEAR(a, 0.0, 1e-15);
}

TEST(AdvantageTest, RejectsTinyGroups) {
  std::vector<double> one = {0.5};
  EXPECT_THROW(GroupAdvantages(one), Error);
  EXPECT_THROW(GroupAdvantages(std::vector<double>{}), Error);
}

TEST(AdvantageTest, Defaults) {
  EXPECT_EQ(kDefaultGroupSize, 8);
  EXPECT_EQ(kDefaultKlBeta, 0.001);
}

TEST(AdvantagePropertyTest, CentredAndElementwise) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit01(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int g = 2 + static_cast<int>(rng() % 15);
    std::vector<double> r(g);
    for (double& x : r) x = unit01(rng);
    const auto a = GroupAdvantages(r);
    long double sum = 0, mean = 0;
    for (double x : r) mean += x;
    mean /= g;
    for (int i = 0; i < g; ++i) {
      ASSERT_NEAR(a[i], static_cast<double>(r[i] - mean), 1e-12);
      sum += a[i];
    }
    ASSERT_NEAR(static_cast<double>(sum), 0.0, 1e-9);
  }
}

TEST(RewardGroupTest, BuildAndEmit) {
  auto u = CoverageUniverse::Uniform(4);
  const SuiteState s = StateCovering(u, {0, 1});
  std::vector<GroupAction> actions = {
      {"full", Outcome(u, {2, 3})},
      {"half", Outcome(u, {2})},
      {"dup", Outcome(u, {0})},
      {"broken", Outcome(u, {2, 3}, ExecStatus::kSyntaxError)},
  };
  const RewardGroup g = BuildRewardGroup(s, actions);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_DOUBLE_EQ(g.samples[0].reward, 1.0);
  EXPECT_DOUBLE_EQ(g.samples[1].reward, 0.5);
  EXPECT_DOUBLE_EQ(g.samples[2].reward, 0.0);
  EXPECT_DOUBLE_EQ(g.samples[3].reward, 0.0);
  EXPECT_DOUBLE_EQ(g.advantages[0], 1.0 - 0.375);

  const auto recs = EmitTrainingRecords(g, "task", "state text", 7);
  ASSERT_EQ(recs.size(), 4u);
  double sum = 0;
  for (const auto& rec : recs) {
    EXPECT_EQ(rec.group_size, 4);
    EXPECT_EQ(rec.seed, 7u);
    EXPECT_EQ(rec.universe_digest, u->digest_hex());
    sum += rec.advantage;
  }
  EXPECT_NEAR(sum, 0.0, 1e-12);

  const auto back = TrainingRecordsFromJsonl(ToJsonl(recs));
  EXPECT_EQ(back, recs);
}

TEST(RewardGroupTest, RejectsSingleAction) {
  auto u = CoverageUniverse::Uniform(2);
  std::vector<GroupAction> one = {{"only", Outcome(u, {0})}};
  EXPECT_THROW(BuildRewardGroup(InitialState(u), one), Error);
}

}  // namespace
}  // namespace greedysuite
