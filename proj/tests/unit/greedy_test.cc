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

#include "core/greedy.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "core/bound.h"
#include "core/error.h"
#include "gtest/gtest.h"
#include "support/test_support.h"

namespace greedysuite {
namespace {

using testing::Cand;
using testing::ReferenceGreedy;
using testing::ReferenceOptimum;
using testing::T123Pool;

using Ids = std::vector<std::string>;

TEST(GreedyTest, T123PicksLargestFirst) {
  const SelectionResult r = GreedySelect(T123Pool(), 2, {});
  EXPECT_EQ(r.chosen, (Ids{"T1", "T2"}));
  EXPECT_EQ(r.gains, (std::vector<double>{4, 1}));
  EXPECT_EQ(r.final_utility, 5.0);
  EXPECT_EQ(r.budget, 2);
}

TEST(GreedyTest, T123AgainstOptimum) {
  const CandidatePool pool = T123Pool();
  const OptimalResult opt = BruteForceOptimal(pool, 2, {});
  EXPECT_EQ(opt.chosen, (Ids{"T2", "T3"}));
  EXPECT_EQ(opt.optimal_utility, 6.0);
  const RatioReport ratio = VerifyRatio(GreedySelect(pool, 2, {}), opt);
  EXPECT_DOUBLE_EQ(ratio.ratio, 5.0 / 6.0);
  EXPECT_TRUE(ratio.bound_holds);
}

TEST(GreedyTest, TiesBreakBySmallestId) {
  auto u = CoverageUniverse::Uniform(4);
  CandidatePool pool(u, {Cand(u, "b", {0, 1}), Cand(u, "a", {2, 3}),
                         Cand(u, "c", {0, 2})});
  const SelectionResult r = GreedySelect(pool, 3, {});
  EXPECT_EQ(r.chosen, (Ids{"a", "b"}));
  EXPECT_EQ(LazyGreedySelect(pool, 3, {}), r);
}

TEST(GreedyTest, StopsEarlyOnZeroGain) {
  auto u = CoverageUniverse::Uniform(3);
  CandidatePool pool(u, {Cand(u, "only", {0, 1, 2})});
  const SelectionResult r = GreedySelect(pool, 5, {});
  EXPECT_EQ(r.chosen, (Ids{"only"}));
  EXPECT_EQ(r.budget, 5);

  CandidatePool empty_cov(u, {Cand(u, "x", {}), Cand(u, "y", {})});
  const SelectionResult e = GreedySelect(empty_cov, 2, {});
  EXPECT_TRUE(e.chosen.empty());
  EXPECT_EQ(e.final_utility, 0.0);
}

TEST(GreedyTest, InvalidCandidatesAreNeverChosen) {
  auto u = CoverageUniverse::Uniform(5);
  CandidatePool pool(u, {Cand(u, "big", {0, 1, 2, 3, 4}, false),
                         Cand(u, "small", {0})});
  EXPECT_EQ(GreedySelect(pool, 2, {}).chosen, (Ids{"small"}));
  EXPECT_EQ(BruteForceOptimal(pool, 2, {}).optimal_utility, 1.0);

  CandidatePool none(u, {Cand(u, "big", {0}, false)});
  EXPECT_TRUE(GreedySelect(none, 2, {}).chosen.empty());
  EXPECT_TRUE(LazyGreedySelect(none, 2, {}).chosen.empty());
}

TEST(GreedyTest, RejectsBadBudgetAndWeights) {
  for (int k : {0, -1}) {
    try {
      GreedySelect(T123Pool(), k, {});
      FAIL() << "k=" << k << " accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    }
    EXPECT_THROW(LazyGreedySelect(T123Pool(), k, {}), Error);
    EXPECT_THROW(BruteForceOptimal(T123Pool(), k, {}), Error);
  }
  EXPECT_THROW(GreedySelect(T123Pool(), 2, {0.0, 0.0}), Error);
}

TEST(CandidatePoolTest, DuplicateIdsRejected) {
  auto u = CoverageUniverse::Uniform(3);
  try {
    CandidatePool(u, {Cand(u, "a", {0}), Cand(u, "a", {1})});
    FAIL() << "duplicate accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateId);
  }
}

TEST(CandidatePoolTest, ForeignUniverseRejected) {
  auto u = CoverageUniverse::Uniform(3);
  auto other = CoverageUniverse::Uniform(4);
  try {
    CandidatePool(u, {Cand(other, "a", {0})});
    FAIL() << "foreign candidate accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUniverseMismatch);
  }
}

TEST(CandidatePoolTest, DigestTracksContent) {
  auto u = CoverageUniverse::Uniform(3);
  CandidatePool a(u, {Cand(u, "a", {0})});
  CandidatePool b(u, {Cand(u, "a", {0})});
  CandidatePool c(u, {Cand(u, "a", {1})});
  CandidatePool d(u, {Cand(u, "a", {0}, false)});
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_NE(a.digest(), c.digest());
  EXPECT_NE(a.digest(), d.digest());
}

TEST(BruteForceTest, BudgetCoversWholePool) {
  auto u = CoverageUniverse::Uniform(6);
  CandidatePool pool(u, {Cand(u, "a", {0, 1}), Cand(u, "b", {2}),
                         Cand(u, "c", {3, 4, 5})});
  const OptimalResult r = BruteForceOptimal(pool, 10, {});
  EXPECT_EQ(r.chosen, (Ids{"a", "b", "c"}));
  EXPECT_EQ(r.optimal_utility, 6.0);
}

TEST(BruteForceTest, LexicographicTieWinner) {
  auto u = CoverageUniverse::Uniform(2);
  CandidatePool pool(u, {Cand(u, "z", {0, 1}), Cand(u, "a", {0}),
                         Cand(u, "b", {1})});
  // {a, b} and {z} both reach 2; {a, b} is lexicographically first.
  EXPECT_EQ(BruteForceOptimal(pool, 2, {}).chosen, (Ids{"a", "b"}));
}

TEST(BruteForceTest, SizeGuard) {
  auto u = CoverageUniverse::Uniform(4);
  std::vector<TestCandidate> cands;
  for (int i = 0; i < 40; ++i) cands.push_back(Cand(u, testing::Id(i), {i % 4}));
  CandidatePool pool(u, std::move(cands));
  EXPECT_GT(Binomial(40, 10), kBruteForceLimit);
  try {
    BruteForceOptimal(pool, 10, {});
    FAIL() << "size guard did not trigger";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeGuard);
  }
  EXPECT_LE(Binomial(40, 4), kBruteForceLimit);
  EXPECT_NO_THROW(BruteForceOptimal(pool, 4, {}));
}

TEST(BinomialTest, Values) {
  EXPECT_EQ(Binomial(12, 4), 495u);
  EXPECT_EQ(Binomial(5, 0), 1u);
  EXPECT_EQ(Binomial(3, 5), 0u);
  EXPECT_EQ(Binomial(52, 5), 2598960u);
}

TEST(VerifyRatioTest, ZeroOptimumHasRatioOne) {
  auto u = CoverageUniverse::Uniform(2);
  CandidatePool pool(u, {Cand(u, "a", {})});
  const RatioReport r =
      VerifyRatio(GreedySelect(pool, 1, {}), BruteForceOptimal(pool, 1, {}));
  EXPECT_EQ(r.ratio, 1.0);
  EXPECT_TRUE(r.bound_holds);
}

TEST(VerifyRatioTest, ProvenanceMismatchRejected) {
  const CandidatePool pool = T123Pool();
  EXPECT_THROW(
      VerifyRatio(GreedySelect(pool, 2, {}), BruteForceOptimal(pool, 3, {})),
      Error);
  EXPECT_THROW(VerifyRatio(GreedySelect(pool, 2, {}),
                           BruteForceOptimal(pool, 2, {1.0, 0.5})),
               Error);
  auto u = CoverageUniverse::Uniform(6);
  CandidatePool other(u, {Cand(u, "T1", {0})});
  EXPECT_THROW(
      VerifyRatio(GreedySelect(pool, 2, {}), BruteForceOptimal(other, 2, {})),
      Error);
}

TEST(VerifyRatioTest, BoundConstant) {
  EXPECT_NEAR(kGreedyBound, 1.0 - std::exp(-1.0), 1e-15);
}

// Naive and lazy greedy agree with a set-based reference greedy and with
// each other, under unit and fractional weights.
TEST(GreedyPropertyTest, MatchesReferenceAndLazy) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 30);
    auto inst = testing::RandomInstance(rng, 60, 15, n, 0.15);
    const CandidatePool pool = testing::ToPool(inst);
    const int k = 1 + static_cast<int>(rng() % 8);
    for (const UtilityConfig cfg :
         {UtilityConfig{1.0, 1.0}, UtilityConfig{1.0, 0.5}}) {
      const SelectionResult naive = GreedySelect(pool, k, cfg);
      const SelectionResult lazy = LazyGreedySelect(pool, k, cfg);
      ASSERT_EQ(naive, lazy) << "trial " << trial;
      const auto ref =
          ReferenceGreedy(inst, k, cfg.weight_line, cfg.weight_branch);
      ASSERT_EQ(naive.chosen, ref.chosen) << "trial " << trial;
      ASSERT_NEAR(naive.final_utility, ref.utility, 1e-9);
      ASSERT_LE(static_cast<int>(naive.chosen.size()), k);
      for (std::size_t i = 1; i < naive.gains.size(); ++i) {
        ASSERT_LE(naive.gains[i], naive.gains[i - 1] + 1e-9);
      }
      for (double g : naive.gains) ASSERT_GT(g, 0.0);
    }
  }
}

// Many equal-gain candidates force every tie through the lazy refresh band.
TEST(GreedyPropertyTest, LazyMatchesNaiveOnAdversarialTies) {
  auto u = CoverageUniverse::Uniform(40);
  std::vector<TestCandidate> cands;
  for (int i = 0; i < 40; ++i) {
    cands.push_back(Cand(u, testing::Id(39 - i), {i, (i + 1) % 40}));
  }
  CandidatePool pool(u, std::move(cands));
  for (int k = 1; k <= 25; ++k) {
    EXPECT_EQ(GreedySelect(pool, k, {}), LazyGreedySelect(pool, k, {}));
  }
}

TEST(GreedyPropertyTest, LargePoolLazyEquivalence) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = testing::RandomInstance(rng, 300, 100, 50);
    const CandidatePool pool = testing::ToPool(inst);
    EXPECT_EQ(GreedySelect(pool, 5, {}), LazyGreedySelect(pool, 5, {}));
  }
}

// Bitmask oracle agrees with the library brute force, and greedy respects
// the bound against it.
TEST(GreedyPropertyTest, BruteForceMatchesBitmaskOracle) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    auto inst = testing::RandomInstance(rng, 20, 6, n, 0.1);
    const CandidatePool pool = testing::ToPool(inst);
    const int k = 1 + static_cast<int>(rng() % 5);
    const OptimalResult opt = BruteForceOptimal(pool, k, {});
    ASSERT_EQ(opt.optimal_utility, ReferenceOptimum(inst, k));
    ASSERT_LE(static_cast<int>(opt.chosen.size()), k);
    const RatioReport r = VerifyRatio(GreedySelect(pool, k, {}), opt);
    ASSERT_TRUE(r.bound_holds);
    ASSERT_LE(r.ratio, 1.0 + 1e-12);
  }
}

TEST(GreedyPropertyTest, Deterministic) {
  std::mt19937 rng(3);
  auto inst = testing::RandomInstance(rng, 50, 10, 25);
  const CandidatePool a = testing::ToPool(inst);
  const CandidatePool b = testing::ToPool(inst);
  EXPECT_EQ(GreedySelect(a, 6, {}), GreedySelect(b, 6, {}));
}

TEST(BoundExperimentTest, SmallRunHoldsAndIsDeterministic) {
  BoundExperimentConfig cfg;
  cfg.seed = 17;
  cfg.instances = 40;
  const BoundExperimentReport a = RunBoundExperiment(cfg);
  const BoundExperimentReport b = RunBoundExperiment(cfg);
  EXPECT_EQ(a.violations, 0);
  EXPECT_EQ(a.instances.size(), 40u);
  EXPECT_EQ(a.greedy_below_optimal, b.greedy_below_optimal);
  EXPECT_EQ(a.min_ratio, b.min_ratio);
  for (const BoundInstance& inst : a.instances) {
    EXPECT_GE(inst.units, cfg.min_units);
    EXPECT_LE(inst.units, cfg.max_units);
  }
}

}  // namespace
}  // namespace greedysuite
