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

#include <algorithm>
#include <functional>
#include <queue>
#include <unordered_map>

#include "core/error.h"

namespace greedysuite {

CandidatePool::CandidatePool(UniversePtr universe,
                             std::vector<TestCandidate> candidates)
    : universe_(std::move(universe)), candidates_(std::move(candidates)) {
  if (!universe_) {
    throw Error(ErrorCode::kInvalidArgument, "candidate pool needs a universe");
  }
  const CoverageVector reference(universe_);
  std::unordered_map<std::string, std::size_t> seen;
  std::uint64_t h = Fnv1a(universe_->digest_hex());
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    const TestCandidate& c = candidates_[i];
    auto [it, inserted] = seen.emplace(c.id, i);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate candidate id '" + c.id + "' (positions " +
                      std::to_string(it->second) + " and " +
                      std::to_string(i) + ")");
    }
    if (!c.coverage.SameUniverse(reference)) {
      throw Error(ErrorCode::kUniverseMismatch,
                  "candidate '" + c.id + "' covers a different universe");
    }
    h = Fnv1a(c.id + (c.valid ? "\x1fv\x1f" : "\x1fi\x1f"), h);
    for (std::uint64_t w : c.coverage.words()) h = Fnv1a(HexDigest(w), h);
  }
  digest_ = h;
}

const TestCandidate* CandidatePool::Find(const std::string& id) const {
  for (const TestCandidate& c : candidates_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::vector<const TestCandidate*> CandidatePool::ValidById() const {
  std::vector<const TestCandidate*> out;
  for (const TestCandidate& c : candidates_) {
    if (c.valid) out.push_back(&c);
  }
  std::sort(out.begin(), out.end(),
            [](const TestCandidate* a, const TestCandidate* b) {
              return a->id < b->id;
            });
  return out;
}

namespace {

void CheckSelectArgs(const CandidatePool& pool, int k,
                     const UtilityConfig& cfg) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "budget K must be >= 1, got " + std::to_string(k));
  }
  if (!pool.universe()) {
    throw Error(ErrorCode::kInvalidArgument, "pool has no universe");
  }
  cfg.Validate();
}

SelectionResult EmptyResult(const CandidatePool& pool, int k,
                            const UtilityConfig& cfg) {
  SelectionResult r;
  r.budget = k;
  r.provenance = {pool.digest(), k, cfg.weight_line, cfg.weight_branch};
  return r;
}

void Commit(SelectionResult& result, CoverageVector& covered,
            const TestCandidate& pick, double gain) {
  result.chosen.push_back(pick.id);
  result.gains.push_back(gain);
  result.final_utility += gain;
  covered |= pick.coverage;
}

}  // namespace

SelectionResult GreedySelect(const CandidatePool& pool, int k,
                             const UtilityConfig& cfg) {
  CheckSelectArgs(pool, k, cfg);
  SelectionResult result = EmptyResult(pool, k, cfg);
  std::vector<const TestCandidate*> remaining = pool.ValidById();
  CoverageVector covered(pool.universe());
  std::vector<double> gains;
  while (static_cast<int>(result.chosen.size()) < k && !remaining.empty()) {
    gains.clear();
    double best = 0.0;
    for (const TestCandidate* c : remaining) {
      gains.push_back(MarginalGain(covered, c->coverage, cfg));
      best = std::max(best, gains.back());
    }
    if (best <= kUtilityTolerance) break;
    // `remaining` is id-sorted, so the first near-maximal entry wins ties.
    std::size_t pick = 0;
    while (gains[pick] < best - kUtilityTolerance) ++pick;
    Commit(result, covered, *remaining[pick], gains[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return result;
}

SelectionResult LazyGreedySelect(const CandidatePool& pool, int k,
                                 const UtilityConfig& cfg) {
  CheckSelectArgs(pool, k, cfg);
  SelectionResult result = EmptyResult(pool, k, cfg);

  struct Entry {
    double bound;
    const TestCandidate* candidate;
    int fresh_at;  // step at which `bound` is the exact gain
  };
  auto lower_priority = [](const Entry& a, const Entry& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.candidate->id > b.candidate->id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)>
      heap(lower_priority);

  CoverageVector covered(pool.universe());
  for (const TestCandidate* c : pool.ValidById()) {
    heap.push({MarginalGain(covered, c->coverage, cfg), c, 0});
  }

  for (int step = 0; step < k && !heap.empty(); ++step) {
    while (heap.top().fresh_at != step) {
      Entry e = heap.top();
      heap.pop();
      e.bound = MarginalGain(covered, e.candidate->coverage, cfg);
      e.fresh_at = step;
      heap.push(e);
    }
    const double best = heap.top().bound;
    if (best <= kUtilityTolerance) break;

    // Everything whose bound reaches the tie band may tie with the maximum;
    // refresh those and apply the smallest-id rule among exact contenders.
    std::vector<Entry> band;
    while (!heap.empty() && heap.top().bound >= best - kUtilityTolerance) {
      Entry e = heap.top();
      heap.pop();
      if (e.fresh_at != step) {
        e.bound = MarginalGain(covered, e.candidate->coverage, cfg);
        e.fresh_at = step;
      }
      band.push_back(e);
    }
    std::size_t pick = band.size();
    for (std::size_t i = 0; i < band.size(); ++i) {
      if (band[i].bound < best - kUtilityTolerance) continue;
      if (pick == band.size() ||
          band[i].candidate->id < band[pick].candidate->id) {
        pick = i;
      }
    }
    for (std::size_t i = 0; i < band.size(); ++i) {
      if (i != pick) heap.push(band[i]);
    }
    Commit(result, covered, *band[pick].candidate, band[pick].bound);
  }
  return result;
}

std::uint64_t Binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

OptimalResult BruteForceOptimal(const CandidatePool& pool, int k,
                                const UtilityConfig& cfg) {
  CheckSelectArgs(pool, k, cfg);
  const std::vector<const TestCandidate*> valid = pool.ValidById();
  const std::size_t n = valid.size();
  const std::size_t depth = std::min<std::size_t>(static_cast<std::size_t>(k), n);
  if (Binomial(n, depth) > kBruteForceLimit) {
    throw Error(ErrorCode::kSizeGuard,
                "brute force needs C(" + std::to_string(n) + ", " +
                    std::to_string(depth) + ") <= " +
                    std::to_string(kBruteForceLimit) + " subsets");
  }

  OptimalResult best;
  best.provenance = {pool.digest(), k, cfg.weight_line, cfg.weight_branch};
  best.optimal_utility = 0.0;
  std::vector<std::size_t> stack;

  // Pre-order walk over id-sorted combinations visits subsets in
  // lexicographic order, so the first strict improvement is the tie winner.
  std::function<void(std::size_t, const CoverageVector&)> visit =
      [&](std::size_t start, const CoverageVector& covered) {
        const double u = Utility(covered, cfg);
        if (u > best.optimal_utility + kUtilityTolerance) {
          best.optimal_utility = u;
          best.chosen.clear();
          for (std::size_t i : stack) best.chosen.push_back(valid[i]->id);
        }
        if (stack.size() == depth) return;
        for (std::size_t i = start; i < n; ++i) {
          stack.push_back(i);
          visit(i + 1, covered | valid[i]->coverage);
          stack.pop_back();
        }
      };
  visit(0, CoverageVector(pool.universe()));
  return best;
}

RatioReport VerifyRatio(const SelectionResult& greedy,
                        const OptimalResult& optimal) {
  if (!(greedy.provenance == optimal.provenance)) {
    throw Error(ErrorCode::kInvalidArgument,
                "greedy and optimal results come from different "
                "pool/budget/weight configurations");
  }
  RatioReport r;
  r.greedy_utility = greedy.final_utility;
  r.optimal_utility = optimal.optimal_utility;
  r.ratio = optimal.optimal_utility <= kUtilityTolerance
                ? 1.0
                : greedy.final_utility / optimal.optimal_utility;
  r.bound_holds = r.ratio >= kGreedyBound - 1e-9;
  return r;
}

}  // namespace greedysuite
