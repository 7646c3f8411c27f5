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

#include "core/coverage.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_set>

#include "core/error.h"

namespace greedysuite {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t WordCount(std::size_t width) {
  return (width + kWordBits - 1) / kWordBits;
}

std::size_t PopcountAnd(const std::vector<std::uint64_t>& a,
                        const std::vector<std::uint64_t>& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] & b[i]);
  return n;
}

}  // namespace

const char* UnitKindName(UnitKind kind) {
  return kind == UnitKind::kLine ? "line" : "branch";
}

UnitKind ParseUnitKind(const std::string& name) {
  if (name == "line") return UnitKind::kLine;
  if (name == "branch") return UnitKind::kBranch;
  throw Error(ErrorCode::kInvalidArgument, "unknown unit kind '" + name + "'");
}

std::uint64_t Fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string HexDigest(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::shared_ptr<const CoverageUniverse> CoverageUniverse::Create(
    std::vector<CoverageUnit> units) {
  std::shared_ptr<CoverageUniverse> u(new CoverageUniverse());
  std::vector<bool> seen(units.size(), false);
  std::unordered_set<std::string> labels;
  for (const CoverageUnit& unit : units) {
    if (unit.id < 0 || static_cast<std::size_t>(unit.id) >= units.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unit id " + std::to_string(unit.id) +
                      " outside dense range 0.." +
                      std::to_string(static_cast<long>(units.size()) - 1));
    }
    if (seen[unit.id]) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate unit id " + std::to_string(unit.id));
    }
    seen[unit.id] = true;
    if (!labels.insert(unit.label).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate unit label '" + unit.label + "'");
    }
  }
  std::sort(units.begin(), units.end(),
            [](const CoverageUnit& a, const CoverageUnit& b) {
              return a.id < b.id;
            });
  u->units_ = std::move(units);
  u->line_mask_.assign(WordCount(u->units_.size()), 0);
  u->branch_mask_.assign(WordCount(u->units_.size()), 0);
  std::uint64_t h = Fnv1a("universe");
  for (const CoverageUnit& unit : u->units_) {
    auto& mask =
        unit.kind == UnitKind::kLine ? u->line_mask_ : u->branch_mask_;
    mask[unit.id / kWordBits] |= std::uint64_t{1} << (unit.id % kWordBits);
    if (unit.kind == UnitKind::kLine) ++u->line_count_;
    std::string rec = std::to_string(unit.id) + '\x1f' +
                      UnitKindName(unit.kind) + '\x1f' + unit.label + '\x1e';
    h = Fnv1a(rec, h);
  }
  u->digest_ = h;
  return u;
}

std::shared_ptr<const CoverageUniverse> CoverageUniverse::Uniform(
    int lines, int branches) {
  std::vector<CoverageUnit> units;
  for (int i = 0; i < lines; ++i) {
    units.push_back({i, UnitKind::kLine, "L" + std::to_string(i)});
  }
  for (int i = 0; i < branches; ++i) {
    units.push_back({lines + i, UnitKind::kBranch, "B" + std::to_string(i)});
  }
  return Create(std::move(units));
}

std::string CoverageUniverse::digest_hex() const { return HexDigest(digest_); }

CoverageVector::CoverageVector(UniversePtr universe)
    : universe_(std::move(universe)) {
  if (!universe_) {
    throw Error(ErrorCode::kInvalidArgument, "coverage vector needs a universe");
  }
  width_ = universe_->size();
  words_.assign(WordCount(width_), 0);
}

CoverageVector::CoverageVector(UniversePtr universe,
                               std::span<const int> unit_ids)
    : CoverageVector(std::move(universe)) {
  for (int id : unit_ids) set(id);
}

CoverageVector::CoverageVector(UniversePtr universe,
                               std::initializer_list<int> unit_ids)
    : CoverageVector(std::move(universe),
                     std::span<const int>(unit_ids.begin(), unit_ids.size())) {}

bool CoverageVector::test(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= width_) return false;
  return (words_[id / kWordBits] >> (id % kWordBits)) & 1U;
}

void CoverageVector::set(int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= width_) {
    throw Error(ErrorCode::kInvalidArgument,
                "unit id " + std::to_string(id) + " out of range for universe of " +
                    std::to_string(width_) + " units");
  }
  words_[id / kWordBits] |= std::uint64_t{1} << (id % kWordBits);
}

std::size_t CoverageVector::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

std::size_t CoverageVector::count_lines() const {
  return universe_ ? PopcountAnd(words_, universe_->line_mask()) : 0;
}

std::size_t CoverageVector::count_branches() const {
  return universe_ ? PopcountAnd(words_, universe_->branch_mask()) : 0;
}

std::vector<int> CoverageVector::ids() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      int bit = std::countr_zero(bits);
      out.push_back(static_cast<int>(w * kWordBits + bit));
      bits &= bits - 1;
    }
  }
  return out;
}

bool CoverageVector::SameUniverse(const CoverageVector& other) const {
  if (!universe_ || !other.universe_) return false;
  return universe_ == other.universe_ ||
         (width_ == other.width_ &&
          universe_->digest() == other.universe_->digest());
}

void CoverageVector::CheckSameUniverse(const CoverageVector& other) const {
  if (!SameUniverse(other)) {
    throw Error(ErrorCode::kUniverseMismatch,
                "coverage vectors belong to different universes");
  }
}

CoverageVector& CoverageVector::operator|=(const CoverageVector& other) {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

CoverageVector CoverageVector::Minus(const CoverageVector& other) const {
  CheckSameUniverse(other);
  CoverageVector out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] &= ~other.words_[i];
  }
  return out;
}

bool operator==(const CoverageVector& a, const CoverageVector& b) {
  return a.SameUniverse(b) && a.words_ == b.words_;
}

void UtilityConfig::Validate() const {
  auto ok = [](double w) { return std::isfinite(w) && w >= 0.0; };
  if (!ok(weight_line) || !ok(weight_branch)) {
    throw Error(ErrorCode::kInvalidArgument,
                "utility weights must be finite and non-negative");
  }
  if (weight_line == 0.0 && weight_branch == 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "at least one utility weight must be positive");
  }
}

UtilityConfig UtilityConfig::Parse(const std::string& spec) {
  UtilityConfig cfg;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight '" + item + "' is not key=value");
    }
    std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight '" + item + "' has a non-numeric value");
    }
    if (key == "line") {
      cfg.weight_line = value;
    } else if (key == "branch") {
      cfg.weight_branch = value;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown weight key '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

double Utility(const CoverageVector& covered, const UtilityConfig& cfg) {
  if (!covered.universe()) {
    throw Error(ErrorCode::kUniverseMismatch, "coverage vector has no universe");
  }
  const std::size_t lines = covered.count_lines();
  const std::size_t branches = covered.count_branches();
  if (cfg.unit_weights()) return static_cast<double>(lines + branches);
  return cfg.weight_line * static_cast<double>(lines) +
         cfg.weight_branch * static_cast<double>(branches);
}

double MarginalGain(const CoverageVector& current,
                    const CoverageVector& candidate, const UtilityConfig& cfg) {
  return Utility(candidate.Minus(current), cfg);
}

CoverageVector UnionCovered(const UniversePtr& universe,
                            std::span<const CoverageVector> vectors) {
  CoverageVector out(universe);
  for (const CoverageVector& v : vectors) out |= v;
  return out;
}

}  // namespace greedysuite
