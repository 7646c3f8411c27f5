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

#ifndef GREEDYSUITE_CORE_COVERAGE_H_
#define GREEDYSUITE_CORE_COVERAGE_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace greedysuite {

enum class UnitKind { kLine, kBranch };

const char* UnitKindName(UnitKind kind);
UnitKind ParseUnitKind(const std::string& name);

struct CoverageUnit {
  int id = 0;
  UnitKind kind = UnitKind::kLine;
  std::string label;
};

// The finite set of checkable units for one program under test. Unit ids are
// dense indices 0..size()-1; labels are unique and display-only. Always held
// through a shared_ptr<const>, never mutated after Create().
class CoverageUniverse {
 public:
  static std::shared_ptr<const CoverageUniverse> Create(
      std::vector<CoverageUnit> units);

  // Convenience for tests and synthetic instances: `lines` line units labelled
  // "L<i>" followed by `branches` branch units labelled "B<i>".
  static std::shared_ptr<const CoverageUniverse> Uniform(int lines,
                                                         int branches = 0);

  std::size_t size() const { return units_.size(); }
  const std::vector<CoverageUnit>& units() const { return units_; }
  const CoverageUnit& unit(int id) const { return units_.at(id); }
  int line_count() const { return line_count_; }
  int branch_count() const { return static_cast<int>(size()) - line_count_; }

  // Content hash over (id, kind, label); equal universes compare equal even
  // when loaded separately.
  std::uint64_t digest() const { return digest_; }
  std::string digest_hex() const;

  const std::vector<std::uint64_t>& line_mask() const { return line_mask_; }
  const std::vector<std::uint64_t>& branch_mask() const { return branch_mask_; }

 private:
  CoverageUniverse() = default;

  std::vector<CoverageUnit> units_;
  int line_count_ = 0;
  std::uint64_t digest_ = 0;
  std::vector<std::uint64_t> line_mask_;
  std::vector<std::uint64_t> branch_mask_;
};

using UniversePtr = std::shared_ptr<const CoverageUniverse>;

// Fixed-width membership bitset over the unit ids of one universe.
class CoverageVector {
 public:
  CoverageVector() = default;
  explicit CoverageVector(UniversePtr universe);
  CoverageVector(UniversePtr universe, std::span<const int> unit_ids);
  CoverageVector(UniversePtr universe, std::initializer_list<int> unit_ids);

  const UniversePtr& universe() const { return universe_; }
  std::size_t width() const { return width_; }

  bool test(int id) const;
  void set(int id);
  std::size_t count() const;
  std::size_t count_lines() const;
  std::size_t count_branches() const;
  bool empty() const { return count() == 0; }

  std::vector<int> ids() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool SameUniverse(const CoverageVector& other) const;
  // Throws kUniverseMismatch when `other` belongs to a different universe.
  void CheckSameUniverse(const CoverageVector& other) const;

  CoverageVector& operator|=(const CoverageVector& other);
  friend CoverageVector operator|(CoverageVector lhs,
                                  const CoverageVector& rhs) {
    lhs |= rhs;
    return lhs;
  }
  // Units in *this that are not in `other`.
  CoverageVector Minus(const CoverageVector& other) const;

  friend bool operator==(const CoverageVector& a, const CoverageVector& b);

 private:
  UniversePtr universe_;
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct UtilityConfig {
  double weight_line = 1.0;
  double weight_branch = 1.0;

  // Throws kInvalidArgument unless both weights are finite, non-negative and
  // at least one is positive.
  void Validate() const;
  bool unit_weights() const { return weight_line == 1.0 && weight_branch == 1.0; }

  // "line=1,branch=0.5"; missing keys keep their defaults.
  static UtilityConfig Parse(const std::string& spec);
};

// Absolute tolerance for comparing weighted utilities.
inline constexpr double kUtilityTolerance = 1e-9;

double Utility(const CoverageVector& covered, const UtilityConfig& cfg);
double MarginalGain(const CoverageVector& current,
                    const CoverageVector& candidate, const UtilityConfig& cfg);
// An empty list yields an all-zero vector over `universe`.
CoverageVector UnionCovered(const UniversePtr& universe,
                            std::span<const CoverageVector> vectors);

// FNV-1a, used for digests throughout.
std::uint64_t Fnv1a(std::string_view bytes,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string HexDigest(std::uint64_t value);

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_COVERAGE_H_
