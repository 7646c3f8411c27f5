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

#ifndef GREEDYSUITE_CORE_ANNOTATOR_H_
#define GREEDYSUITE_CORE_ANNOTATOR_H_

#include <set>
#include <string>
#include <string_view>

namespace greedysuite {

struct AnnotationConfig {
  std::string marker_text = "#uncovered";
  std::string comment_prefix = "#";
  // 0 renders the whole file. Otherwise only lines within this distance of a
  // marked line are kept and each elided run becomes "<prefix> ...". Windowed
  // output is not invertible by StripMarkers.
  int context_window = 0;

  void Validate() const;
};

// Appends " <marker>" to every line in executable \ covered and leaves all
// other bytes alone. Line numbers are 1-based. Throws kInvalidArgument naming
// the offending values when a line is out of range or covered is not a subset
// of executable.
//
// StripMarkers inverts this exactly unless an unmarked source line already
// ends in " <marker>".
std::string ProjectUncovered(std::string_view source,
                             const std::set<int>& executable_lines,
                             const std::set<int>& covered_lines,
                             const AnnotationConfig& cfg = {});

// Removes one trailing " <marker>" from each line that ends with it.
std::string StripMarkers(std::string_view annotated,
                         const AnnotationConfig& cfg = {});

// Number of lines as ProjectUncovered counts them: a trailing newline does
// not start a new line.
int CountLines(std::string_view text);

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_ANNOTATOR_H_
