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

#include "core/annotator.h"

#include <algorithm>
#include <vector>

#include "core/error.h"

namespace greedysuite {

namespace {

struct LineSpan {
  std::string_view content;     // without terminator
  std::string_view terminator;  // "", "\n" or "\r\n"
};

std::vector<LineSpan> SplitLines(std::string_view text) {
  std::vector<LineSpan> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      out.push_back({text.substr(pos), {}});
      break;
    }
    std::size_t end = nl;
    if (end > pos && text[end - 1] == '\r') --end;
    out.push_back({text.substr(pos, end - pos), text.substr(end, nl + 1 - end)});
    pos = nl + 1;
  }
  return out;
}

std::string JoinInts(const std::vector<int>& values) {
  std::string s;
  for (int v : values) {
    if (!s.empty()) s += ", ";
    s += std::to_string(v);
  }
  return s;
}

}  // namespace

void AnnotationConfig::Validate() const {
  if (marker_text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "marker text must be nonempty");
  }
  if (marker_text.find_first_of("\r\n") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "marker text must not contain a line break");
  }
  if (context_window < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "context window must be non-negative");
  }
}

int CountLines(std::string_view text) {
  return static_cast<int>(SplitLines(text).size());
}

std::string ProjectUncovered(std::string_view source,
                             const std::set<int>& executable_lines,
                             const std::set<int>& covered_lines,
                             const AnnotationConfig& cfg) {
  cfg.Validate();
  const std::vector<LineSpan> lines = SplitLines(source);
  const int n = static_cast<int>(lines.size());

  std::vector<int> out_of_range;
  for (const auto* set : {&executable_lines, &covered_lines}) {
    for (int line : *set) {
      if (line < 1 || line > n) out_of_range.push_back(line);
    }
  }
  if (!out_of_range.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "line numbers outside 1.." + std::to_string(n) + ": " +
                    JoinInts(out_of_range));
  }
  std::vector<int> stray;
  for (int line : covered_lines) {
    if (!executable_lines.contains(line)) stray.push_back(line);
  }
  if (!stray.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "covered lines not in the executable set: " + JoinInts(stray));
  }

  std::vector<bool> marked(n + 1, false);
  for (int line : executable_lines) {
    if (!covered_lines.contains(line)) marked[line] = true;
  }

  std::vector<bool> keep(n + 1, true);
  if (cfg.context_window > 0) {
    bool any = false;
    std::fill(keep.begin(), keep.end(), false);
    for (int line = 1; line <= n; ++line) {
      if (!marked[line]) continue;
      any = true;
      for (int j = std::max(1, line - cfg.context_window);
           j <= std::min(n, line + cfg.context_window); ++j) {
        keep[j] = true;
      }
    }
    if (!any) std::fill(keep.begin(), keep.end(), true);
  }

  std::string out;
  out.reserve(source.size() + 16 * executable_lines.size());
  bool eliding = false;
  for (int line = 1; line <= n; ++line) {
    const LineSpan& span = lines[line - 1];
    if (!keep[line]) {
      if (!eliding) {
        out += cfg.comment_prefix;
        out += " ...\n";
      }
      eliding = true;
      continue;
    }
    eliding = false;
    out += span.content;
    if (marked[line]) {
      out += ' ';
      out += cfg.marker_text;
    }
    out += span.terminator;
  }
  return out;
}

std::string StripMarkers(std::string_view annotated,
                         const AnnotationConfig& cfg) {
  cfg.Validate();
  const std::string suffix = " " + cfg.marker_text;
  std::string out;
  out.reserve(annotated.size());
  for (const LineSpan& span : SplitLines(annotated)) {
    std::string_view content = span.content;
    if (content.ends_with(suffix)) {
      content.remove_suffix(suffix.size());
    }
    out += content;
    out += span.terminator;
  }
  return out;
}

}  // namespace greedysuite
