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

#ifndef GREEDYSUITE_CORE_ERROR_H_
#define GREEDYSUITE_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace greedysuite {

// Numeric values are mirrored by gs_status in the public C header.
enum class ErrorCode {
  kInvalidArgument = 1,
  kUniverseMismatch = 2,
  kDuplicateId = 3,
  kParse = 4,
  kSizeGuard = 5,
  kIo = 6,
  kTransport = 7,
  kUnreachable = 8,
  kInternal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the 1-based line of the offending input record.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& detail, const std::string& source = "")
      : Error(ErrorCode::kParse,
              (source.empty() ? "line " : source + ":") +
                  std::to_string(line) + ": " + detail),
        line_(line),
        detail_(detail) {}

  int line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  std::string detail_;
};

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_ERROR_H_
