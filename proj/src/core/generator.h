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

#ifndef GREEDYSUITE_CORE_GENERATOR_H_
#define GREEDYSUITE_CORE_GENERATOR_H_

#include <string>
#include <vector>

namespace greedysuite {

// Fixed instruction sent with every generation request.
extern const char* const kGreedyInstruction;

// A test generator acting as the policy. Generate throws kTransport for a
// failed or malformed exchange and kUnreachable when the endpoint cannot be
// reached after retries.
class GeneratorClient {
 public:
  virtual ~GeneratorClient() = default;
  virtual std::string Generate(const std::string& state_text,
                               const std::vector<std::string>& history) = 0;
};

std::string SerializeGenerateRequest(const std::string& state_text,
                                     const std::vector<std::string>& history);

// POST {"state_text","history","instruction"} -> {"test_text"}.
class HttpGenerator : public GeneratorClient {
 public:
  HttpGenerator(std::string url, int timeout_ms, int retries = 3);
  std::string Generate(const std::string& state_text,
                       const std::vector<std::string>& history) override;

 private:
  std::string url_;
  int timeout_ms_;
  int retries_;
};

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_GENERATOR_H_
