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

#ifndef GREEDYSUITE_CORE_EXECUTOR_H_
#define GREEDYSUITE_CORE_EXECUTOR_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/reward.h"

namespace greedysuite {

// Sandbox wall-clock limit per test.
inline constexpr int kDefaultExecTimeoutMs = 3000;

struct ExecRequest {
  std::string id;
  std::string focal_source;
  std::string test_source;
  int timeout_ms = kDefaultExecTimeoutMs;
};

struct ExecResponse {
  std::string id;
  ExecStatus status = ExecStatus::kRuntimeError;
  std::vector<int> executable_lines;
  std::vector<int> covered_lines;
  std::vector<std::string> covered_branches;  // "from->to"
  bool has_assertion = false;
  int wall_time_ms = 0;
  std::optional<std::string> error_message;
};

// Wire encoding shared by the subprocess (one document per line) and HTTP
// transports. ParseExecResponse throws kTransport on a malformed body.
std::string SerializeExecRequest(const ExecRequest& request);
ExecRequest ParseExecRequest(const std::string& body);
std::string SerializeExecResponse(const ExecResponse& response);
ExecResponse ParseExecResponse(const std::string& body);

// Runs one test against a focal source. Implementations throw kTransport for
// a failed exchange (the step is then scored invalid) and kUnreachable when
// the worker cannot be reached at all.
class ExecutorClient {
 public:
  virtual ~ExecutorClient() = default;
  virtual ExecResponse Execute(const ExecRequest& request) = 0;
};

// Talks line-delimited JSON to a long-running worker started with
// `/bin/sh -c <command>`. A dead or hung worker is killed and restarted on the
// next request.
class SubprocessExecutor : public ExecutorClient {
 public:
  explicit SubprocessExecutor(std::string command);
  ~SubprocessExecutor() override;
  SubprocessExecutor(const SubprocessExecutor&) = delete;
  SubprocessExecutor& operator=(const SubprocessExecutor&) = delete;

  ExecResponse Execute(const ExecRequest& request) override;

  // Extra time allowed past timeout_ms before the worker is declared hung.
  static constexpr int kGraceMs = 2000;

 private:
  void Start();
  void Stop();
  std::string ReadLine(int deadline_ms);

  std::string command_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// POSTs the request document to `url` ("http://host:port/path").
class HttpExecutor : public ExecutorClient {
 public:
  explicit HttpExecutor(std::string url, int retries = 3);
  ExecResponse Execute(const ExecRequest& request) override;

 private:
  std::string url_;
  int retries_;
};

// "http://..." selects HttpExecutor, anything else is a subprocess command.
std::unique_ptr<ExecutorClient> MakeExecutor(const std::string& spec);

// Splits "http://host:port/path" into ("http://host:port", "/path").
std::pair<std::string, std::string> SplitUrl(const std::string& url);

}  // namespace greedysuite

#endif  // GREEDYSUITE_CORE_EXECUTOR_H_
