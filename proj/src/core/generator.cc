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

#include "core/generator.h"

#include <chrono>
#include <thread>

#include "core/error.h"
#include "core/executor.h"
#include "httplib.h"
#include "json.hpp"

namespace greedysuite {

using nlohmann::json;

const char* const kGreedyInstruction =
    "Write one new unit test for the function above. Lines ending in "
    "#uncovered have not been executed by the existing tests. Target those "
    "lines so the new test covers as much unexecuted code as possible, do not "
    "repeat behaviour the existing tests already check, and assert the "
    "behaviour you exercise.";

std::string SerializeGenerateRequest(const std::string& state_text,
                                     const std::vector<std::string>& history) {
  return json{{"state_text", state_text},
              {"history", history},
              {"instruction", kGreedyInstruction}}
      .dump();
}

HttpGenerator::HttpGenerator(std::string url, int timeout_ms, int retries)
    : url_(std::move(url)), timeout_ms_(timeout_ms), retries_(retries) {}

std::string HttpGenerator::Generate(const std::string& state_text,
                                    const std::vector<std::string>& history) {
  const auto [base, path] = SplitUrl(url_);
  httplib::Client client(base);
  client.set_read_timeout(std::chrono::milliseconds(timeout_ms_));
  client.set_write_timeout(std::chrono::milliseconds(timeout_ms_));
  client.set_connection_timeout(std::chrono::seconds(2));
  const std::string body = SerializeGenerateRequest(state_text, history);
  for (int attempt = 0;; ++attempt) {
    auto res = client.Post(path, body, "application/json");
    if (res) {
      if (res->status != 200) {
        throw Error(ErrorCode::kTransport,
                    "generator HTTP status " + std::to_string(res->status));
      }
      try {
        return json::parse(res->body).at("test_text").get<std::string>();
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kTransport,
                    std::string("malformed generator response: ") + e.what());
      }
    }
    if (res.error() != httplib::Error::Connection) {
      throw Error(ErrorCode::kTransport, "generator request failed: " +
                                             httplib::to_string(res.error()));
    }
    if (attempt + 1 >= retries_) {
      throw Error(ErrorCode::kUnreachable,
                  "generator " + url_ + " unreachable after " +
                      std::to_string(retries_) + " attempts");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(100 << attempt));
  }
}

}  // namespace greedysuite
