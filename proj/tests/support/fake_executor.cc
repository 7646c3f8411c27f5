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

// Line-delimited JSON worker for tests. It does not run anything: the test
// source carries directives that script the reply.
//
//   # covers: 1,2,4        covered_lines (executable_lines default to these)
//   # executable: 1,2,3,4  executable_lines
//   # arcs: 2->4,8->10     covered_branches
//   # status: fail         status (default pass)
//   # sleep_ms: 500        delay before replying
//   # crash                exit without replying
//   # garbage              reply with a line that is not JSON
//   # wrong_id             reply with a different request id
//
// has_assertion is true when the test source contains "assert".

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

namespace {

std::string Directive(const std::string& text, const std::string& key) {
  const std::string tag = "# " + key + ":";
  auto pos = text.find(tag);
  if (pos == std::string::npos) return "";
  pos += tag.size();
  auto end = text.find('\n', pos);
  std::string value = text.substr(pos, end == std::string::npos ? end : end - pos);
  value.erase(0, value.find_first_not_of(' '));
  return value;
}

std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> Ints(const std::string& s) {
  std::vector<int> out;
  for (const std::string& item : SplitComma(s)) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main() {
  std::string line;
  while (std::getline(std::cin, line)) {
    const nlohmann::json req = nlohmann::json::parse(line);
    const std::string test = req.at("test_source").get<std::string>();
    if (test.find("# crash") != std::string::npos) return 3;
    if (const std::string ms = Directive(test, "sleep_ms"); !ms.empty()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(std::stoi(ms)));
    }
    if (test.find("# garbage") != std::string::npos) {
      std::cout << "this is not json" << std::endl;
      continue;
    }
    std::string id = req.at("id").get<std::string>();
    if (test.find("# wrong_id") != std::string::npos) id += "-other";
    const std::vector<int> covered = Ints(Directive(test, "covers"));
    const std::string exec = Directive(test, "executable");
    const std::string status = Directive(test, "status");
    nlohmann::json resp = {
        {"id", id},
        {"status", status.empty() ? "pass" : status},
        {"executable_lines", exec.empty() ? covered : Ints(exec)},
        {"covered_lines", covered},
        {"covered_branches", SplitComma(Directive(test, "arcs"))},
        {"has_assertion", test.find("assert") != std::string::npos},
        {"wall_time_ms", 1},
        {"error_message", nullptr},
    };
    std::cout << resp.dump() << std::endl;
  }
  return 0;
}
