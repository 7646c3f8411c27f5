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

#include "core/executor.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>
#include <thread>

#include "core/error.h"
#include "httplib.h"
#include "json.hpp"

namespace greedysuite {

using nlohmann::json;

std::string SerializeExecRequest(const ExecRequest& request) {
  return json{{"id", request.id},
              {"focal_source", request.focal_source},
              {"test_source", request.test_source},
              {"timeout_ms", request.timeout_ms}}
      .dump();
}

ExecRequest ParseExecRequest(const std::string& body) {
  try {
    json j = json::parse(body);
    ExecRequest r;
    r.id = j.at("id").get<std::string>();
    r.focal_source = j.at("focal_source").get<std::string>();
    r.test_source = j.at("test_source").get<std::string>();
    r.timeout_ms = j.value("timeout_ms", kDefaultExecTimeoutMs);
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kTransport,
                std::string("malformed exec request: ") + e.what());
  }
}

std::string SerializeExecResponse(const ExecResponse& response) {
  json j = {{"id", response.id},
            {"status", ExecStatusName(response.status)},
            {"executable_lines", response.executable_lines},
            {"covered_lines", response.covered_lines},
            {"covered_branches", response.covered_branches},
            {"has_assertion", response.has_assertion},
            {"wall_time_ms", response.wall_time_ms},
            {"error_message", nullptr}};
  if (response.error_message) j["error_message"] = *response.error_message;
  return j.dump();
}

ExecResponse ParseExecResponse(const std::string& body) {
  try {
    json j = json::parse(body);
    ExecResponse r;
    r.id = j.at("id").get<std::string>();
    r.status = ParseExecStatus(j.at("status").get<std::string>());
    r.executable_lines = j.value("executable_lines", std::vector<int>{});
    r.covered_lines = j.value("covered_lines", std::vector<int>{});
    r.covered_branches =
        j.value("covered_branches", std::vector<std::string>{});
    r.has_assertion = j.value("has_assertion", false);
    r.wall_time_ms = j.value("wall_time_ms", 0);
    if (j.contains("error_message") && j.at("error_message").is_string()) {
      r.error_message = j.at("error_message").get<std::string>();
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kTransport,
                std::string("malformed exec response: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kTransport,
                std::string("malformed exec response: ") + e.what());
  }
}

SubprocessExecutor::SubprocessExecutor(std::string command)
    : command_(std::move(command)) {
  // A worker that dies between requests must surface as EPIPE, not a signal.
  static std::once_flag ignore_sigpipe;
  std::call_once(ignore_sigpipe, [] { signal(SIGPIPE, SIG_IGN); });
}

SubprocessExecutor::~SubprocessExecutor() { Stop(); }

void SubprocessExecutor::Start() {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe2(in_pipe, O_CLOEXEC) != 0) {
    throw Error(ErrorCode::kUnreachable,
                std::string("pipe: ") + std::strerror(errno));
  }
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw Error(ErrorCode::kUnreachable,
                std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw Error(ErrorCode::kUnreachable,
                std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    setpgid(0, 0);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
}

void SubprocessExecutor::Stop() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    kill(-pid_, SIGKILL);
    kill(pid_, SIGKILL);
    int status = 0;
    waitpid(pid_, &status, 0);
  }
  pid_ = -1;
  buffer_.clear();
}

std::string SubprocessExecutor::ReadLine(int deadline_ms) {
  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + std::chrono::milliseconds(deadline_ms);
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                          deadline - Clock::now())
                          .count();
    if (left <= 0) {
      throw Error(ErrorCode::kTransport, "executor worker did not answer in " +
                                             std::to_string(deadline_ms) + " ms");
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(left));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) continue;
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      throw Error(ErrorCode::kTransport, "executor worker exited mid-request");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

ExecResponse SubprocessExecutor::Execute(const ExecRequest& request) {
  if (pid_ < 0) Start();
  try {
    std::string line = SerializeExecRequest(request) + "\n";
    std::size_t off = 0;
    while (off < line.size()) {
      const ssize_t n = write(to_child_, line.data() + off, line.size() - off);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        throw Error(ErrorCode::kTransport, "executor worker closed its input");
      }
      off += static_cast<std::size_t>(n);
    }
    ExecResponse response =
        ParseExecResponse(ReadLine(request.timeout_ms + kGraceMs));
    if (response.id != request.id) {
      throw Error(ErrorCode::kTransport, "executor answered request '" +
                                             response.id + "', expected '" +
                                             request.id + "'");
    }
    return response;
  } catch (const Error&) {
    Stop();
    throw;
  }
}

std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "not a URL: '" + url + "'");
  }
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

HttpExecutor::HttpExecutor(std::string url, int retries)
    : url_(std::move(url)), retries_(retries) {}

ExecResponse HttpExecutor::Execute(const ExecRequest& request) {
  const auto [base, path] = SplitUrl(url_);
  httplib::Client client(base);
  const int budget_ms = request.timeout_ms + SubprocessExecutor::kGraceMs;
  client.set_read_timeout(std::chrono::milliseconds(budget_ms));
  client.set_connection_timeout(std::chrono::seconds(2));
  const std::string body = SerializeExecRequest(request);
  for (int attempt = 0;; ++attempt) {
    auto res = client.Post(path, body, "application/json");
    if (res) {
      if (res->status != 200) {
        throw Error(ErrorCode::kTransport,
                    "executor HTTP status " + std::to_string(res->status));
      }
      ExecResponse response = ParseExecResponse(res->body);
      if (response.id != request.id) {
        throw Error(ErrorCode::kTransport, "executor answered request '" +
                                               response.id + "', expected '" +
                                               request.id + "'");
      }
      return response;
    }
    if (res.error() != httplib::Error::Connection) {
      throw Error(ErrorCode::kTransport,
                  "executor request failed: " + httplib::to_string(res.error()));
    }
    if (attempt + 1 >= retries_) {
      throw Error(ErrorCode::kUnreachable,
                  "executor " + url_ + " unreachable after " +
                      std::to_string(retries_) + " attempts");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(100 << attempt));
  }
}

std::unique_ptr<ExecutorClient> MakeExecutor(const std::string& spec) {
  if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
    return std::make_unique<HttpExecutor>(spec);
  }
  return std::make_unique<SubprocessExecutor>(spec);
}

}  // namespace greedysuite
