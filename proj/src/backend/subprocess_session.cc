//
// Copyright 2026 The dialrobust Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dialrobust/subprocess_session.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <sstream>
#include <utility>

#include "dialrobust/errors.h"

extern char** environ;

namespace dialrobust {
namespace {

using Clock = std::chrono::steady_clock;

void IgnoreSigpipe() {
  static const bool done = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

bool WriteAll(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

// Reads what is available into `buffer`. Returns false at end of stream.
bool ReadChunk(int fd, std::string& buffer) {
  char chunk[4096];
  for (;;) {
    const ssize_t n = ::read(fd, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    buffer.append(chunk, static_cast<std::size_t>(n));
    return true;
  }
}

std::optional<std::string> TakeLine(std::string& buffer) {
  const std::size_t newline = buffer.find('\n');
  if (newline == std::string::npos) return std::nullopt;
  std::string line = buffer.substr(0, newline);
  buffer.erase(0, newline + 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::vector<std::string> SplitCommand(const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> argv;
  std::string word;
  while (in >> word) argv.push_back(word);
  return argv;
}

std::unique_ptr<SubprocessSession> SubprocessSession::Start(
    const std::vector<std::string>& argv, const SessionOptions& options) {
  if (argv.empty()) throw ConfigError("empty adapter command");
  IgnoreSigpipe();

  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) {
    throw BackendError(std::string("pipe: ") + std::strerror(errno));
  }
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw BackendError(std::string("pipe: ") + std::strerror(errno));
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);

  std::vector<char*> args;
  for (const std::string& arg : argv) {
    args.push_back(const_cast<char*>(arg.c_str()));
  }
  args.push_back(nullptr);

  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(),
                                environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(to_child[0]);
  ::close(from_child[1]);
  if (rc != 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    throw BackendError("cannot start adapter '" + argv[0] +
                       "': " + std::strerror(rc));
  }

  std::unique_ptr<SubprocessSession> session(
      new SubprocessSession(pid, to_child[1], from_child[0], options));
  session->ReadHandshake();
  session->reader_ = std::thread([s = session.get()] { s->ReaderLoop(); });
  return session;
}

SubprocessSession::SubprocessSession(pid_t pid, int to_child, int from_child,
                                     const SessionOptions& options)
    : pid_(pid),
      to_child_(to_child),
      from_child_(from_child),
      options_(options) {}

SubprocessSession::~SubprocessSession() { Shutdown(); }

void SubprocessSession::ReadHandshake() {
  const auto deadline = Clock::now() + options_.handshake_timeout;
  for (;;) {
    if (auto line = TakeLine(buffer_)) {
      try {
        info_ = HandshakeFromJson(DecodeLine(*line));
      } catch (const ProtocolError& e) {
        Shutdown();
        throw BackendError(std::string("bad adapter handshake: ") + e.what());
      }
      return;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (left.count() <= 0) {
      Shutdown();
      throw BackendError("adapter handshake timed out");
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0 && errno != EINTR) {
      Shutdown();
      throw BackendError(std::string("poll: ") + std::strerror(errno));
    }
    if (ready > 0 && !ReadChunk(from_child_, buffer_)) {
      Shutdown();
      throw BackendError("adapter exited before its handshake");
    }
  }
}

void SubprocessSession::ReaderLoop() {
  while (!stopping_.load()) {
    while (auto line = TakeLine(buffer_)) {
      if (!line->empty()) HandleLine(*line);
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 100);
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    if (!ReadChunk(from_child_, buffer_)) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!stopping_.load()) FailLocked("adapter closed its output", false);
      return;
    }
  }
}

void SubprocessSession::HandleLine(const std::string& line) {
  std::lock_guard<std::mutex> lock(mu_);
  if (failure_) return;
  ScoreResponse response;
  try {
    response = ResponseFromJson(DecodeLine(line));
  } catch (const ProtocolError& e) {
    FailLocked(std::string("protocol violation: ") + e.what(), true);
    return;
  }
  const auto it = pending_.find(response.request_id);
  if (it != pending_.end() && !it->second.response) {
    ++stats_.received;
    it->second.response = std::move(response);
    cv_.notify_all();
    return;
  }
  if (timed_out_.erase(response.request_id) > 0) {
    ++stats_.late_replies;
    return;
  }
  FailLocked("protocol violation: reply for unknown request_id '" +
                 response.request_id + "'",
             true);
}

void SubprocessSession::FailLocked(const std::string& reason,
                                   bool kill_child) {
  if (!failure_) failure_ = reason;
  if (kill_child && pid_ > 0) ::kill(pid_, SIGKILL);
  cv_.notify_all();
}

ScoreResponse SubprocessSession::Score(const ScoreRequest& request) {
  if (request.mode == ScoreMode::kWeighted && !info_.weighted) {
    throw CapabilityError("adapter '" + info_.name +
                          "' does not support weighted scoring");
  }
  for (const std::string& submetric : request.submetrics) {
    if (std::find(info_.submetrics.begin(), info_.submetrics.end(),
                  submetric) == info_.submetrics.end()) {
      throw CapabilityError("adapter '" + info_.name +
                            "' does not declare submetric '" + submetric + "'");
    }
  }

  std::unique_lock<std::mutex> lock(mu_);
  if (failure_) throw ProtocolError("session terminated: " + *failure_);
  if (!used_ids_.insert(request.request_id).second) {
    throw BackendError("duplicate request_id '" + request.request_id + "'");
  }
  pending_[request.request_id];
  ++stats_.sent;
  lock.unlock();

  bool written;
  {
    std::lock_guard<std::mutex> write_lock(write_mu_);
    written = WriteAll(to_child_, EncodeLine(RequestToJson(request)) + "\n");
  }

  lock.lock();
  if (!written) FailLocked("adapter closed its input", false);
  const bool done = cv_.wait_for(lock, options_.request_timeout, [&] {
    return pending_[request.request_id].response.has_value() ||
           failure_.has_value();
  });
  auto node = pending_.extract(request.request_id);
  if (node.mapped().response) return std::move(*node.mapped().response);
  if (failure_) throw ProtocolError("session terminated: " + *failure_);
  (void)done;
  ++stats_.timeouts;
  timed_out_.insert(request.request_id);
  return ScoreResponse::Fail(request.request_id, error_kind::kTimeout,
                             "no reply within the request timeout");
}

SessionStats SubprocessSession::stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  return stats_;
}

std::optional<std::string> SubprocessSession::failure() const {
  std::lock_guard<std::mutex> lock(mu_);
  return failure_;
}

void SubprocessSession::Shutdown() {
  stopping_.store(true);
  if (to_child_ >= 0) {
    ::close(to_child_);
    to_child_ = -1;
  }
  if (reader_.joinable()) reader_.join();
  if (pid_ > 0) {
    int status = 0;
    const auto deadline = Clock::now() + std::chrono::seconds(2);
    while (::waitpid(pid_, &status, WNOHANG) == 0) {
      if (Clock::now() > deadline) {
        ::kill(pid_, SIGKILL);
        ::waitpid(pid_, &status, 0);
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    pid_ = -1;
  }
  if (from_child_ >= 0) {
    ::close(from_child_);
    from_child_ = -1;
  }
}

}  // namespace dialrobust
