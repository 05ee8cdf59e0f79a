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

#ifndef DIALROBUST_SUBPROCESS_SESSION_H_
#define DIALROBUST_SUBPROCESS_SESSION_H_

#include <sys/types.h>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "dialrobust/backend.h"

namespace dialrobust {

struct SessionOptions {
  std::chrono::milliseconds handshake_timeout{30000};
  std::chrono::milliseconds request_timeout{60000};
};

struct SessionStats {
  std::size_t sent = 0;
  std::size_t received = 0;
  std::size_t timeouts = 0;
  // Replies that arrived after their request had already timed out.
  std::size_t late_replies = 0;
};

// A metric adapter running as a child process, speaking one JSON record per
// line over its standard streams. Replies are matched by request_id in any
// order. A reply for an unknown id, or a line that does not decode, is a
// protocol violation: the child is killed and every later call throws
// ProtocolError.
class SubprocessSession : public Scorer {
 public:
  // Throws BackendError on spawn failure, handshake timeout or a malformed
  // handshake.
  static std::unique_ptr<SubprocessSession> Start(
      const std::vector<std::string>& argv, const SessionOptions& options = {});

  ~SubprocessSession() override;
  SubprocessSession(const SubprocessSession&) = delete;
  SubprocessSession& operator=(const SubprocessSession&) = delete;

  const Handshake& info() const override { return info_; }

  // Blocks until the reply arrives or the request timeout passes (returned
  // as a "timeout" error response). Throws CapabilityError before sending a
  // request the adapter did not declare support for.
  ScoreResponse Score(const ScoreRequest& request) override;

  SessionStats stats() const;
  // Set once the session has been terminated.
  std::optional<std::string> failure() const;

 private:
  struct Pending {
    std::optional<ScoreResponse> response;
  };

  SubprocessSession(pid_t pid, int to_child, int from_child,
                    const SessionOptions& options);
  void ReadHandshake();
  void ReaderLoop();
  void HandleLine(const std::string& line);
  // Requires mu_.
  void FailLocked(const std::string& reason, bool kill_child);
  void Shutdown();

  pid_t pid_;
  int to_child_;
  int from_child_;
  SessionOptions options_;
  Handshake info_;
  std::string buffer_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::map<std::string, Pending> pending_;
  std::set<std::string> used_ids_;
  std::set<std::string> timed_out_;
  std::optional<std::string> failure_;
  SessionStats stats_;

  std::mutex write_mu_;
  std::atomic<bool> stopping_{false};
  std::thread reader_;
};

// Splits a command line on whitespace; quoting is not supported.
std::vector<std::string> SplitCommand(const std::string& command);

}  // namespace dialrobust

#endif  // DIALROBUST_SUBPROCESS_SESSION_H_
