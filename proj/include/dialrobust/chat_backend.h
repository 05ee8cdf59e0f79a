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

#ifndef DIALROBUST_CHAT_BACKEND_H_
#define DIALROBUST_CHAT_BACKEND_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <string>

#include "dialrobust/backend.h"
#include "dialrobust/prompt.h"
#include "dialrobust/replay_log.h"
#include "json.hpp"

namespace dialrobust {

struct ChatOptions {
  // Full URL of the chat-completion route, e.g.
  // "https://api.example.com/v1/chat/completions".
  std::string endpoint;
  std::string model;
  // Name of the environment variable holding the bearer token.
  std::string api_key_env = "DIALROBUST_API_KEY";
  PromptTemplate prompt = PromptTemplate::BuiltinUngrounded();
  SpeakerLabels labels;
  // Retries after the first attempt for transient failures (connection
  // errors, HTTP 429 and 5xx).
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds request_timeout{60000};
  int top_logprobs = 5;
  // Optional audit log; in replay mode no request leaves the process.
  ReplayLog* log = nullptr;
};

// Prompt-based evaluator over an HTTP chat-completion API. Weighted requests
// ask for per-token likelihoods and turn the alternatives at each score
// position into a distribution over 1..5; when the reply carries none the
// record is flagged as degraded to direct scoring.
class ChatBackend : public Scorer {
 public:
  explicit ChatBackend(ChatOptions options);

  const Handshake& info() const override { return info_; }
  // Throws BackendError when the endpoint stays unreachable after the
  // retries, or on a replay miss.
  ScoreResponse Score(const ScoreRequest& request) override;

  nlohmann::json BuildBody(const std::string& prompt, ScoreMode mode) const;
  // Turns a raw completion body into a record (or an unparseable error).
  ScoreResponse Interpret(const std::string& request_id,
                          const std::string& raw_body, ScoreMode mode) const;

  std::size_t http_attempts() const { return http_attempts_.load(); }

 private:
  std::string Post(const std::string& body);

  ChatOptions options_;
  Handshake info_;
  std::string base_url_;
  std::string path_;
  std::atomic<std::size_t> http_attempts_{0};
};

// Distribution over ratings 1..5 read from one token's alternatives
// (OpenAI-style {"token", "logprob", "top_logprobs": [...]}). Returns false
// when no alternative is a rating.
bool DistributionFromLogprobs(const nlohmann::json& token_entry,
                              ValueDistribution& out);

}  // namespace dialrobust

#endif  // DIALROBUST_CHAT_BACKEND_H_
