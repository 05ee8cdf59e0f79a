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

#include "dialrobust/chat_backend.h"

#include <cmath>
#include <cstdlib>
#include <thread>
#include <utility>

#include "common/strings.h"
#include "dialrobust/errors.h"
#include "dialrobust/hashing.h"
#include "httplib.h"

namespace dialrobust {
namespace {

using nlohmann::json;

int RatingOf(const json& entry) {
  if (!entry.is_object() || !entry.contains("token") ||
      !entry["token"].is_string()) {
    return 0;
  }
  const std::string_view token = internal::Trim(entry["token"].get<std::string>());
  if (token.size() != 1 || token[0] < '1' || token[0] > '5') return 0;
  return token[0] - '0';
}

bool Transient(int status) { return status == 429 || status >= 500; }

}  // namespace

bool DistributionFromLogprobs(const json& token_entry, ValueDistribution& out) {
  out.fill(0.0);
  bool any = false;
  const auto add = [&](const json& entry) {
    const int rating = RatingOf(entry);
    if (rating == 0 || !entry.contains("logprob") ||
        !entry["logprob"].is_number()) {
      return;
    }
    // The chosen token usually reappears among the alternatives; keep one.
    double& slot = out[rating - 1];
    if (slot == 0.0) {
      slot = std::exp(entry["logprob"].get<double>());
      any = true;
    }
  };
  if (const auto it = token_entry.find("top_logprobs");
      it != token_entry.end() && it->is_array()) {
    for (const json& alt : *it) add(alt);
  }
  add(token_entry);
  return any;
}

ChatBackend::ChatBackend(ChatOptions options) : options_(std::move(options)) {
  if (options_.model.empty()) throw ConfigError("chat backend needs a model");
  const std::size_t scheme = options_.endpoint.find("://");
  if (scheme == std::string::npos) {
    throw ConfigError("chat endpoint must be an http(s) URL: " +
                      options_.endpoint);
  }
  const std::size_t slash = options_.endpoint.find('/', scheme + 3);
  base_url_ = options_.endpoint.substr(0, slash);
  path_ = slash == std::string::npos ? "/v1/chat/completions"
                                     : options_.endpoint.substr(slash);
  info_.name = options_.model;
  info_.version = "chat:" + options_.prompt.name;
  info_.submetrics = options_.prompt.Submetrics();
  info_.weighted = true;
}

json ChatBackend::BuildBody(const std::string& prompt, ScoreMode mode) const {
  json body{{"model", options_.model},
            {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
            {"temperature", 0}};
  if (mode == ScoreMode::kWeighted) {
    body["logprobs"] = true;
    body["top_logprobs"] = options_.top_logprobs;
  }
  return body;
}

std::string ChatBackend::Post(const std::string& body) {
  httplib::Client client(base_url_);
  const auto timeout = options_.request_timeout;
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers headers;
  if (const char* key = std::getenv(options_.api_key_env.c_str());
      key != nullptr && *key != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  std::string last_error;
  auto backoff = options_.initial_backoff;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    ++http_attempts_;
    const auto result = client.Post(path_, headers, body, "application/json");
    if (!result) {
      last_error = httplib::to_string(result.error());
      continue;
    }
    if (result->status == 200) return result->body;
    last_error = "HTTP " + std::to_string(result->status);
    if (!Transient(result->status)) {
      throw BackendError("chat endpoint rejected the request: " + last_error);
    }
  }
  throw BackendError("chat endpoint unreachable after " +
                     std::to_string(options_.max_retries) +
                     " retries: " + last_error);
}

ScoreResponse ChatBackend::Score(const ScoreRequest& request) {
  std::string prompt;
  if (request.prompt) {
    prompt = *request.prompt;
  } else {
    Conversation conversation;
    conversation.id = request.conversation_id;
    conversation.history = request.history;
    conversation.fact = request.fact;
    conversation.grounded = request.fact.has_value();
    try {
      prompt = RenderPrompt(options_.prompt, conversation, request.response,
                            options_.labels);
    } catch (const Error& e) {
      return ScoreResponse::Fail(request.request_id, error_kind::kAdapter,
                                 e.what());
    }
  }
  const std::string body = BuildBody(prompt, request.mode).dump();
  const std::string hash = Sha256Hex(body);

  std::string raw;
  if (options_.log != nullptr && options_.log->replaying()) {
    auto cached = options_.log->Find(hash);
    if (!cached) {
      throw BackendError("replay log has no entry for request " + hash);
    }
    raw = std::move(*cached);
  } else {
    raw = Post(body);
    if (options_.log != nullptr) options_.log->Append(hash, raw);
  }
  return Interpret(request.request_id, raw, request.mode);
}

ScoreResponse ChatBackend::Interpret(const std::string& request_id,
                                     const std::string& raw_body,
                                     ScoreMode mode) const {
  const json reply = json::parse(raw_body, nullptr, false);
  const json* choice = nullptr;
  if (!reply.is_discarded() && reply.contains("choices") &&
      reply["choices"].is_array() && !reply["choices"].empty()) {
    choice = &reply["choices"][0];
  }
  if (choice == nullptr || !choice->contains("message") ||
      !(*choice)["message"].contains("content") ||
      !(*choice)["message"]["content"].is_string()) {
    return ScoreResponse::Fail(request_id, error_kind::kUnparseable,
                               "completion body has no message content");
  }
  const std::string content = (*choice)["message"]["content"];

  ParsedScores parsed;
  try {
    parsed = ParseScoresDetailed(content, options_.prompt.rubric);
  } catch (const UnparseableOutputError& e) {
    return ScoreResponse::Fail(request_id, error_kind::kUnparseable, e.what());
  }
  if (mode == ScoreMode::kDirect) {
    return ScoreResponse::Ok(request_id, std::move(parsed.record));
  }

  const json* tokens = nullptr;
  if (const auto it = choice->find("logprobs");
      it != choice->end() && it->is_object()) {
    if (const auto c = it->find("content"); c != it->end() && c->is_array()) {
      tokens = &*c;
    }
  }
  if (tokens == nullptr || tokens->empty()) {
    parsed.record.degraded_to_direct = true;
    return ScoreResponse::Ok(request_id, std::move(parsed.record));
  }

  // Character span of each token within the content.
  std::vector<std::size_t> starts;
  std::size_t cursor = 0;
  for (const json& token : *tokens) {
    starts.push_back(cursor);
    if (token.contains("token") && token["token"].is_string()) {
      cursor += token["token"].get_ref<const std::string&>().size();
    }
  }
  for (const auto& [submetric, offset] : parsed.offsets) {
    std::size_t index = starts.size();
    for (std::size_t i = 0; i < starts.size(); ++i) {
      const std::size_t end = i + 1 < starts.size() ? starts[i + 1] : cursor;
      if (offset >= starts[i] && offset < end) {
        index = i;
        break;
      }
    }
    ValueDistribution dist;
    if (index == starts.size() ||
        !DistributionFromLogprobs((*tokens)[index], dist)) {
      parsed.record.degraded_to_direct = true;
      continue;
    }
    parsed.record.distributions[submetric] = dist;
  }
  return ScoreResponse::Ok(request_id, std::move(parsed.record));
}

}  // namespace dialrobust
