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

#include <stdlib.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include "dialrobust/errors.h"
#include "dialrobust/replay_log.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "json.hpp"
#include "testing/fixtures.h"

namespace dialrobust {
namespace {

using ::testing::HasSubstr;
using json = nlohmann::json;
using namespace std::chrono_literals;

json Completion(const std::string& content) {
  return {{"choices", json::array({{{"message", {{"role", "assistant"},
                                                 {"content", content}}}}})}};
}

// One token per character; the token at `position` carries `alternatives`.
json WithLogprobs(const std::string& content, std::size_t position,
                  const json& alternatives) {
  json completion = Completion(content);
  json tokens = json::array();
  for (std::size_t i = 0; i < content.size(); ++i) {
    json token{{"token", content.substr(i, 1)}, {"logprob", -0.01}};
    if (i == position) token["top_logprobs"] = alternatives;
    tokens.push_back(std::move(token));
  }
  completion["choices"][0]["logprobs"] = {{"content", tokens}};
  return completion;
}

class StubServer {
 public:
  using Handler = std::function<void(const httplib::Request&,
                                     httplib::Response&)>;

  explicit StubServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   {
                     std::lock_guard<std::mutex> lock(mu_);
                     last_body_ = req.body;
                     last_auth_ = req.get_header_value("Authorization");
                   }
                   ++hits_;
                   handler_(req, res);
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port_) +
           "/v1/chat/completions";
  }
  int hits() const { return hits_.load(); }
  json last_body() const {
    std::lock_guard<std::mutex> lock(mu_);
    return json::parse(last_body_);
  }
  std::string last_auth() const {
    std::lock_guard<std::mutex> lock(mu_);
    return last_auth_;
  }

 private:
  Handler handler_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> hits_{0};
  mutable std::mutex mu_;
  std::string last_body_;
  std::string last_auth_;
};

StubServer::Handler Reply(json body) {
  return [body](const httplib::Request&, httplib::Response& res) {
    res.set_content(body.dump(), "application/json");
  };
}

ChatOptions Options(const std::string& endpoint) {
  ChatOptions options;
  options.endpoint = endpoint;
  options.model = "stub-model";
  options.api_key_env = "DIALROBUST_TEST_CHAT_KEY";
  options.initial_backoff = 1ms;
  options.request_timeout = 2000ms;
  return options;
}

ScoreRequest Request(ScoreMode mode = ScoreMode::kDirect) {
  const Conversation c = testing::SodaConversation();
  ScoreRequest request;
  request.request_id = "q1";
  request.conversation_id = c.id;
  request.history = c.history;
  request.response = c.reference;
  request.mode = mode;
  return request;
}

TEST(ChatBackend, DirectPositionalReply) {
  StubServer server(Reply(Completion("4 5 4 4")));
  ChatBackend backend(Options(server.endpoint()));
  const ScoreResponse response = backend.Score(Request());
  ASSERT_TRUE(response.ok());
  EXPECT_EQ(response.record->submetrics,
            (std::map<std::string, double>{
                {"content", 4}, {"grammar", 5}, {"relevance", 4}}));
  EXPECT_EQ(response.record->overall, 4);
  EXPECT_FALSE(response.record->degraded_to_direct);

  const json body = server.last_body();
  EXPECT_EQ(body["model"], "stub-model");
  EXPECT_EQ(body["temperature"], 0);
  EXPECT_FALSE(body.contains("logprobs"));
  EXPECT_THAT(body["messages"][0]["content"].get<std::string>(),
              HasSubstr("Bob: What did you want to drink?"));
}

TEST(ChatBackend, CredentialsComeFromEnvironment) {
  StubServer server(Reply(Completion("4 5 4 4")));
  setenv("DIALROBUST_TEST_CHAT_KEY", "sekrit", 1);
  ChatBackend backend(Options(server.endpoint()));
  backend.Score(Request());
  EXPECT_EQ(server.last_auth(), "Bearer sekrit");
  unsetenv("DIALROBUST_TEST_CHAT_KEY");
  backend.Score(Request());
  EXPECT_EQ(server.last_auth(), "");
}

TEST(ChatBackend, WeightedReplyUsesLikelihoods) {
  const std::string content =
      "Content Quality: 5\nGrammaticality: 4\nRelevance: 4\nOverall Score: 4";
  const std::size_t pos = content.find('5');
  const json alternatives = json::array(
      {{{"token", "5"}, {"logprob", std::log(0.7)}},
       {{"token", "4"}, {"logprob", std::log(0.3)}},
       {{"token", "The"}, {"logprob", -9.0}}});
  StubServer server(
      Reply(WithLogprobs(content, pos, alternatives)));
  ChatBackend backend(Options(server.endpoint()));
  const ScoreResponse response = backend.Score(Request(ScoreMode::kWeighted));
  ASSERT_TRUE(response.ok());
  const json body = server.last_body();
  EXPECT_EQ(body["logprobs"], true);
  EXPECT_EQ(body["top_logprobs"], 5);

  const ScoreRecord record =
      FinalizeRecord(*response.record, MetricProfile::Named("reported"));
  EXPECT_NEAR(record.submetrics.at("content"), 4.7, 1e-12);
  // The other digits carry only their own token, so all mass sits on it.
  EXPECT_EQ(record.distributions.size(), 4u);
  EXPECT_EQ(NormalizeDistribution(record.distributions.at("grammar"))[3], 1.0);
  EXPECT_FALSE(record.degraded_to_direct);
  EXPECT_EQ(record.submetrics.at("grammar"), 4);
}

TEST(ChatBackend, WeightedWithoutLikelihoodsDegrades) {
  StubServer server(Reply(Completion("4 5 4 4")));
  ChatBackend backend(Options(server.endpoint()));
  const ScoreResponse response = backend.Score(Request(ScoreMode::kWeighted));
  ASSERT_TRUE(response.ok());
  EXPECT_TRUE(response.record->degraded_to_direct);
  EXPECT_TRUE(response.record->distributions.empty());
}

TEST(ChatBackend, UnparseableReplyIsAnErrorResponse) {
  StubServer server(Reply(Completion("I cannot rate this")));
  ChatBackend backend(Options(server.endpoint()));
  const ScoreResponse response = backend.Score(Request());
  ASSERT_FALSE(response.ok());
  EXPECT_EQ(response.error->kind, error_kind::kUnparseable);

  StubServer empty(Reply(json{{"choices", json::array()}}));
  ChatBackend other(Options(empty.endpoint()));
  EXPECT_EQ(other.Score(Request()).error->kind, error_kind::kUnparseable);
}

TEST(ChatBackend, RetriesTransientFailures) {
  std::atomic<int> calls{0};
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    if (++calls <= 2) {
      res.status = calls == 1 ? 503 : 429;
      return;
    }
    res.set_content(Completion("3 3 3 3").dump(), "application/json");
  });
  ChatBackend backend(Options(server.endpoint()));
  EXPECT_TRUE(backend.Score(Request()).ok());
  EXPECT_EQ(backend.http_attempts(), 3u);
}

TEST(ChatBackend, ClientErrorIsNotRetried) {
  StubServer server([](const httplib::Request&, httplib::Response& res) {
    res.status = 401;
  });
  ChatBackend backend(Options(server.endpoint()));
  EXPECT_THROW(backend.Score(Request()), BackendError);
  EXPECT_EQ(backend.http_attempts(), 1u);
}

TEST(ChatBackend, UnreachableAfterThreeRetries) {
  std::string endpoint;
  {
    StubServer gone(Reply(Completion("1 1 1 1")));
    endpoint = gone.endpoint();
  }
  ChatOptions options = Options(endpoint);
  options.request_timeout = 300ms;
  ChatBackend backend(options);
  try {
    backend.Score(Request());
    FAIL() << "expected BackendError";
  } catch (const BackendError& e) {
    EXPECT_THAT(e.what(), HasSubstr("after 3 retries"));
  }
  EXPECT_EQ(backend.http_attempts(), 4u);
}

TEST(ChatBackend, ReplayNeedsNoNetwork) {
  testing::TempDir dir;
  ScoreRecord recorded;
  {
    StubServer server(Reply(Completion("2 3 4 5")));
    ReplayLog log(dir / "audit.jsonl", ReplayLog::Mode::kRecord);
    ChatOptions options = Options(server.endpoint());
    options.log = &log;
    ChatBackend backend(options);
    recorded = *backend.Score(Request()).record;
    EXPECT_EQ(log.size(), 1u);
  }
  ReplayLog replay(dir / "audit.jsonl", ReplayLog::Mode::kReplay);
  ChatOptions options = Options("http://127.0.0.1:9/v1/chat/completions");
  options.log = &replay;
  ChatBackend backend(options);
  const ScoreResponse response = backend.Score(Request());
  ASSERT_TRUE(response.ok());
  EXPECT_EQ(*response.record, recorded);
  EXPECT_EQ(backend.http_attempts(), 0u);

  ScoreRequest other = Request();
  other.response = "Something new.";
  EXPECT_THROW(backend.Score(other), BackendError);
}

TEST(ChatBackend, PrerenderedPromptIsSentVerbatim) {
  StubServer server(Reply(Completion("1 2 3 4")));
  ChatBackend backend(Options(server.endpoint()));
  ScoreRequest request = Request();
  request.prompt = "custom prompt";
  backend.Score(request);
  EXPECT_EQ(server.last_body()["messages"][0]["content"], "custom prompt");
}

TEST(ChatBackend, RejectsBadConfig) {
  EXPECT_THROW(ChatBackend(Options("not-a-url")), ConfigError);
  ChatOptions options = Options("http://localhost/x");
  options.model.clear();
  EXPECT_THROW(ChatBackend{options}, ConfigError);
}

TEST(DistributionFromLogprobs, ReadsRatingsOnly) {
  ValueDistribution dist;
  EXPECT_FALSE(DistributionFromLogprobs(
      json{{"token", "Hello"}, {"logprob", -0.1}}, dist));
  EXPECT_TRUE(DistributionFromLogprobs(
      json{{"token", "3"},
           {"logprob", std::log(0.5)},
           {"top_logprobs",
            json::array({{{"token", "3"}, {"logprob", std::log(0.5)}},
                         {{"token", " 2"}, {"logprob", std::log(0.25)}}})}},
      dist));
  EXPECT_NEAR(dist[2], 0.5, 1e-12);
  EXPECT_NEAR(dist[1], 0.25, 1e-12);
  EXPECT_EQ(dist[0], 0.0);
}

}  // namespace
}  // namespace dialrobust
