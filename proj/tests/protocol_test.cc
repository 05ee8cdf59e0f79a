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


#include <algorithm>
#include <string>
#include <thread>
#include <vector>

#include "dialrobust/backend.h"
#include "dialrobust/errors.h"
#include "dialrobust/replay_log.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "testing/fixtures.h"

namespace dialrobust {
namespace {

using ::dialrobust::testing::ReadFile;
using ::dialrobust::testing::TempDir;
using ::dialrobust::testing::WriteFile;
using json = nlohmann::json;

ScoreRequest SampleRequest() {
  ScoreRequest request;
  request.request_id = "req-7";
  request.conversation_id = "c1";
  request.history = {{"A", "Hi"}, {"B", "Hello, \"friend\"\n"}};
  request.fact = "Water is wet.";
  request.response = "Indeed.";
  request.submetrics = {"content", "relevance"};
  request.mode = ScoreMode::kWeighted;
  request.prompt = "Rate it.";
  return request;
}

TEST(Wire, HandshakeRoundTrip) {
  const Handshake h{"unieval", "0.3", {"content", "grammar"}, true};
  EXPECT_EQ(HandshakeFromJson(DecodeLine(EncodeLine(HandshakeToJson(h)))), h);
}

TEST(Wire, HandshakeMissingField) {
  EXPECT_THROW(HandshakeFromJson(json::parse(R"({"name":"x"})")),
               ProtocolError);
}

TEST(Wire, RequestRoundTripAndShape) {
  const ScoreRequest request = SampleRequest();
  const std::string line = EncodeLine(RequestToJson(request));
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const json value = DecodeLine(line);
  EXPECT_EQ(value["context"]["history"][1]["speaker"], "B");
  EXPECT_EQ(value["context"]["fact"], "Water is wet.");
  EXPECT_EQ(value["mode"], "weighted");
  EXPECT_EQ(RequestFromJson(value), request);
}

TEST(Wire, RequestWithoutFactOmitsKey) {
  ScoreRequest request = SampleRequest();
  request.fact.reset();
  request.prompt.reset();
  const json value = RequestToJson(request);
  EXPECT_FALSE(value["context"].contains("fact"));
  EXPECT_FALSE(value.contains("prompt"));
  EXPECT_EQ(RequestFromJson(value), request);
}

TEST(Wire, ResponseCarriesExactlyOneOutcome) {
  ScoreRecord record;
  record.submetrics["content"] = 0.5;
  record.overall = 0.25;
  const ScoreResponse ok = ScoreResponse::Ok("r", record);
  const ScoreResponse back = ResponseFromJson(ResponseToJson(ok));
  EXPECT_TRUE(back.ok());
  EXPECT_EQ(*back.record, record);

  const ScoreResponse fail = ScoreResponse::Fail("r", error_kind::kTimeout, "t");
  const ScoreResponse back_fail = ResponseFromJson(ResponseToJson(fail));
  EXPECT_FALSE(back_fail.ok());
  EXPECT_EQ(back_fail.error->kind, "timeout");

  json both = ResponseToJson(ok);
  both["error"] = {{"kind", "adapter"}, {"message", ""}};
  EXPECT_THROW(ResponseFromJson(both), ProtocolError);
  EXPECT_THROW(ResponseFromJson(json{{"request_id", "r"}}), ProtocolError);
  EXPECT_THROW(ResponseFromJson(json::parse(
                   R"({"request_id":"r","record":{"submetrics":{"a":"x"}}})")),
               ProtocolError);
}

TEST(Wire, DecodeLineRejectsNonObjects) {
  EXPECT_THROW(DecodeLine("[1,2]"), ProtocolError);
  EXPECT_THROW(DecodeLine("{\"a\":"), ProtocolError);
  EXPECT_THROW(DecodeLine("hello"), ProtocolError);
  EXPECT_NO_THROW(DecodeLine("{\"a\":1}\r"));
}

TEST(Wire, RequestHashIgnoresId) {
  ScoreRequest a = SampleRequest();
  ScoreRequest b = a;
  b.request_id = "other";
  EXPECT_EQ(RequestHash(a), RequestHash(b));
  EXPECT_EQ(RequestHash(a).size(), 64u);
  b.response = "Indeed!";
  EXPECT_NE(RequestHash(a), RequestHash(b));
  b = a;
  b.mode = ScoreMode::kDirect;
  EXPECT_NE(RequestHash(a), RequestHash(b));
}

ScoreRecord Overall(double v) {
  ScoreRecord r;
  r.submetrics["content"] = v;
  r.overall = v;
  return r;
}

TEST(MockBackend, LooksUpByConversationAndResponse) {
  MockBackend mock({{{"c1", "ref"}, Overall(1.0)}, {{"c1", "adv"}, Overall(0.0)}});
  EXPECT_EQ(mock.Lookup("c1", "ref").overall, 1.0);
  EXPECT_EQ(mock.Lookup("c1", "adv").overall, 0.0);
  EXPECT_THROW(mock.Lookup("c2", "ref"), BackendError);

  ScoreRequest request = SampleRequest();
  request.conversation_id = "c9";
  const ScoreResponse response = mock.Score(request);
  ASSERT_FALSE(response.ok());
  EXPECT_EQ(response.error->kind, error_kind::kMissingKey);
  EXPECT_EQ(response.request_id, "req-7");
}

TEST(MockBackend, FallbackRecord) {
  MockBackend mock({}, Overall(0.5));
  EXPECT_EQ(mock.Lookup("any", "thing").overall, 0.5);
}

TEST(MockBackend, FromFile) {
  TempDir dir;
  WriteFile(dir / "t.jsonl",
            R"({"conversation_id":"c","response":"r","record":{"submetrics":{},"overall":0.75}})"
            "\n\n");
  MockBackend mock = MockBackend::FromFile((dir / "t.jsonl").string(), {});
  EXPECT_EQ(mock.Lookup("c", "r").overall, 0.75);
  WriteFile(dir / "bad.jsonl", "{\"conversation_id\":\"c\"}\n");
  EXPECT_THROW(MockBackend::FromFile((dir / "bad.jsonl").string(), {}),
               DataError);
  EXPECT_THROW(MockBackend::FromFile((dir / "none.jsonl").string(), {}),
               ConfigError);
}

TEST(ReplayLog, RecordThenReplay) {
  TempDir dir;
  {
    ReplayLog log(dir / "audit.jsonl", ReplayLog::Mode::kRecord);
    log.Append("h1", "{\"x\":1}");
    log.Append("h2", "line\nbreak");
    log.Append("h1", "ignored");
    EXPECT_EQ(log.size(), 2u);
  }
  const std::string contents = ReadFile(dir / "audit.jsonl");
  EXPECT_EQ(std::count(contents.begin(), contents.end(), '\n'), 2);

  ReplayLog replay(dir / "audit.jsonl", ReplayLog::Mode::kReplay);
  EXPECT_TRUE(replay.replaying());
  EXPECT_EQ(replay.Find("h1"), "{\"x\":1}");
  EXPECT_EQ(replay.Find("h2"), "line\nbreak");
  EXPECT_FALSE(replay.Find("h3").has_value());
  replay.Append("h3", "nope");
  EXPECT_EQ(ReadFile(dir / "audit.jsonl"), contents);
}

TEST(ReplayLog, RecordModeAppendsToExisting) {
  TempDir dir;
  { ReplayLog(dir / "a.jsonl", ReplayLog::Mode::kRecord).Append("h1", "1"); }
  ReplayLog log(dir / "a.jsonl", ReplayLog::Mode::kRecord);
  EXPECT_EQ(log.Find("h1"), "1");
  log.Append("h2", "2");
  EXPECT_EQ(log.size(), 2u);
}

TEST(ReplayLog, MissingOrMalformedReplayFile) {
  TempDir dir;
  EXPECT_THROW(ReplayLog(dir / "none.jsonl", ReplayLog::Mode::kReplay),
               ConfigError);
  WriteFile(dir / "bad.jsonl", "not json\n");
  EXPECT_THROW(ReplayLog(dir / "bad.jsonl", ReplayLog::Mode::kReplay),
               ConfigError);
}

TEST(ReplayLog, ConcurrentAppends) {
  TempDir dir;
  ReplayLog log(dir / "c.jsonl", ReplayLog::Mode::kRecord);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&log, t] {
      for (int i = 0; i < 50; ++i) {
        log.Append("h" + std::to_string(i % 60 + t * 10), "raw");
      }
    });
  }
  for (std::thread& t : threads) t.join();
  ReplayLog replay(dir / "c.jsonl", ReplayLog::Mode::kReplay);
  EXPECT_EQ(replay.size(), log.size());
  EXPECT_EQ(log.size(), 80u);
}

}  // namespace
}  // namespace dialrobust
