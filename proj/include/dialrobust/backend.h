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

#ifndef DIALROBUST_BACKEND_H_
#define DIALROBUST_BACKEND_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dialrobust/corpus.h"
#include "dialrobust/scoring.h"
#include "json.hpp"

namespace dialrobust {

// First line an adapter writes after start-up.
struct Handshake {
  std::string name;
  std::string version;
  std::vector<std::string> submetrics;
  bool weighted = false;

  bool operator==(const Handshake&) const = default;
};

struct ScoreRequest {
  std::string request_id;
  std::string conversation_id;
  std::vector<Turn> history;
  std::optional<std::string> fact;
  std::string response;
  std::vector<std::string> submetrics;
  ScoreMode mode = ScoreMode::kDirect;
  // Rendered evaluation prompt, for adapters wrapping chat models.
  std::optional<std::string> prompt;

  bool operator==(const ScoreRequest&) const = default;
};

// Error kinds carried in responses and score files.
namespace error_kind {
inline constexpr std::string_view kTimeout = "timeout";
inline constexpr std::string_view kUnparseable = "unparseable";
inline constexpr std::string_view kMissingKey = "missing_key";
inline constexpr std::string_view kTransport = "transport";
inline constexpr std::string_view kProtocol = "protocol";
inline constexpr std::string_view kInvalidScore = "invalid_score";
inline constexpr std::string_view kAdapter = "adapter";
}  // namespace error_kind

struct ResponseError {
  std::string kind;
  std::string message;

  bool operator==(const ResponseError&) const = default;
};

// Exactly one of record / error is set.
struct ScoreResponse {
  std::string request_id;
  std::optional<ScoreRecord> record;
  std::optional<ResponseError> error;

  static ScoreResponse Ok(std::string id, ScoreRecord record);
  static ScoreResponse Fail(std::string id, std::string_view kind,
                            std::string message);
  bool ok() const { return record.has_value(); }
};

nlohmann::json HandshakeToJson(const Handshake& handshake);
nlohmann::json RequestToJson(const ScoreRequest& request);
nlohmann::json ResponseToJson(const ScoreResponse& response);
// Decoders throw ProtocolError on malformed records.
Handshake HandshakeFromJson(const nlohmann::json& value);
ScoreRequest RequestFromJson(const nlohmann::json& value);
ScoreResponse ResponseFromJson(const nlohmann::json& value);

// Compact single-line encoding, no trailing newline.
std::string EncodeLine(const nlohmann::json& value);
// Throws ProtocolError for anything that is not one JSON object.
nlohmann::json DecodeLine(std::string_view line);

// SHA-256 of the request's canonical encoding with request_id removed.
std::string RequestHash(const ScoreRequest& request);

// A metric implementation. Score may be called concurrently; per-response
// failures come back as error responses, transport failures as BackendError.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual const Handshake& info() const = 0;
  virtual ScoreResponse Score(const ScoreRequest& request) = 0;
};

// Pre-programmed records keyed by (conversation id, response text).
class MockBackend : public Scorer {
 public:
  using Key = std::pair<std::string, std::string>;

  MockBackend(std::map<Key, ScoreRecord> table,
              std::optional<ScoreRecord> fallback = std::nullopt,
              Handshake info = {"mock", "1", {}, true});

  // Table file: one {conversation_id, response, record} object per line.
  static MockBackend FromFile(const std::string& path,
                              std::optional<ScoreRecord> fallback);

  // Throws BackendError when the key is absent and there is no fallback.
  const ScoreRecord& Lookup(std::string_view conversation_id,
                            std::string_view response) const;

  const Handshake& info() const override { return info_; }
  ScoreResponse Score(const ScoreRequest& request) override;

 private:
  std::map<Key, ScoreRecord> table_;
  std::optional<ScoreRecord> fallback_;
  Handshake info_;
};

// The built-in lexical metric behind the scorer interface.
class BaselineBackend : public Scorer {
 public:
  explicit BaselineBackend(bool grounded);

  const Handshake& info() const override { return info_; }
  ScoreResponse Score(const ScoreRequest& request) override;

 private:
  Handshake info_;
};

}  // namespace dialrobust

#endif  // DIALROBUST_BACKEND_H_
