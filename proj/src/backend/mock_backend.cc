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

#include <fstream>
#include <string>
#include <utility>

#include "common/strings.h"
#include "dialrobust/backend.h"
#include "dialrobust/errors.h"

namespace dialrobust {

MockBackend::MockBackend(std::map<Key, ScoreRecord> table,
                         std::optional<ScoreRecord> fallback, Handshake info)
    : table_(std::move(table)),
      fallback_(std::move(fallback)),
      info_(std::move(info)) {}

MockBackend MockBackend::FromFile(const std::string& path,
                                  std::optional<ScoreRecord> fallback) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mock score table " + path);
  std::map<Key, ScoreRecord> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::IsBlank(line)) continue;
    const auto value = nlohmann::json::parse(line, nullptr, false);
    if (value.is_discarded() || !value.is_object() ||
        !value.contains("conversation_id") || !value.contains("response") ||
        !value.contains("record")) {
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": expected {conversation_id, response, record}");
    }
    table[{value["conversation_id"].get<std::string>(),
           value["response"].get<std::string>()}] =
        ScoreRecordFromJson(value["record"]);
  }
  return MockBackend(std::move(table), std::move(fallback));
}

const ScoreRecord& MockBackend::Lookup(std::string_view conversation_id,
                                       std::string_view response) const {
  const auto it =
      table_.find({std::string(conversation_id), std::string(response)});
  if (it != table_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw BackendError("mock table has no score for conversation '" +
                     std::string(conversation_id) + "' response '" +
                     std::string(response) + "'");
}

ScoreResponse MockBackend::Score(const ScoreRequest& request) {
  try {
    return ScoreResponse::Ok(request.request_id,
                             Lookup(request.conversation_id, request.response));
  } catch (const BackendError& e) {
    return ScoreResponse::Fail(request.request_id, error_kind::kMissingKey,
                               e.what());
  }
}

}  // namespace dialrobust
