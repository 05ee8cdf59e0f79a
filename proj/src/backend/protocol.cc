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

#include <utility>

#include "dialrobust/backend.h"
#include "dialrobust/errors.h"
#include "dialrobust/hashing.h"

namespace dialrobust {
namespace {

using nlohmann::json;

const json& Field(const json& value, const char* name) {
  const auto it = value.find(name);
  if (it == value.end()) {
    throw ProtocolError(std::string("protocol record lacks '") + name + "'");
  }
  return *it;
}

std::string StringField(const json& value, const char* name) {
  const json& field = Field(value, name);
  if (!field.is_string()) {
    throw ProtocolError(std::string("'") + name + "' must be a string");
  }
  return field.get<std::string>();
}

std::vector<std::string> StringList(const json& value, const char* name) {
  const json& field = Field(value, name);
  if (!field.is_array()) {
    throw ProtocolError(std::string("'") + name + "' must be an array");
  }
  std::vector<std::string> out;
  for (const json& item : field) {
    if (!item.is_string()) {
      throw ProtocolError(std::string("'") + name + "' must hold strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

ScoreResponse ScoreResponse::Ok(std::string id, ScoreRecord record) {
  ScoreResponse response;
  response.request_id = std::move(id);
  response.record = std::move(record);
  return response;
}

ScoreResponse ScoreResponse::Fail(std::string id, std::string_view kind,
                                  std::string message) {
  ScoreResponse response;
  response.request_id = std::move(id);
  response.error = ResponseError{std::string(kind), std::move(message)};
  return response;
}

json HandshakeToJson(const Handshake& handshake) {
  return json{{"name", handshake.name},
              {"version", handshake.version},
              {"submetrics", handshake.submetrics},
              {"weighted", handshake.weighted}};
}

Handshake HandshakeFromJson(const json& value) {
  if (!value.is_object()) throw ProtocolError("handshake is not an object");
  Handshake handshake;
  handshake.name = StringField(value, "name");
  handshake.version = StringField(value, "version");
  handshake.submetrics = StringList(value, "submetrics");
  const json& weighted = Field(value, "weighted");
  if (!weighted.is_boolean()) {
    throw ProtocolError("'weighted' must be a boolean");
  }
  handshake.weighted = weighted.get<bool>();
  return handshake;
}

json RequestToJson(const ScoreRequest& request) {
  json history = json::array();
  for (const Turn& turn : request.history) {
    history.push_back({{"speaker", turn.speaker}, {"text", turn.text}});
  }
  json context{{"history", std::move(history)}};
  if (request.fact) context["fact"] = *request.fact;
  json out{{"request_id", request.request_id},
           {"conversation_id", request.conversation_id},
           {"context", std::move(context)},
           {"response", request.response},
           {"submetrics", request.submetrics},
           {"mode", ScoreModeName(request.mode)}};
  if (request.prompt) out["prompt"] = *request.prompt;
  return out;
}

ScoreRequest RequestFromJson(const json& value) {
  if (!value.is_object()) throw ProtocolError("request is not an object");
  ScoreRequest request;
  request.request_id = StringField(value, "request_id");
  if (value.contains("conversation_id")) {
    request.conversation_id = StringField(value, "conversation_id");
  }
  const json& context = Field(value, "context");
  if (!context.is_object()) throw ProtocolError("'context' is not an object");
  const json& history = Field(context, "history");
  if (!history.is_array()) throw ProtocolError("'history' is not an array");
  for (const json& turn : history) {
    if (!turn.is_object()) throw ProtocolError("history turn is not an object");
    request.history.push_back(
        {StringField(turn, "speaker"), StringField(turn, "text")});
  }
  if (context.contains("fact")) request.fact = StringField(context, "fact");
  request.response = StringField(value, "response");
  request.submetrics = StringList(value, "submetrics");
  try {
    request.mode = ParseScoreMode(StringField(value, "mode"));
  } catch (const ConfigError& e) {
    throw ProtocolError(e.what());
  }
  if (value.contains("prompt")) request.prompt = StringField(value, "prompt");
  return request;
}

json ResponseToJson(const ScoreResponse& response) {
  json out{{"request_id", response.request_id}};
  if (response.record) {
    out["record"] = ScoreRecordToJson(*response.record);
  } else if (response.error) {
    out["error"] = {{"kind", response.error->kind},
                    {"message", response.error->message}};
  }
  return out;
}

ScoreResponse ResponseFromJson(const json& value) {
  if (!value.is_object()) throw ProtocolError("response is not an object");
  ScoreResponse response;
  response.request_id = StringField(value, "request_id");
  const bool has_record = value.contains("record");
  const bool has_error = value.contains("error");
  if (has_record == has_error) {
    throw ProtocolError("response for '" + response.request_id +
                        "' must carry exactly one of record and error");
  }
  if (has_record) {
    try {
      response.record = ScoreRecordFromJson(value.at("record"));
    } catch (const DataError& e) {
      throw ProtocolError(e.what());
    }
  } else {
    const json& error = value.at("error");
    if (!error.is_object()) throw ProtocolError("'error' is not an object");
    response.error = ResponseError{StringField(error, "kind"),
                                   error.value("message", std::string())};
  }
  return response;
}

std::string EncodeLine(const json& value) {
  return value.dump(-1, ' ', false, json::error_handler_t::replace);
}

json DecodeLine(std::string_view line) {
  json value = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded() || !value.is_object()) {
    throw ProtocolError("not a JSON object: " +
                        std::string(line.substr(0, 120)));
  }
  return value;
}

std::string RequestHash(const ScoreRequest& request) {
  json canonical = RequestToJson(request);
  canonical.erase("request_id");
  return Sha256Hex(canonical.dump());
}

}  // namespace dialrobust
