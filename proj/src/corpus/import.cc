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
#include <set>
#include <sstream>

#include "common/strings.h"
#include "dialrobust/corpus.h"
#include "dialrobust/errors.h"
#include "json.hpp"

namespace dialrobust {
namespace {

using nlohmann::json;

std::vector<std::string> SplitPath(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const std::size_t dot = path.find('.', start);
    parts.emplace_back(path.substr(
        start, dot == std::string_view::npos ? std::string_view::npos
                                             : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

// Resolves a dotted path; numeric segments index into arrays.
const json* Resolve(const json& root, std::string_view path) {
  if (path.empty()) return &root;
  const json* node = &root;
  for (const std::string& part : SplitPath(path)) {
    if (node->is_object()) {
      const auto it = node->find(part);
      if (it == node->end()) return nullptr;
      node = &*it;
    } else if (node->is_array() && !part.empty() &&
               part.find_first_not_of("0123456789") == std::string::npos) {
      const std::size_t index = std::stoul(part);
      if (index >= node->size()) return nullptr;
      node = &(*node)[index];
    } else {
      return nullptr;
    }
  }
  return node;
}

std::string FirstSegment(std::string_view path) {
  return std::string(path.substr(0, path.find('.')));
}

std::string ScalarToString(const json& value, std::string_view what) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw DataError(std::string(what) + " is not a string");
}

class RecordImporter {
 public:
  explicit RecordImporter(const FieldMapping& mapping) : mapping_(mapping) {
    for (const std::string* path :
         {&mapping.id, &mapping.history, &mapping.fact, &mapping.reference,
          &mapping.candidates}) {
      if (!path->empty()) record_keys_.insert(FirstSegment(*path));
    }
    candidate_keys_.insert(FirstSegment(mapping.candidate_response));
    if (!mapping.candidate_overall.empty()) {
      candidate_keys_.insert(FirstSegment(mapping.candidate_overall));
    }
    for (const auto& [source, target] : mapping.annotations) {
      candidate_keys_.insert(FirstSegment(source));
    }
  }

  Conversation Import(const json& record, std::size_t index) {
    if (!record.is_object()) throw DataError("record is not an object");
    unmapped_ += CountUnmapped(record, record_keys_);

    Conversation conversation;
    conversation.grounded = mapping_.grounded;
    conversation.id =
        mapping_.id.empty()
            ? mapping_.name + "-" + std::to_string(index)
            : ScalarToString(Require(record, mapping_.id), "id");
    conversation.history = ImportHistory(Require(record, mapping_.history));
    if (mapping_.grounded) {
      conversation.fact =
          ScalarToString(Require(record, mapping_.fact), "fact");
    }
    conversation.reference =
        ScalarToString(Require(record, mapping_.reference), "reference");

    const json& candidates = Require(record, mapping_.candidates);
    if (!candidates.is_array()) {
      throw DataError("field '" + mapping_.candidates + "' is not an array");
    }
    for (const json& entry : candidates) {
      conversation.candidates.push_back(ImportCandidate(entry));
    }
    return conversation;
  }

  std::size_t unmapped() const { return unmapped_; }

 private:
  const json& Require(const json& node, const std::string& path) const {
    const json* value = Resolve(node, path);
    if (value == nullptr || value->is_null()) {
      throw DataError("missing mapped field '" + path + "'");
    }
    return *value;
  }

  static std::size_t CountUnmapped(const json& object,
                                   const std::set<std::string>& keys) {
    std::size_t count = 0;
    for (const auto& [key, value] : object.items()) {
      if (!keys.contains(key)) ++count;
    }
    return count;
  }

  std::vector<Turn> ImportHistory(const json& value) const {
    std::vector<Turn> history;
    const auto speaker_for = [](std::size_t i) {
      return std::string(i % 2 == 0 ? "A" : "B");
    };
    if (value.is_string()) {
      const std::string text = value.get<std::string>();
      std::size_t start = 0;
      const std::string& sep = mapping_.history_separator;
      while (start <= text.size()) {
        const std::size_t end = sep.empty() ? std::string::npos
                                            : text.find(sep, start);
        const std::string_view piece = internal::Trim(std::string_view(text).substr(
            start, end == std::string::npos ? std::string::npos : end - start));
        if (!piece.empty()) {
          history.push_back({speaker_for(history.size()), std::string(piece)});
        }
        if (end == std::string::npos) break;
        start = end + sep.size();
      }
      return history;
    }
    if (!value.is_array()) {
      throw DataError("history field must be a string or an array");
    }
    for (const json& entry : value) {
      if (entry.is_string()) {
        history.push_back({speaker_for(history.size()), entry.get<std::string>()});
      } else if (entry.is_object() && !mapping_.turn_text.empty()) {
        Turn turn;
        turn.text = ScalarToString(Require(entry, mapping_.turn_text), "turn text");
        turn.speaker = mapping_.turn_speaker.empty()
                           ? speaker_for(history.size())
                           : ScalarToString(Require(entry, mapping_.turn_speaker),
                                            "turn speaker");
        history.push_back(std::move(turn));
      } else {
        throw DataError(
            "history entries must be strings, or objects with a mapped "
            "turn_text");
      }
    }
    return history;
  }

  AnnotatedCandidate ImportCandidate(const json& entry) {
    AnnotatedCandidate candidate;
    if (entry.is_string() && mapping_.candidate_response.empty()) {
      candidate.response = entry.get<std::string>();
      return candidate;
    }
    if (!entry.is_object()) throw DataError("candidate is not an object");
    unmapped_ += CountUnmapped(entry, candidate_keys_);
    candidate.response = ScalarToString(
        Require(entry, mapping_.candidate_response), "candidate response");
    for (const auto& [source, target] : mapping_.annotations) {
      const json& value = Require(entry, source);
      if (!value.is_number()) {
        throw DataError("annotation '" + source + "' is not a number");
      }
      const double rating = value.get<double>();
      if (!target.Contains(rating)) {
        throw DataError("annotation '" + source + "' value " +
                        std::to_string(rating) + " outside declared range");
      }
      candidate.annotations[target.name] = rating;
    }
    if (!mapping_.candidate_overall.empty()) {
      const json& value = Require(entry, mapping_.candidate_overall);
      if (!value.is_number()) throw DataError("overall is not a number");
      candidate.overall = value.get<double>();
    }
    return candidate;
  }

  const FieldMapping& mapping_;
  std::set<std::string> record_keys_;
  std::set<std::string> candidate_keys_;
  std::size_t unmapped_ = 0;
};

}  // namespace

FieldMapping ParseFieldMapping(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed mapping: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("mapping must be a JSON object");
  FieldMapping mapping;
  try {
    mapping.name = doc.value("name", std::string("imported"));
    mapping.grounded = doc.value("grounded", false);
    mapping.format = doc.value("format", std::string("jsonl"));
    mapping.records_path = doc.value("records_path", std::string());
    const json fields = doc.value("fields", json::object());
    const auto field = [&](const char* key, std::string fallback = {}) {
      return fields.value(key, std::move(fallback));
    };
    mapping.id = field("id");
    mapping.history = field("history");
    mapping.history_separator = field("history_separator", "\n");
    mapping.turn_speaker = field("turn_speaker");
    mapping.turn_text = field("turn_text");
    mapping.fact = field("fact");
    mapping.reference = field("reference");
    mapping.candidates = field("candidates");
    mapping.candidate_response = field("candidate_response");
    mapping.candidate_overall = field("candidate_overall");
    const json annotations = doc.value("annotations", json::object());
    for (const auto& [source, target] : annotations.items()) {
      SubmetricRange range;
      range.name = target.value("name", source);
      if (target.contains("min")) range.min = target.at("min").get<double>();
      if (target.contains("max")) range.max = target.at("max").get<double>();
      mapping.annotations[source] = std::move(range);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed mapping: ") + e.what());
  }

  const auto require = [](const std::string& value, const char* key) {
    if (value.empty()) {
      throw ConfigError(std::string("mapping does not declare field '") +
                        key + "'");
    }
  };
  require(mapping.history, "history");
  require(mapping.reference, "reference");
  require(mapping.candidates, "candidates");
  if (mapping.grounded) require(mapping.fact, "fact");
  if (!mapping.annotations.empty() || !mapping.candidate_overall.empty()) {
    require(mapping.candidate_response, "candidate_response");
  }
  if (mapping.format != "jsonl" && mapping.format != "json") {
    throw ConfigError("mapping format must be 'jsonl' or 'json'");
  }
  return mapping;
}

FieldMapping LoadFieldMapping(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mapping file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseFieldMapping(buffer.str());
}

ImportResult ImportExternal(const std::filesystem::path& source,
                            const FieldMapping& mapping) {
  if (mapping.grounded && mapping.fact.empty()) {
    throw ConfigError("grounded import requires a mapped 'fact' field");
  }
  std::ifstream in(source);
  if (!in) throw DataError("cannot open source file " + source.string());

  std::vector<json> records;
  if (mapping.format == "json") {
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw DataError(std::string("malformed source: ") + e.what());
    }
    const json* array = Resolve(doc, mapping.records_path);
    if (array == nullptr || !array->is_array()) {
      throw DataError("records path '" + mapping.records_path +
                      "' is not an array");
    }
    records.assign(array->begin(), array->end());
  } else {
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (internal::IsBlank(line)) continue;
      try {
        records.push_back(json::parse(line));
      } catch (const json::exception& e) {
        throw DataError("line " + std::to_string(line_number) +
                        ": malformed record: " + e.what());
      }
    }
  }

  RecordImporter importer(mapping);
  ImportResult result;
  result.corpus.name = mapping.name;
  result.corpus.grounded = mapping.grounded;
  for (const auto& [source_key, range] : mapping.annotations) {
    if (result.corpus.FindSubmetric(range.name) == nullptr) {
      result.corpus.submetric_schema.push_back(range);
    }
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      result.corpus.conversations.push_back(importer.Import(records[i], i));
    } catch (const DataError& e) {
      throw DataError("record " + std::to_string(i) + ": " + e.what());
    }
  }
  result.unmapped_fields = importer.unmapped();
  ValidateCorpus(result.corpus);
  return result;
}

}  // namespace dialrobust
