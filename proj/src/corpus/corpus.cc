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

#include "dialrobust/corpus.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "common/strings.h"
#include "dialrobust/errors.h"
#include "dialrobust/tokenizer.h"
#include "json.hpp"

namespace dialrobust {
namespace {

using nlohmann::json;

const std::string& RequireString(const json& record, const char* key) {
  const auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw DataError(std::string("missing or non-string field '") + key + "'");
  }
  return it->get_ref<const std::string&>();
}

json TurnToJson(const Turn& turn) {
  return json{{"speaker", turn.speaker}, {"text", turn.text}};
}

json CandidateToJson(const AnnotatedCandidate& candidate) {
  json out{{"response", candidate.response},
           {"annotations", json::object()}};
  for (const auto& [name, value] : candidate.annotations) {
    out["annotations"][name] = value;
  }
  if (candidate.overall) out["overall"] = *candidate.overall;
  return out;
}

json ConversationToJson(const Conversation& conversation) {
  json out{{"id", conversation.id},
           {"grounded", conversation.grounded},
           {"reference", conversation.reference},
           {"history", json::array()},
           {"candidates", json::array()}};
  for (const Turn& turn : conversation.history) {
    out["history"].push_back(TurnToJson(turn));
  }
  if (conversation.fact) out["fact"] = *conversation.fact;
  for (const AnnotatedCandidate& candidate : conversation.candidates) {
    out["candidates"].push_back(CandidateToJson(candidate));
  }
  return out;
}

Conversation ConversationFromJson(const json& record) {
  Conversation conversation;
  conversation.id = RequireString(record, "id");
  const auto grounded = record.find("grounded");
  if (grounded == record.end() || !grounded->is_boolean()) {
    throw DataError("missing or non-boolean field 'grounded'");
  }
  conversation.grounded = grounded->get<bool>();
  conversation.reference = RequireString(record, "reference");
  const auto history = record.find("history");
  if (history == record.end() || !history->is_array()) {
    throw DataError("missing or non-array field 'history'");
  }
  for (const json& turn : *history) {
    if (!turn.is_object()) throw DataError("history entries must be objects");
    conversation.history.push_back(
        Turn{RequireString(turn, "speaker"), RequireString(turn, "text")});
  }
  if (const auto fact = record.find("fact");
      fact != record.end() && !fact->is_null()) {
    if (!fact->is_string()) throw DataError("field 'fact' must be a string");
    conversation.fact = fact->get<std::string>();
  }
  if (const auto candidates = record.find("candidates");
      candidates != record.end()) {
    if (!candidates->is_array()) {
      throw DataError("field 'candidates' must be an array");
    }
    for (const json& entry : *candidates) {
      if (!entry.is_object()) {
        throw DataError("candidate entries must be objects");
      }
      AnnotatedCandidate candidate;
      candidate.response = RequireString(entry, "response");
      if (const auto annotations = entry.find("annotations");
          annotations != entry.end()) {
        if (!annotations->is_object()) {
          throw DataError("candidate 'annotations' must be an object");
        }
        for (const auto& [name, value] : annotations->items()) {
          if (!value.is_number()) {
            throw DataError("annotation '" + name + "' is not a number");
          }
          candidate.annotations[name] = value.get<double>();
        }
      }
      if (const auto overall = entry.find("overall");
          overall != entry.end() && !overall->is_null()) {
        if (!overall->is_number()) {
          throw DataError("candidate 'overall' is not a number");
        }
        candidate.overall = overall->get<double>();
      }
      conversation.candidates.push_back(std::move(candidate));
    }
  }
  return conversation;
}

json SchemaToJson(const std::vector<SubmetricRange>& schema) {
  json out = json::array();
  for (const SubmetricRange& range : schema) {
    json entry{{"name", range.name}};
    if (range.min) entry["min"] = *range.min;
    if (range.max) entry["max"] = *range.max;
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<SubmetricRange> SchemaFromJson(const json& value) {
  if (!value.is_array()) throw DataError("'submetrics' must be an array");
  std::vector<SubmetricRange> schema;
  for (const json& entry : value) {
    SubmetricRange range;
    range.name = RequireString(entry, "name");
    if (entry.contains("min")) range.min = entry.at("min").get<double>();
    if (entry.contains("max")) range.max = entry.at("max").get<double>();
    schema.push_back(std::move(range));
  }
  return schema;
}

bool IsHeader(const json& record) {
  return record.is_object() && record.contains("corpus") &&
         !record.contains("id");
}

}  // namespace

std::optional<double> AnnotatedCandidate::OverallRating() const {
  if (overall) return overall;
  const auto it = annotations.find("overall");
  if (it != annotations.end()) return it->second;
  return std::nullopt;
}

const SubmetricRange* Corpus::FindSubmetric(std::string_view name) const {
  for (const SubmetricRange& range : submetric_schema) {
    if (range.name == name) return &range;
  }
  return nullptr;
}

const Conversation* Corpus::FindConversation(std::string_view id) const {
  for (const Conversation& conversation : conversations) {
    if (conversation.id == id) return &conversation;
  }
  return nullptr;
}

std::vector<SubmetricRange> DefaultSchema(bool grounded) {
  if (grounded) {
    return {{"naturalness", {}, {}},   {"coherence", {}, {}},
            {"interestingness", {}, {}}, {"groundedness", {}, {}},
            {"understandability", {}, {}}, {"overall", {}, {}}};
  }
  return {{"content", {}, {}},
          {"grammaticality", {}, {}},
          {"relevance", {}, {}},
          {"overall", {}, {}}};
}

std::string CanonicalSubmetric(std::string_view name) {
  const std::string lower = internal::AsciiLower(internal::Trim(name));
  if (lower == "grammar" || lower == "grammaticality" ||
      lower == "naturalness" || lower == "fluency") {
    return "naturalness";
  }
  if (lower == "coherence" || lower == "relevance") return "relevance";
  if (lower == "interestingness" || lower == "content" ||
      lower == "engagingness") {
    return "content";
  }
  return lower;
}

void ValidateConversation(const Conversation& conversation) {
  const auto fail = [&](const std::string& what) {
    throw DataError("conversation '" + conversation.id + "': " + what);
  };
  if (internal::IsBlank(conversation.id)) {
    throw DataError("conversation with empty id");
  }
  if (conversation.history.empty()) fail("history is empty");
  for (std::size_t i = 0; i < conversation.history.size(); ++i) {
    if (internal::IsBlank(conversation.history[i].text)) {
      fail("history turn " + std::to_string(i) + " has empty text");
    }
  }
  if (internal::IsBlank(conversation.reference)) fail("reference is empty");
  const bool has_fact =
      conversation.fact.has_value() && !internal::IsBlank(*conversation.fact);
  if (conversation.grounded && !has_fact) {
    fail("grounded conversation without a fact");
  }
  if (!conversation.grounded && conversation.fact.has_value()) {
    fail("ungrounded conversation carries a fact");
  }
}

void ValidateCorpus(const Corpus& corpus) {
  if (corpus.conversations.empty()) {
    throw DataError("corpus '" + corpus.name + "' is empty");
  }
  std::unordered_set<std::string> ids;
  for (const Conversation& conversation : corpus.conversations) {
    ValidateConversation(conversation);
    if (!ids.insert(conversation.id).second) {
      throw DataError("duplicate conversation id '" + conversation.id + "'");
    }
    if (conversation.grounded != corpus.grounded) {
      throw DataError("conversation '" + conversation.id +
                      "': grounded flag disagrees with corpus '" +
                      corpus.name + "'");
    }
    for (const AnnotatedCandidate& candidate : conversation.candidates) {
      for (const auto& [name, value] : candidate.annotations) {
        const SubmetricRange* range = corpus.FindSubmetric(name);
        if (range == nullptr) {
          throw DataError("conversation '" + conversation.id +
                          "': annotation '" + name +
                          "' is not declared by the corpus schema");
        }
        if (!range->Contains(value)) {
          throw DataError("conversation '" + conversation.id +
                          "': annotation '" + name + "' value " +
                          std::to_string(value) + " outside declared range");
        }
      }
    }
  }
}

Corpus ParseCorpus(std::istream& in, std::string_view default_name) {
  Corpus corpus;
  corpus.name = std::string(default_name);
  bool have_header = false;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (internal::IsBlank(line)) continue;
    try {
      const json record = json::parse(line);
      if (IsHeader(record)) {
        if (have_header || !corpus.conversations.empty()) {
          throw DataError("header record must be the first line");
        }
        corpus.name = RequireString(record, "corpus");
        corpus.grounded = record.value("grounded", false);
        if (record.contains("submetrics")) {
          corpus.submetric_schema = SchemaFromJson(record.at("submetrics"));
        }
        have_header = true;
        continue;
      }
      if (!record.is_object()) throw DataError("record is not an object");
      corpus.conversations.push_back(ConversationFromJson(record));
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_number) +
                      ": malformed record: " + e.what());
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_number) + ": " +
                      e.what());
    }
  }
  if (corpus.conversations.empty()) {
    throw DataError("corpus '" + corpus.name + "' is empty");
  }
  if (!have_header) {
    corpus.grounded = corpus.conversations.front().grounded;
    std::set<std::string> names;
    for (const Conversation& conversation : corpus.conversations) {
      for (const AnnotatedCandidate& candidate : conversation.candidates) {
        for (const auto& [name, value] : candidate.annotations) {
          names.insert(name);
        }
      }
    }
    for (const std::string& name : names) {
      corpus.submetric_schema.push_back({name, {}, {}});
    }
  }
  ValidateCorpus(corpus);
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  return ParseCorpus(in, path.stem().string());
}

std::string SerializeCorpus(const Corpus& corpus) {
  std::string out;
  const json header{{"corpus", corpus.name},
                    {"grounded", corpus.grounded},
                    {"submetrics", SchemaToJson(corpus.submetric_schema)}};
  out += header.dump();
  out += '\n';
  for (const Conversation& conversation : corpus.conversations) {
    out += ConversationToJson(conversation).dump();
    out += '\n';
  }
  return out;
}

void SaveCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file " + path.string());
  out << SerializeCorpus(corpus);
}

CorpusStats ComputeCorpusStats(const Corpus& corpus) {
  if (corpus.conversations.empty()) {
    throw DataError("corpus '" + corpus.name + "' is empty");
  }
  std::size_t tokens = 0;
  std::size_t turns = 0;
  for (const Conversation& conversation : corpus.conversations) {
    tokens += Tokenize(conversation.reference).size();
    turns += conversation.history.size();
  }
  const double n = static_cast<double>(corpus.conversations.size());
  return CorpusStats{corpus.conversations.size(),
                     static_cast<double>(tokens) / n,
                     static_cast<double>(turns) / n};
}

std::string FormatCorpusStats(const CorpusStats& stats) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer),
                "conversations=%zu mean_reference_tokens=%.1f "
                "mean_history_turns=%.1f",
                stats.conversations, stats.mean_reference_tokens,
                stats.mean_history_turns);
  return buffer;
}

}  // namespace dialrobust
