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

#include "dialrobust/prompt.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "common/strings.h"
#include "dialrobust/embedded_data.h"
#include "dialrobust/errors.h"

namespace dialrobust {
namespace {

using internal::AsciiLower;
using internal::IsBlank;
using internal::Trim;

bool IsPlaceholderChar(char c) {
  return (c >= 'a' && c <= 'z') || c == '_';
}

PromptTemplate ParseBuiltin(std::string_view path) {
  const auto source = FindEmbeddedFile(path);
  if (!source) {
    throw ConfigError("missing bundled template " + std::string(path));
  }
  return PromptTemplate::Parse(*source);
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

struct IntegerHit {
  long value;
  std::size_t offset;
};

// Whole integers in text[begin, end), skipping parenthesised spans such as
// "(1-5)" and the digits of decimals.
std::vector<IntegerHit> FindIntegers(std::string_view text, std::size_t begin,
                                     std::size_t end, bool skip_parens) {
  std::vector<IntegerHit> hits;
  int depth = 0;
  std::size_t i = begin;
  while (i < end) {
    const char c = text[i];
    if (skip_parens && c == '(') {
      ++depth;
      ++i;
      continue;
    }
    if (skip_parens && c == ')' && depth > 0) {
      --depth;
      ++i;
      continue;
    }
    if (depth > 0 || !IsDigit(c)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < end && IsDigit(text[j])) ++j;
    const bool decimal_before = i > begin && text[i - 1] == '.' &&
                                i >= begin + 2 && IsDigit(text[i - 2]);
    const bool decimal_after =
        j + 1 < end && text[j] == '.' && IsDigit(text[j + 1]);
    if (!decimal_before && !decimal_after) {
      const std::string digits(text.substr(i, std::min<std::size_t>(j - i, 6)));
      hits.push_back({std::stol(digits), i});
    } else {
      hits.push_back({-1, i});
    }
    i = j;
    while (i < end && (IsDigit(text[i]) || text[i] == '.')) ++i;
  }
  return hits;
}

void AssignScore(ParsedScores& parsed, const RubricEntry& entry,
                 const IntegerHit& hit) {
  if (hit.value < 1 || hit.value > 5) {
    throw UnparseableOutputError("score for '" + entry.label +
                                 "' is not an integer from 1 to 5");
  }
  const auto value = static_cast<double>(hit.value);
  if (entry.submetric == "overall") {
    parsed.record.overall = value;
  } else {
    parsed.record.submetrics[entry.submetric] = value;
  }
  parsed.offsets[entry.submetric] = hit.offset;
}

std::size_t MatchLabel(std::string_view line, const RubricEntry& entry) {
  for (const std::string& candidate :
       {AsciiLower(entry.label), AsciiLower(entry.submetric)}) {
    if (!candidate.empty() && line.substr(0, candidate.size()) == candidate) {
      return candidate.size();
    }
  }
  return 0;
}

}  // namespace

bool PromptTemplate::uses_fact() const {
  return text.find("{fact}") != std::string::npos;
}

std::vector<std::string> PromptTemplate::Submetrics() const {
  std::vector<std::string> names;
  for (const RubricEntry& entry : rubric) {
    if (entry.submetric != "overall") names.push_back(entry.submetric);
  }
  return names;
}

PromptTemplate PromptTemplate::Parse(std::string_view source) {
  PromptTemplate tpl;
  std::size_t pos = 0;
  bool closed = false;
  while (pos < source.size()) {
    std::size_t end = source.find('\n', pos);
    if (end == std::string_view::npos) end = source.size();
    const std::string_view line = Trim(source.substr(pos, end - pos));
    pos = end + 1;
    if (line == "---") {
      closed = true;
      break;
    }
    if (line.empty()) continue;
    if (line.front() != '@') {
      throw ConfigError("template front matter line must start with '@': " +
                        std::string(line));
    }
    const std::size_t space = line.find(' ');
    const std::string_view key = line.substr(1, space - 1);
    const std::string_view value =
        space == std::string_view::npos ? "" : Trim(line.substr(space + 1));
    if (key == "name") {
      tpl.name = value;
    } else if (key == "mode") {
      tpl.mode = ParseScoreMode(value);
    } else if (key == "rubric") {
      const std::size_t split = value.find(' ');
      if (split == std::string_view::npos) {
        throw ConfigError("@rubric needs a submetric and a label");
      }
      tpl.rubric.push_back({std::string(value.substr(0, split)),
                            std::string(Trim(value.substr(split + 1)))});
    } else {
      throw ConfigError("unknown template key '@" + std::string(key) + "'");
    }
  }
  if (!closed) throw ConfigError("template lacks the '---' separator");
  if (tpl.rubric.empty()) throw ConfigError("template declares no rubric");
  tpl.text = std::string(source.substr(std::min(pos, source.size())));
  for (std::size_t i = 0; i < tpl.rubric.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (tpl.rubric[i].submetric == tpl.rubric[j].submetric) {
        throw ConfigError("duplicate rubric submetric '" +
                          tpl.rubric[i].submetric + "'");
      }
    }
  }
  return tpl;
}

PromptTemplate PromptTemplate::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open template " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

const PromptTemplate& PromptTemplate::BuiltinUngrounded() {
  static const PromptTemplate* const tpl =
      new PromptTemplate(ParseBuiltin("templates/ungrounded.txt"));
  return *tpl;
}

const PromptTemplate& PromptTemplate::BuiltinGrounded() {
  static const PromptTemplate* const tpl =
      new PromptTemplate(ParseBuiltin("templates/grounded.txt"));
  return *tpl;
}

const PromptTemplate& PromptTemplate::BuiltinFor(bool grounded) {
  return grounded ? BuiltinGrounded() : BuiltinUngrounded();
}

std::string RenderPrompt(const PromptTemplate& tpl,
                         const Conversation& conversation,
                         std::string_view response,
                         const SpeakerLabels& labels) {
  if (IsBlank(response)) throw DataError("cannot render an empty response");
  if (conversation.history.empty()) {
    throw DataError("conversation '" + conversation.id + "' has no history");
  }
  const auto label_for = [&](std::size_t turn) -> const std::string& {
    return turn % 2 == 0 ? labels.first : labels.second;
  };

  std::string history;
  for (std::size_t i = 0; i < conversation.history.size(); ++i) {
    if (i > 0) history += '\n';
    history += label_for(i) + ": " + conversation.history[i].text;
  }
  std::map<std::string, std::string, std::less<>> values = {
      {"speakers", labels.first + " and " + labels.second},
      {"history", std::move(history)},
      {"response", label_for(conversation.history.size()) + ": " +
                       std::string(response)},
  };
  if (conversation.fact && !conversation.fact->empty()) {
    values["fact"] = *conversation.fact;
  }

  std::string out;
  out.reserve(tpl.text.size() + 512);
  std::size_t i = 0;
  while (i < tpl.text.size()) {
    const char c = tpl.text[i];
    if (c == '{') {
      std::size_t j = i + 1;
      while (j < tpl.text.size() && IsPlaceholderChar(tpl.text[j])) ++j;
      if (j < tpl.text.size() && tpl.text[j] == '}' && j > i + 1) {
        const std::string_view name(&tpl.text[i + 1], j - i - 1);
        const auto it = values.find(name);
        if (it == values.end()) {
          throw ConfigError("unresolved placeholder {" + std::string(name) +
                            "} in template '" + tpl.name + "'");
        }
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out += c;
    ++i;
  }
  return out;
}

ParsedScores ParseScoresDetailed(std::string_view output,
                                 std::span<const RubricEntry> rubric) {
  ParsedScores parsed;
  parsed.record.raw_text = std::string(output);
  std::vector<bool> found(rubric.size(), false);
  std::size_t labelled = 0;

  std::size_t pos = 0;
  while (pos <= output.size()) {
    std::size_t end = output.find('\n', pos);
    if (end == std::string_view::npos) end = output.size();
    std::size_t start = pos;
    while (start < end && (internal::IsSpace(output[start]) ||
                           output[start] == '-' || output[start] == '*' ||
                           output[start] == '#')) {
      ++start;
    }
    const std::string line = AsciiLower(output.substr(start, end - start));
    // Longest label first so that "Overall Score" wins over a shorter
    // overlapping name.
    std::size_t best = rubric.size();
    std::size_t best_len = 0;
    for (std::size_t r = 0; r < rubric.size(); ++r) {
      const std::size_t len = MatchLabel(line, rubric[r]);
      if (len > best_len) {
        best = r;
        best_len = len;
      }
    }
    if (best < rubric.size() && !found[best]) {
      const auto hits =
          FindIntegers(output, start + best_len, end, /*skip_parens=*/true);
      if (!hits.empty()) {
        AssignScore(parsed, rubric[best], hits.front());
        found[best] = true;
        ++labelled;
      }
    }
    if (end == output.size()) break;
    pos = end + 1;
  }

  if (labelled == rubric.size()) return parsed;
  if (labelled > 0) {
    for (std::size_t r = 0; r < rubric.size(); ++r) {
      if (!found[r]) {
        throw UnparseableOutputError("no score for '" + rubric[r].label + "'");
      }
    }
  }
  const auto hits =
      FindIntegers(output, 0, output.size(), /*skip_parens=*/false);
  if (hits.size() != rubric.size()) {
    throw UnparseableOutputError("expected " + std::to_string(rubric.size()) +
                                 " scores, found " +
                                 std::to_string(hits.size()));
  }
  for (std::size_t r = 0; r < rubric.size(); ++r) {
    AssignScore(parsed, rubric[r], hits[r]);
  }
  return parsed;
}

ScoreRecord ParseScores(std::string_view output,
                        std::span<const RubricEntry> rubric) {
  return ParseScoresDetailed(output, rubric).record;
}

}  // namespace dialrobust
