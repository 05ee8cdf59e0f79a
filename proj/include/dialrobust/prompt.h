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

#ifndef DIALROBUST_PROMPT_H_
#define DIALROBUST_PROMPT_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dialrobust/corpus.h"
#include "dialrobust/scoring.h"

namespace dialrobust {

// One scored aspect of the evaluation form: the submetric key and the label
// the model is asked to print ("Content Quality").
struct RubricEntry {
  std::string submetric;
  std::string label;

  bool operator==(const RubricEntry&) const = default;
};

// A prompt file is a front matter block followed by "---" and the body:
//
//   @name prompteval-ungrounded
//   @mode direct
//   @rubric content Content Quality
//   @rubric overall Overall Score
//   ---
//   ... {speakers} ... {history} ... {response} ... {fact} ...
struct PromptTemplate {
  std::string name;
  std::string text;
  std::vector<RubricEntry> rubric;
  ScoreMode mode = ScoreMode::kDirect;

  bool uses_fact() const;
  // Rubric submetrics other than "overall", in rubric order.
  std::vector<std::string> Submetrics() const;

  // Throws ConfigError on malformed front matter.
  static PromptTemplate Parse(std::string_view source);
  static PromptTemplate Load(const std::filesystem::path& path);
  static const PromptTemplate& BuiltinUngrounded();
  static const PromptTemplate& BuiltinGrounded();
  // The grounded template for grounded conversations, else the ungrounded.
  static const PromptTemplate& BuiltinFor(bool grounded);
};

struct SpeakerLabels {
  std::string first = "Alice";
  std::string second = "Bob";
};

// Fills the template. History turns alternate between the two labels
// starting with `first`; the response is attributed to whoever speaks next.
// Throws DataError for an empty response and ConfigError when a placeholder
// stays unresolved (e.g. {fact} for an ungrounded conversation).
std::string RenderPrompt(const PromptTemplate& tpl,
                         const Conversation& conversation,
                         std::string_view response,
                         const SpeakerLabels& labels = {});

struct ParsedScores {
  ScoreRecord record;
  // Byte offset of each score's digit in the output, keyed by submetric
  // ("overall" included).
  std::map<std::string, std::size_t> offsets;
};

// Reads one integer 1-5 per rubric entry. Lines are matched by label or
// submetric name in any order; when no line carries a label the integers
// are taken positionally in rubric order. Throws UnparseableOutputError.
ParsedScores ParseScoresDetailed(std::string_view output,
                                 std::span<const RubricEntry> rubric);
ScoreRecord ParseScores(std::string_view output,
                        std::span<const RubricEntry> rubric);

}  // namespace dialrobust

#endif  // DIALROBUST_PROMPT_H_
