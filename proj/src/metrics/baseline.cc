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

#include "dialrobust/baseline.h"

#include <algorithm>
#include <vector>

#include "dialrobust/tokenizer.h"

namespace dialrobust {
namespace {

double OverlapShare(const std::set<std::string>& words,
                    const std::set<std::string>& source) {
  if (words.empty()) return 0.0;
  const auto shared = std::count_if(
      words.begin(), words.end(),
      [&](const std::string& w) { return source.count(w) > 0; });
  return static_cast<double>(shared) / static_cast<double>(words.size());
}

double GrammarScore(const std::vector<Token>& tokens, const Lexicon& lexicon) {
  std::vector<std::string> words;
  for (const Token& token : tokens) {
    if (token.is_word()) words.push_back(NormalizeWord(token.text));
  }
  if (words.empty()) return 0.0;

  const std::string& last = tokens.back().text;
  const bool terminal = !tokens.back().is_word() &&
                        (last == "." || last == "!" || last == "?");

  const auto stopwords = std::count_if(
      words.begin(), words.end(),
      [&](const std::string& w) { return lexicon.IsStopword(w); });
  const double ratio =
      static_cast<double>(stopwords) / static_cast<double>(words.size());
  const bool balanced = ratio >= 0.2 && ratio <= 0.7;

  bool repeated = false;
  for (std::size_t i = 1; i < words.size(); ++i) {
    if (words[i] == words[i - 1]) repeated = true;
  }

  const int passed = int{terminal} + int{balanced} + int{!repeated};
  return passed / 3.0;
}

}  // namespace

std::set<std::string> ContentWords(std::string_view text,
                                   const Lexicon& lexicon) {
  std::set<std::string> words;
  for (const Token& token : Tokenize(text, lexicon)) {
    if (!token.is_word()) continue;
    std::string word = NormalizeWord(token.text);
    if (!lexicon.IsStopword(word)) words.insert(std::move(word));
  }
  return words;
}

ScoreRecord BaselineScore(const Conversation& conversation,
                          std::string_view response, const Lexicon& lexicon) {
  const std::set<std::string> words = ContentWords(response, lexicon);
  const std::set<std::string> last_turn =
      conversation.history.empty()
          ? std::set<std::string>{}
          : ContentWords(conversation.history.back().text, lexicon);

  ScoreRecord record;
  const double content =
      std::min<double>(static_cast<double>(words.size()),
                       kBaselineContentSaturation) /
      kBaselineContentSaturation;
  const double grammar = GrammarScore(Tokenize(response, lexicon), lexicon);
  const double relevance = OverlapShare(words, last_turn);

  record.submetrics["content"] = content;
  record.submetrics["relevance"] = relevance;
  if (conversation.grounded && conversation.fact) {
    record.submetrics["naturalness"] = grammar;
    record.submetrics["groundedness"] =
        OverlapShare(words, ContentWords(*conversation.fact, lexicon));
  } else {
    record.submetrics["grammar"] = grammar;
  }
  record.overall = WeightedComposite(record.submetrics, CompositeSpec::UniEval());
  return record;
}

}  // namespace dialrobust
