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

#include "dialrobust/attacks.h"

#include <algorithm>
#include <array>
#include <numeric>

#include "common/strings.h"
#include "dialrobust/errors.h"
#include "dialrobust/hashing.h"
#include "dialrobust/tokenizer.h"

namespace dialrobust {
namespace {

using C = AttackCategory;
using S = ResponseSource;

constexpr std::array<AttackSpec, 20> kRegistry = {{
    {"tag.teacher", C::kSpeakerTag, S::kReference, false, false, "\"teacher:\" prefix"},
    {"tag.agent", C::kSpeakerTag, S::kReference, false, false, "\"agent:\" prefix"},
    {"tag.user", C::kSpeakerTag, S::kReference, false, false, "\"user:\" prefix"},
    {"static.greeting", C::kStatic, S::kStatic, false, false, "greeting"},
    {"static.generic", C::kStatic, S::kStatic, false, false, "generic"},
    {"static.generic_question", C::kStatic, S::kStatic, false, false, "+ question"},
    {"static.generic_question_repetition", C::kStatic, S::kStatic, false, false, "+ repetition"},
    {"static.sorry_repeat", C::kStatic, S::kStatic, false, false, "ungram. relevant"},
    {"static.will_do", C::kStatic, S::kStatic, false, false, "ungram. relevant"},
    {"static.fantastic", C::kStatic, S::kStatic, false, false, "gram. irrelevant"},
    {"ungram.no_punct", C::kUngrammatical, S::kReference, false, false, "No punctuation"},
    {"ungram.no_stopwords", C::kUngrammatical, S::kReference, false, false, "No stopwords"},
    {"ungram.nouns_verbs", C::kUngrammatical, S::kReference, false, false, "Nouns & verbs"},
    {"ungram.nouns_only", C::kUngrammatical, S::kReference, false, false, "Only nouns"},
    {"ungram.jumble", C::kUngrammatical, S::kReference, false, true, "Jumbled words"},
    {"ungram.reverse", C::kUngrammatical, S::kReference, false, false, "Reversed words"},
    {"ungram.repeat", C::kUngrammatical, S::kReference, false, true, "Repeated words"},
    {"context.prev_utterance", C::kContextRepetition, S::kHistory, false, false, "Prev. utterance"},
    {"context.prev_utterance_ref", C::kContextRepetition, S::kHistory, false, false, "+ reference"},
    {"context.fact", C::kContextRepetition, S::kFact, true, false, "Fact repetition"},
}};

constexpr std::array<StaticResponse, 7> kStaticResponses = {{
    {"static.greeting", "Hello"},
    {"static.generic", "I don't know"},
    {"static.generic_question", "I don't know, what do you think?"},
    {"static.generic_question_repetition",
     "I don't know, what do you think? I think"},
    {"static.sorry_repeat", "I'm sorry, can you repeat"},
    {"static.will_do", "I will do"},
    {"static.fantastic", "fantastic! how are you?"},
}};

template <typename Keep>
std::string FilterTokens(std::string_view reference, const Lexicon& lexicon,
                         std::string_view attack, Keep keep) {
  std::vector<Token> kept;
  for (Token& token : Tokenize(reference, lexicon)) {
    if (token.is_word() && keep(token)) kept.push_back(std::move(token));
  }
  if (kept.empty()) {
    throw DegenerateOutputError(std::string(attack) +
                                ": no tokens survive the transform");
  }
  return JoinTokens(kept);
}

std::vector<Token> OrderableTokens(std::string_view reference,
                                   const Lexicon& lexicon,
                                   std::string_view attack) {
  std::vector<Token> tokens = Tokenize(reference, lexicon);
  if (tokens.size() < 2) {
    throw DegenerateOutputError(std::string(attack) +
                                ": needs at least 2 tokens");
  }
  return tokens;
}

}  // namespace

std::string_view CategoryId(AttackCategory category) {
  switch (category) {
    case C::kSpeakerTag:
      return "speaker_tag";
    case C::kStatic:
      return "static";
    case C::kUngrammatical:
      return "ungrammatical";
    case C::kContextRepetition:
      return "context_repetition";
  }
  return "";
}

std::string_view CategoryLabel(AttackCategory category) {
  switch (category) {
    case C::kSpeakerTag:
      return "Speaker Tags";
    case C::kStatic:
      return "Static Resp.";
    case C::kUngrammatical:
      return "Ungrammatical";
    case C::kContextRepetition:
      return "Context Rep.";
  }
  return "";
}

AttackCategory ParseCategory(std::string_view id) {
  for (const AttackCategory category : kAllCategories) {
    if (CategoryId(category) == id) return category;
  }
  throw DataError("unknown attack category '" + std::string(id) + "'");
}

std::string_view SourceId(ResponseSource source) {
  switch (source) {
    case S::kReference:
      return "reference";
    case S::kHistory:
      return "history";
    case S::kFact:
      return "fact";
    case S::kStatic:
      return "static";
  }
  return "";
}

ResponseSource ParseSource(std::string_view id) {
  for (const ResponseSource source :
       {S::kReference, S::kHistory, S::kFact, S::kStatic}) {
    if (SourceId(source) == id) return source;
  }
  throw DataError("unknown response source '" + std::string(id) + "'");
}

std::span<const AttackSpec> AttackRegistry() { return kRegistry; }

const AttackSpec* FindAttack(std::string_view attack_id) {
  for (const AttackSpec& spec : kRegistry) {
    if (spec.attack_id == attack_id) return &spec;
  }
  return nullptr;
}

std::span<const StaticResponse> StaticAttacks() { return kStaticResponses; }

std::string SpeakerTagAttack(std::string_view reference,
                             std::string_view tag) {
  if (tag != "teacher" && tag != "agent" && tag != "user") {
    throw DataError("unknown speaker tag '" + std::string(tag) + "'");
  }
  return std::string(tag) + ": " + std::string(reference);
}

std::string NoPunctuation(std::string_view reference, const Lexicon& lexicon) {
  return FilterTokens(reference, lexicon, "no_punct",
                      [](const Token&) { return true; });
}

std::string NoStopwords(std::string_view reference, const Lexicon& lexicon) {
  return FilterTokens(reference, lexicon, "no_stopwords",
                      [&](const Token& token) {
                        return !lexicon.IsStopword(token.text);
                      });
}

std::string NounsAndVerbs(std::string_view reference, const Lexicon& lexicon) {
  return FilterTokens(reference, lexicon, "nouns_verbs",
                      [](const Token& token) {
                        return token.tag == PosTag::kNoun ||
                               token.tag == PosTag::kPronoun ||
                               token.tag == PosTag::kVerb ||
                               token.tag == PosTag::kAuxiliary;
                      });
}

std::string NounsOnly(std::string_view reference, const Lexicon& lexicon) {
  return FilterTokens(reference, lexicon, "nouns_only", [](const Token& token) {
    return token.tag == PosTag::kNoun;
  });
}

std::string Jumble(std::string_view reference, std::uint64_t seed,
                   const Lexicon& lexicon) {
  const std::vector<Token> tokens =
      OrderableTokens(reference, lexicon, "jumble");
  std::vector<std::size_t> order(tokens.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  PortableRng rng(seed);
  // Redraw until the permutation moves at least one index.
  do {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.Shuffle(order.begin(), order.end());
  } while (std::is_sorted(order.begin(), order.end()));
  std::vector<Token> shuffled;
  shuffled.reserve(tokens.size());
  for (const std::size_t i : order) shuffled.push_back(tokens[i]);
  return JoinTokens(shuffled);
}

std::string Reverse(std::string_view reference, const Lexicon& lexicon) {
  std::vector<Token> tokens = OrderableTokens(reference, lexicon, "reverse");
  std::reverse(tokens.begin(), tokens.end());
  return JoinTokens(tokens);
}

std::string RepeatWords(std::string_view reference, double p,
                        std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DataError("repeat probability must lie in [0, 1]");
  }
  PortableRng rng(seed);
  std::string out;
  for (const std::string& word : SplitWhitespace(reference)) {
    const bool repeat = rng.Bernoulli(p);
    if (!out.empty()) out.push_back(' ');
    out += word;
    if (repeat) {
      out.push_back(' ');
      out += word;
    }
  }
  return out;
}

std::string PrevUtterance(const Conversation& conversation) {
  if (conversation.history.empty()) {
    throw DataError("conversation '" + conversation.id + "' has no history");
  }
  return conversation.history.back().text;
}

std::string PrevUtterancePrefix(const Conversation& conversation) {
  return PrevUtterance(conversation) + " " + conversation.reference;
}

std::string FactRepetition(const Conversation& conversation) {
  if (!conversation.grounded || !conversation.fact ||
      internal::IsBlank(*conversation.fact)) {
    throw NotApplicableError("conversation '" + conversation.id +
                             "' is not grounded");
  }
  return *conversation.fact;
}

}  // namespace dialrobust
