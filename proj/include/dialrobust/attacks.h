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

#ifndef DIALROBUST_ATTACKS_H_
#define DIALROBUST_ATTACKS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "dialrobust/corpus.h"
#include "dialrobust/lexicon.h"

namespace dialrobust {

enum class AttackCategory {
  kSpeakerTag,
  kStatic,
  kUngrammatical,
  kContextRepetition,
};

inline constexpr AttackCategory kAllCategories[] = {
    AttackCategory::kSpeakerTag, AttackCategory::kStatic,
    AttackCategory::kUngrammatical, AttackCategory::kContextRepetition};

// Where the adversarial text comes from.
enum class ResponseSource { kReference, kHistory, kFact, kStatic };

// Stable identifiers: "speaker_tag", "static", ...
std::string_view CategoryId(AttackCategory category);
// Table headings: "Speaker Tags", "Static Resp.", "Ungrammatical",
// "Context Rep.".
std::string_view CategoryLabel(AttackCategory category);
AttackCategory ParseCategory(std::string_view id);
std::string_view SourceId(ResponseSource source);
ResponseSource ParseSource(std::string_view id);

struct AttackSpec {
  std::string_view attack_id;
  AttackCategory category;
  ResponseSource source;
  bool requires_fact;
  // Draws from the seeded generator (jumble, repeated words).
  bool seeded;
  std::string_view label;
};

// The 20 attacks in emission order.
std::span<const AttackSpec> AttackRegistry();
// nullptr when unknown.
const AttackSpec* FindAttack(std::string_view attack_id);

// "<tag>: <reference>". Accepted tags: teacher, agent, user.
std::string SpeakerTagAttack(std::string_view reference, std::string_view tag);

struct StaticResponse {
  std::string_view attack_id;
  std::string_view text;
};
std::span<const StaticResponse> StaticAttacks();

// Reference-corrupting transforms. Each throws DegenerateOutputError when
// nothing survives.
std::string NoPunctuation(std::string_view reference,
                          const Lexicon& lexicon = Lexicon::Builtin());
std::string NoStopwords(std::string_view reference,
                        const Lexicon& lexicon = Lexicon::Builtin());
// Keeps nouns, pronouns, verbs and auxiliaries.
std::string NounsAndVerbs(std::string_view reference,
                          const Lexicon& lexicon = Lexicon::Builtin());
std::string NounsOnly(std::string_view reference,
                      const Lexicon& lexicon = Lexicon::Builtin());

// Token-order attacks work on punctuation-split tokens and throw DataError
// below two tokens. Jumble never returns the identity permutation.
std::string Jumble(std::string_view reference, std::uint64_t seed,
                   const Lexicon& lexicon = Lexicon::Builtin());
std::string Reverse(std::string_view reference,
                    const Lexicon& lexicon = Lexicon::Builtin());

inline constexpr double kDefaultRepeatProbability = 0.2;

// Duplicates each whitespace token in place with probability p.
std::string RepeatWords(std::string_view reference, double p,
                        std::uint64_t seed);

std::string PrevUtterance(const Conversation& conversation);
std::string PrevUtterancePrefix(const Conversation& conversation);
// Throws NotApplicableError for ungrounded conversations.
std::string FactRepetition(const Conversation& conversation);

}  // namespace dialrobust

#endif  // DIALROBUST_ATTACKS_H_
