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

#ifndef DIALROBUST_BASELINE_H_
#define DIALROBUST_BASELINE_H_

#include <set>
#include <string>
#include <string_view>

#include "dialrobust/corpus.h"
#include "dialrobust/lexicon.h"
#include "dialrobust/scoring.h"

namespace dialrobust {

// Distinct content words reach full content credit at this count.
inline constexpr int kBaselineContentSaturation = 10;

// Lowercased word tokens that are not stopwords.
std::set<std::string> ContentWords(std::string_view text,
                                   const Lexicon& lexicon = Lexicon::Builtin());

// Deterministic lexical metric, every score in [0, 1]:
//   relevance    share of the response's content words found in the last
//                history turn
//   grammar      mean of three checks: terminal punctuation, stopword ratio
//                in [0.2, 0.7], no immediately repeated word
//   content      distinct content words / kBaselineContentSaturation, capped
//   groundedness share of content words found in the fact (grounded only)
//   overall      0.4 content + 0.2 grammar + 0.4 relevance
// Grounded conversations report the grammar check as "naturalness".
ScoreRecord BaselineScore(const Conversation& conversation,
                          std::string_view response,
                          const Lexicon& lexicon = Lexicon::Builtin());

inline constexpr std::string_view kBaselineName = "lexical-baseline";
inline constexpr std::string_view kBaselineVersion = "1";

}  // namespace dialrobust

#endif  // DIALROBUST_BASELINE_H_
