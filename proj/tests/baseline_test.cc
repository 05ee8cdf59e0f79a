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

#include <string>

#include "dialrobust/attacks.h"
#include "dialrobust/backend.h"
#include "dialrobust/scoring.h"
#include "gtest/gtest.h"
#include "testing/fixtures.h"

namespace dialrobust {
namespace {

using ::dialrobust::testing::kRepeatGoldenSeed;
using ::dialrobust::testing::kSodaReference;
using ::dialrobust::testing::SodaConversation;

TEST(ContentWords, DropsStopwordsAndPunctuation) {
  EXPECT_EQ(ContentWords(kSodaReference),
            (std::set<std::string>{"i", "thinking", "getting", "soda"}));
}

TEST(BaselineScore, CopyingLastTurnIsFullyRelevant) {
  const Conversation c = SodaConversation();
  const ScoreRecord r = BaselineScore(c, c.history.back().text);
  EXPECT_EQ(r.submetrics.at("relevance"), 1.0);
}

TEST(BaselineScore, NoSharedContentWords) {
  const ScoreRecord r = BaselineScore(SodaConversation(), "Bicycles rust.");
  EXPECT_EQ(r.submetrics.at("relevance"), 0.0);
}

TEST(BaselineScore, RepeatedWordsLowerGrammar) {
  const Conversation c = SodaConversation();
  const std::string repeated =
      RepeatWords(kSodaReference, 0.2, kRepeatGoldenSeed);
  EXPECT_LT(BaselineScore(c, repeated).submetrics.at("grammar"),
            BaselineScore(c, kSodaReference).submetrics.at("grammar"));
}

TEST(BaselineScore, HandComputedReference) {
  const ScoreRecord r = BaselineScore(SodaConversation(), kSodaReference);
  // Three of seven words are stopwords, the sentence ends in ".", and no word
  // repeats.
  EXPECT_DOUBLE_EQ(r.submetrics.at("grammar"), 1.0);
  EXPECT_DOUBLE_EQ(r.submetrics.at("content"), 0.4);
  EXPECT_DOUBLE_EQ(r.submetrics.at("relevance"), 0.0);
  EXPECT_NEAR(r.overall, 0.4 * 0.4 + 0.2 * 1.0, 1e-12);
}

TEST(BaselineScore, GroundedKeysAndFactOverlap) {
  const Conversation c = testing::GroundedSodaConversation();
  const ScoreRecord r = BaselineScore(c, *c.fact);
  EXPECT_EQ(r.submetrics.count("grammar"), 0u);
  EXPECT_EQ(r.submetrics.at("groundedness"), 1.0);
  EXPECT_TRUE(r.submetrics.count("naturalness"));
}

TEST(BaselineScore, ScoresInUnitIntervalAndDeterministic) {
  const Corpus corpus = testing::SyntheticCorpus(40, true, 12);
  for (const Conversation& c : corpus.conversations) {
    for (const AnnotatedCandidate& candidate : c.candidates) {
      const ScoreRecord a = BaselineScore(c, candidate.response);
      EXPECT_EQ(a, BaselineScore(c, candidate.response));
      EXPECT_NO_THROW(FinalizeRecord(a, MetricProfile::Named("baseline")));
    }
  }
}

TEST(BaselineBackend, DeclaresSubmetricsAndScores) {
  BaselineBackend ungrounded(false);
  EXPECT_EQ(ungrounded.info().submetrics,
            (std::vector<std::string>{"content", "grammar", "relevance"}));
  EXPECT_FALSE(ungrounded.info().weighted);
  BaselineBackend grounded(true);
  EXPECT_EQ(grounded.info().submetrics.size(), 4u);

  const Conversation c = SodaConversation();
  ScoreRequest request;
  request.request_id = "r1";
  request.conversation_id = c.id;
  request.history = c.history;
  request.response = std::string(kSodaReference);
  const ScoreResponse response = ungrounded.Score(request);
  ASSERT_TRUE(response.ok());
  EXPECT_EQ(response.request_id, "r1");
  EXPECT_EQ(*response.record, BaselineScore(c, kSodaReference));
}

}  // namespace
}  // namespace dialrobust
