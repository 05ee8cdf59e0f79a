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


#include "testing/fixtures.h"

#include <stdlib.h>

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dialrobust/hashing.h"

namespace dialrobust::testing {
namespace {

constexpr std::array<std::string_view, 12> kOpeners = {
    "Did you see the game last night?",
    "My throat is really dry.",
    "I just got back from the market.",
    "The weather has been strange this week.",
    "Have you finished the book yet?",
    "We should plan a trip soon.",
    "My sister called me this morning.",
    "The train was late again today.",
    "I think my laptop is broken.",
    "Our neighbours painted their fence.",
    "The concert tickets go on sale tomorrow.",
    "I started a new job on Monday.",
};

constexpr std::array<std::string_view, 10> kFollowUps = {
    "Really? Tell me more.",
    "That sounds interesting.",
    "Oh no, what happened?",
    "I had no idea.",
    "What are you going to do about it?",
    "How did that make you feel?",
    "Do you want some help with that?",
    "When did that start?",
    "Was it expensive?",
    "Who else knows about it?",
};

constexpr std::array<std::string_view, 16> kNouns = {
    "garden", "bicycle", "kitchen", "guitar", "window", "sandwich",
    "museum", "teacher", "river",   "camera", "jacket", "ticket",
    "doctor", "library", "pizza",   "engine",
};

constexpr std::array<std::string_view, 8> kVerbs = {
    "fixing", "painting", "visiting", "cleaning",
    "buying", "selling",  "drawing",  "washing",
};

std::string Capitalize(std::string text) {
  if (!text.empty() && text[0] >= 'a' && text[0] <= 'z') {
    text[0] = static_cast<char>(text[0] - 'a' + 'A');
  }
  return text;
}

std::string MakeReference(PortableRng& rng) {
  const std::string_view verb = kVerbs[rng.UniformBelow(kVerbs.size())];
  const std::string_view a = kNouns[rng.UniformBelow(kNouns.size())];
  std::string_view b = kNouns[rng.UniformBelow(kNouns.size())];
  while (b == a) b = kNouns[rng.UniformBelow(kNouns.size())];
  return "I was " + std::string(verb) + " the " + std::string(a) +
         " near the " + std::string(b) + ".";
}

std::vector<Turn> MakeHistory(PortableRng& rng) {
  const int turns = 2 + static_cast<int>(rng.UniformBelow(3));
  std::vector<Turn> history;
  history.push_back(
      {"A", std::string(kOpeners[rng.UniformBelow(kOpeners.size())])});
  for (int i = 1; i < turns; ++i) {
    history.push_back({i % 2 ? "B" : "A",
                       std::string(kFollowUps[rng.UniformBelow(
                           kFollowUps.size())])});
  }
  return history;
}

}  // namespace

SuiteOptions GoldenOptions() {
  SuiteOptions options;
  options.seed = 2024;
  options.seed_overrides = {{"ungram.jumble", kJumbleGoldenSeed},
                            {"ungram.repeat", kRepeatGoldenSeed}};
  return options;
}

const std::vector<std::string>& GoldenUngroundedRows() {
  static const auto* rows = new std::vector<std::string>{
      "teacher: I was thinking about getting a soda.",
      "agent: I was thinking about getting a soda.",
      "user: I was thinking about getting a soda.",
      "Hello",
      "I don't know",
      "I don't know, what do you think?",
      "I don't know, what do you think? I think",
      "I'm sorry, can you repeat",
      "I will do",
      "fantastic! how are you?",
      "I was thinking about getting a soda",
      "I thinking getting soda",
      "I was thinking getting soda",
      "soda",
      "a I soda was about thinking getting .",
      ". soda a getting about thinking was I",
      "I I was was thinking about about getting a soda.",
      "What did you want to drink?",
      "What did you want to drink? I was thinking about getting a soda.",
  };
  return *rows;
}

Conversation SodaConversation() {
  Conversation c;
  c.id = "drinks";
  c.history = {{"A", "My throat is really dry."},
               {"B", "Do you want to go get something to drink?"},
               {"A", "Yes, I'm parched."},
               {"B", "What did you want to drink?"}};
  c.reference = std::string(kSodaReference);
  return c;
}

Conversation GroundedSodaConversation() {
  Conversation c = SodaConversation();
  c.id = "drinks-grounded";
  c.fact = std::string(kRadioFact);
  c.grounded = true;
  return c;
}

Corpus SyntheticCorpus(int conversations, bool grounded, std::uint64_t seed) {
  PortableRng rng(seed);
  Corpus corpus;
  corpus.name = grounded ? "synthetic-grounded" : "synthetic";
  corpus.grounded = grounded;
  corpus.submetric_schema = DefaultSchema(grounded);
  for (int i = 0; i < conversations; ++i) {
    Conversation c;
    std::ostringstream id;
    id << "conv-" << i;
    c.id = id.str();
    c.history = MakeHistory(rng);
    c.reference = MakeReference(rng);
    c.grounded = grounded;
    if (grounded) {
      c.fact = Capitalize(std::string(kNouns[rng.UniformBelow(kNouns.size())])) +
               "s are often found near a " +
               std::string(kNouns[rng.UniformBelow(kNouns.size())]) + ".";
    }
    for (int k = 0; k < 3; ++k) {
      AnnotatedCandidate candidate;
      candidate.response = MakeReference(rng);
      for (const SubmetricRange& range : corpus.submetric_schema) {
        if (range.name == "overall") continue;
        candidate.annotations[range.name] =
            static_cast<double>(1 + rng.UniformBelow(5));
      }
      candidate.overall = static_cast<double>(1 + rng.UniformBelow(5));
      c.candidates.push_back(std::move(candidate));
    }
    corpus.conversations.push_back(std::move(c));
  }
  return corpus;
}

Corpus LowOverlapCorpus(int conversations, std::uint64_t seed) {
  PortableRng rng(seed);
  Corpus corpus;
  corpus.name = "low-overlap";
  corpus.submetric_schema = DefaultSchema(false);
  for (int i = 0; i < conversations; ++i) {
    Conversation c;
    c.id = "low-" + std::to_string(i);
    // The last turn is always a follow-up, which never mentions the noun
    // pool.
    c.history = MakeHistory(rng);
    c.reference = MakeReference(rng);
    corpus.conversations.push_back(std::move(c));
  }
  return corpus;
}

TempDir::TempDir() {
  std::string pattern =
      (std::filesystem::temp_directory_path() / "dialrobust-XXXXXX").string();
  if (mkdtemp(pattern.data()) == nullptr) {
    throw std::runtime_error("mkdtemp failed");
  }
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ignored;
  std::filesystem::remove_all(path_, ignored);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace dialrobust::testing
