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


#ifndef DIALROBUST_TESTS_TESTING_FIXTURES_H_
#define DIALROBUST_TESTS_TESTING_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dialrobust/corpus.h"
#include "dialrobust/suite.h"

namespace dialrobust::testing {

inline constexpr std::string_view kSodaReference =
    "I was thinking about getting a soda.";
inline constexpr std::string_view kRadioFact =
    "According to Canadian law, all radios are required to have at least 40% "
    "of the music played be Canadian.";

// Seeds reproducing the golden jumbled and repeated rows for the soda
// reference.
inline constexpr std::uint64_t kJumbleGoldenSeed = 24150;
inline constexpr std::uint64_t kRepeatGoldenSeed = 1;

// Master seed 2024 with the golden jumble and repeat seeds pinned.
SuiteOptions GoldenOptions();
// The golden adversarial rows for the drinks dialogue, in registry order.
const std::vector<std::string>& GoldenUngroundedRows();

// The four-turn drinks dialogue with the soda reference.
Conversation SodaConversation();
// The same dialogue grounded in the radio fact.
Conversation GroundedSodaConversation();

// Generated dialogues with 2-4 history turns, a reference and three
// annotated candidates (ratings 1-5). Stable for a given seed.
Corpus SyntheticCorpus(int conversations, bool grounded, std::uint64_t seed);

// Dialogues whose reference shares no content word with the last history
// turn.
Corpus LowOverlapCorpus(int conversations, std::uint64_t seed);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace dialrobust::testing

#endif  // DIALROBUST_TESTS_TESTING_FIXTURES_H_
