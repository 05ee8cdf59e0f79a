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

#ifndef DIALROBUST_SUITE_H_
#define DIALROBUST_SUITE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dialrobust/attacks.h"
#include "dialrobust/corpus.h"

namespace dialrobust {

struct AdversarialResponse {
  std::string conversation_id;
  std::string attack_id;
  AttackCategory category = AttackCategory::kStatic;
  ResponseSource source = ResponseSource::kStatic;
  // Empty iff skipped.
  std::string text;
  // Per-attack seed; 0 for deterministic attacks.
  std::uint64_t seed = 0;
  // Master seed of the suite that produced this entry.
  std::uint64_t suite_seed = 0;
  std::optional<std::string> skipped_reason;

  bool skipped() const { return skipped_reason.has_value(); }
  bool operator==(const AdversarialResponse&) const = default;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  double repeat_probability = kDefaultRepeatProbability;
  // attack_id -> seed, replacing the derived per-attack seed.
  std::map<std::string, std::uint64_t, std::less<>> seed_overrides;
};

// Never returns 0, so a recorded seed of 0 always means "deterministic".
std::uint64_t DeriveAttackSeed(std::uint64_t master_seed,
                               std::string_view conversation_id,
                               std::string_view attack_id);

// One entry per applicable attack, in registry order: 20 for grounded
// conversations, 19 otherwise. Transform failures become skipped entries.
std::vector<AdversarialResponse> GenerateSuite(const Conversation& conversation,
                                               const SuiteOptions& options);

// Whole-corpus generation, parallel over conversations. The output is
// identical to concatenating GenerateSuite over the corpus in order.
std::vector<AdversarialResponse> GenerateCorpusSuite(
    const Corpus& corpus, const SuiteOptions& options);

// Line-delimited records {conversation_id, attack_id, category, source, text,
// seed, suite_seed, skipped_reason?}.
std::string SerializeSuite(const std::vector<AdversarialResponse>& suite);
void SaveSuite(const std::vector<AdversarialResponse>& suite,
               const std::filesystem::path& path);
std::vector<AdversarialResponse> ParseSuite(std::istream& in);
std::vector<AdversarialResponse> LoadSuite(const std::filesystem::path& path);

}  // namespace dialrobust

#endif  // DIALROBUST_SUITE_H_
