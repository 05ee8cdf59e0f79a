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

#include "dialrobust/suite.h"

#include <fstream>

#include "common/strings.h"
#include "dialrobust/errors.h"
#include "dialrobust/hashing.h"
#include "json.hpp"

namespace dialrobust {
namespace {

using nlohmann::json;

std::string RunAttack(const AttackSpec& spec, const Conversation& conversation,
                      std::uint64_t seed, const SuiteOptions& options) {
  const std::string_view id = spec.attack_id;
  const std::string& reference = conversation.reference;
  if (spec.category == AttackCategory::kSpeakerTag) {
    return SpeakerTagAttack(reference, id.substr(id.find('.') + 1));
  }
  if (spec.category == AttackCategory::kStatic) {
    for (const StaticResponse& response : StaticAttacks()) {
      if (response.attack_id == id) return std::string(response.text);
    }
  }
  if (id == "ungram.no_punct") return NoPunctuation(reference);
  if (id == "ungram.no_stopwords") return NoStopwords(reference);
  if (id == "ungram.nouns_verbs") return NounsAndVerbs(reference);
  if (id == "ungram.nouns_only") return NounsOnly(reference);
  if (id == "ungram.jumble") return Jumble(reference, seed);
  if (id == "ungram.reverse") return Reverse(reference);
  if (id == "ungram.repeat") {
    return RepeatWords(reference, options.repeat_probability, seed);
  }
  if (id == "context.prev_utterance") return PrevUtterance(conversation);
  if (id == "context.prev_utterance_ref") {
    return PrevUtterancePrefix(conversation);
  }
  if (id == "context.fact") return FactRepetition(conversation);
  throw DataError("attack '" + std::string(id) + "' has no generator");
}

json ToJson(const AdversarialResponse& response) {
  json out{{"conversation_id", response.conversation_id},
           {"attack_id", response.attack_id},
           {"category", CategoryId(response.category)},
           {"source", SourceId(response.source)},
           {"text", response.text},
           {"seed", response.seed},
           {"suite_seed", response.suite_seed}};
  if (response.skipped_reason) out["skipped_reason"] = *response.skipped_reason;
  return out;
}

AdversarialResponse FromJson(const json& record) {
  AdversarialResponse response;
  response.conversation_id = record.at("conversation_id").get<std::string>();
  response.attack_id = record.at("attack_id").get<std::string>();
  response.category = ParseCategory(record.at("category").get<std::string>());
  response.source = ParseSource(record.value("source", std::string("static")));
  response.text = record.at("text").get<std::string>();
  response.seed = record.at("seed").get<std::uint64_t>();
  response.suite_seed = record.value("suite_seed", std::uint64_t{0});
  if (const auto it = record.find("skipped_reason");
      it != record.end() && !it->is_null()) {
    response.skipped_reason = it->get<std::string>();
  }
  const AttackSpec* spec = FindAttack(response.attack_id);
  if (spec == nullptr) {
    throw DataError("unknown attack id '" + response.attack_id + "'");
  }
  if (spec->category != response.category) {
    throw DataError("attack '" + response.attack_id +
                    "' recorded under the wrong category");
  }
  return response;
}

}  // namespace

std::uint64_t DeriveAttackSeed(std::uint64_t master_seed,
                               std::string_view conversation_id,
                               std::string_view attack_id) {
  std::uint64_t h = SplitMix64(master_seed);
  h = SplitMix64(h ^ Fnv1a64(conversation_id));
  h = SplitMix64(h ^ Fnv1a64(attack_id));
  return h == 0 ? 1 : h;
}

std::vector<AdversarialResponse> GenerateSuite(const Conversation& conversation,
                                               const SuiteOptions& options) {
  std::vector<AdversarialResponse> suite;
  for (const AttackSpec& spec : AttackRegistry()) {
    if (spec.requires_fact && !conversation.grounded) continue;
    AdversarialResponse response;
    response.conversation_id = conversation.id;
    response.attack_id = std::string(spec.attack_id);
    response.category = spec.category;
    response.source = spec.source;
    response.suite_seed = options.seed;
    if (spec.seeded) {
      const auto pinned = options.seed_overrides.find(spec.attack_id);
      response.seed = pinned != options.seed_overrides.end()
                          ? pinned->second
                          : DeriveAttackSeed(options.seed, conversation.id,
                                             spec.attack_id);
    }
    try {
      response.text = RunAttack(spec, conversation, response.seed, options);
      if (internal::IsBlank(response.text)) {
        response.text.clear();
        response.skipped_reason = "degenerate output: empty response";
      }
    } catch (const DataError& e) {
      response.text.clear();
      response.skipped_reason = e.what();
    }
    suite.push_back(std::move(response));
  }
  return suite;
}

std::vector<AdversarialResponse> GenerateCorpusSuite(
    const Corpus& corpus, const SuiteOptions& options) {
  // Force the lexicon's one-time load before the parallel region.
  (void)Lexicon::Builtin();
  const auto n = static_cast<std::ptrdiff_t>(corpus.conversations.size());
  std::vector<std::vector<AdversarialResponse>> per_conversation(
      corpus.conversations.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    per_conversation[i] = GenerateSuite(corpus.conversations[i], options);
  }
  std::vector<AdversarialResponse> suite;
  for (auto& part : per_conversation) {
    std::move(part.begin(), part.end(), std::back_inserter(suite));
  }
  return suite;
}

std::string SerializeSuite(const std::vector<AdversarialResponse>& suite) {
  std::string out;
  for (const AdversarialResponse& response : suite) {
    out += ToJson(response).dump();
    out += '\n';
  }
  return out;
}

void SaveSuite(const std::vector<AdversarialResponse>& suite,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write suite file " + path.string());
  out << SerializeSuite(suite);
}

std::vector<AdversarialResponse> ParseSuite(std::istream& in) {
  std::vector<AdversarialResponse> suite;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (internal::IsBlank(line)) continue;
    try {
      suite.push_back(FromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw DataError("suite line " + std::to_string(line_number) +
                      ": malformed record: " + e.what());
    } catch (const DataError& e) {
      throw DataError("suite line " + std::to_string(line_number) + ": " +
                      e.what());
    }
  }
  return suite;
}

std::vector<AdversarialResponse> LoadSuite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open suite file " + path.string());
  return ParseSuite(in);
}

}  // namespace dialrobust
