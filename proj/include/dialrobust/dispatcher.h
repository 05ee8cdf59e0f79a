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

#ifndef DIALROBUST_DISPATCHER_H_
#define DIALROBUST_DISPATCHER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialrobust/backend.h"
#include "dialrobust/corpus.h"
#include "dialrobust/prompt.h"
#include "dialrobust/scoring.h"
#include "dialrobust/suite.h"

namespace dialrobust {

enum class EntryRole { kReference, kCandidate, kAdversarial };
std::string_view EntryRoleName(EntryRole role);
EntryRole ParseEntryRole(std::string_view name);

// One scored (or excluded) response.
struct ScoreEntry {
  std::string conversation_id;
  EntryRole role = EntryRole::kReference;
  std::string attack_id;     // adversarial entries
  int candidate_index = -1;  // candidate entries
  std::string response;
  std::optional<ScoreRecord> record;
  std::optional<ResponseError> error;
  // Set for suite entries whose transform was skipped; never dispatched.
  std::optional<std::string> skipped_reason;
  // Human ratings carried over from the corpus for candidate entries.
  std::map<std::string, double> annotations;
  std::optional<double> human_overall;

  bool scored() const { return record.has_value(); }
  bool operator==(const ScoreEntry&) const = default;
};

// Everything one metric produced for one corpus and suite.
struct ScoreTable {
  std::string metric;
  Handshake backend;
  std::string corpus;
  bool grounded = false;
  std::uint64_t seed = 0;
  ScoreMode mode = ScoreMode::kDirect;
  std::string profile = "reported";
  // Distinct requests sent after de-duplication.
  std::size_t dispatched = 0;
  std::vector<ScoreEntry> entries;

  // Error kind -> number of entries excluded for it. Skipped suite entries
  // carry no error and are not counted.
  std::map<std::string, std::size_t> ErrorCounts() const;
  std::size_t ExcludedCount() const;
  bool operator==(const ScoreTable&) const = default;
};

struct DispatchOptions {
  std::string metric_name;
  ScoreMode mode = ScoreMode::kDirect;
  // Requested submetrics; empty means the backend's declared set.
  std::vector<std::string> submetrics;
  std::string profile_name = "reported";
  MetricProfile profile;
  // Maximum requests in flight.
  int jobs = 4;
  // When set, each request carries the rendered evaluation prompt.
  std::optional<PromptTemplate> prompt;
  SpeakerLabels labels;
};

// Scores every reference, annotated candidate and generated adversarial
// response. Identical (conversation, response) pairs are sent once. Failures
// on individual responses are recorded on their entries; only a capability
// mismatch, detected before anything is sent, throws.
ScoreTable ScoreSuite(const Corpus& corpus,
                      const std::vector<AdversarialResponse>& suite,
                      Scorer& scorer, const DispatchOptions& options);

// Header record followed by one entry per line.
std::string SerializeScoreTable(const ScoreTable& table);
void SaveScoreTable(const ScoreTable& table, const std::filesystem::path& path);
ScoreTable ParseScoreTable(std::istream& in);
ScoreTable LoadScoreTable(const std::filesystem::path& path);

}  // namespace dialrobust

#endif  // DIALROBUST_DISPATCHER_H_
