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

#ifndef DIALROBUST_CORPUS_H_
#define DIALROBUST_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dialrobust {

struct Turn {
  std::string speaker;
  std::string text;

  bool operator==(const Turn&) const = default;
};

// A candidate response with its human ratings. Ratings stay on the dataset's
// own scale; the schema carries the range as metadata.
struct AnnotatedCandidate {
  std::string response;
  std::map<std::string, double> annotations;
  std::optional<double> overall;

  // `overall` when set, otherwise annotations["overall"] if present.
  std::optional<double> OverallRating() const;

  bool operator==(const AnnotatedCandidate&) const = default;
};

struct Conversation {
  std::string id;
  std::vector<Turn> history;
  std::optional<std::string> fact;
  std::string reference;
  std::vector<AnnotatedCandidate> candidates;
  bool grounded = false;

  bool operator==(const Conversation&) const = default;
};

struct SubmetricRange {
  std::string name;
  std::optional<double> min;
  std::optional<double> max;

  bool Contains(double value) const {
    return (!min || value >= *min) && (!max || value <= *max);
  }
  bool operator==(const SubmetricRange&) const = default;
};

struct Corpus {
  std::string name;
  bool grounded = false;
  std::vector<Conversation> conversations;
  std::vector<SubmetricRange> submetric_schema;

  const SubmetricRange* FindSubmetric(std::string_view name) const;
  const Conversation* FindConversation(std::string_view id) const;

  bool operator==(const Corpus&) const = default;
};

// Annotation names declared by the two released subsets, with open ranges.
std::vector<SubmetricRange> DefaultSchema(bool grounded);

// Maps dataset- and metric-specific aspect names onto the shared set
// {content, naturalness, relevance, groundedness, understandability,
// overall}. Unknown names are returned lowercased.
std::string CanonicalSubmetric(std::string_view name);

// Throws DataError naming the conversation id on any violated invariant.
void ValidateConversation(const Conversation& conversation);
void ValidateCorpus(const Corpus& corpus);

// Line-delimited corpus file: an optional header record
// {"corpus", "grounded", "submetrics"} followed by one Conversation per line.
// Without a header the name defaults to `default_name`, grounding is taken
// from the records and the schema is inferred from the annotation keys.
Corpus ParseCorpus(std::istream& in, std::string_view default_name);
Corpus LoadCorpus(const std::filesystem::path& path);

std::string SerializeCorpus(const Corpus& corpus);
void SaveCorpus(const Corpus& corpus, const std::filesystem::path& path);

// Declarative description of an upstream export. Field values are
// dot-separated JSON paths relative to a record (or candidate).
struct FieldMapping {
  std::string name;
  bool grounded = false;
  // "jsonl" (one record per line) or "json" (array at `records_path`).
  std::string format = "jsonl";
  std::string records_path;

  std::string id;  // optional; records are numbered when empty
  std::string history;
  // Used when the history field is a single string rather than a list.
  std::string history_separator = "\n";
  // When history entries are objects.
  std::string turn_speaker;
  std::string turn_text;
  std::string fact;
  std::string reference;
  std::string candidates;
  std::string candidate_response;
  std::string candidate_overall;  // optional

  // Source annotation key -> target submetric and its declared range.
  std::map<std::string, SubmetricRange> annotations;
};

FieldMapping ParseFieldMapping(std::string_view json_text);
FieldMapping LoadFieldMapping(const std::filesystem::path& path);

struct ImportResult {
  Corpus corpus;
  // Source fields not referenced by the mapping (counted per occurrence).
  std::size_t unmapped_fields = 0;
};

ImportResult ImportExternal(const std::filesystem::path& source,
                            const FieldMapping& mapping);

struct CorpusStats {
  std::size_t conversations = 0;
  double mean_reference_tokens = 0.0;
  double mean_history_turns = 0.0;
};

// Token counts use the perturbation tokenizer. Throws DataError when empty.
CorpusStats ComputeCorpusStats(const Corpus& corpus);
// "conversations=100 mean_reference_tokens=7.8 mean_history_turns=4.0"
std::string FormatCorpusStats(const CorpusStats& stats);

}  // namespace dialrobust

#endif  // DIALROBUST_CORPUS_H_
