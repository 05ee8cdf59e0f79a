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

#ifndef DIALROBUST_SCORING_H_
#define DIALROBUST_SCORING_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"

namespace dialrobust {

enum class ScoreMode { kDirect, kWeighted };
std::string_view ScoreModeName(ScoreMode mode);
ScoreMode ParseScoreMode(std::string_view name);

// Probability of each rating value 1..5; index 0 holds P(1).
using ValueDistribution = std::array<double, 5>;

struct ScoreRecord {
  std::map<std::string, double> submetrics;
  std::map<std::string, ValueDistribution> distributions;
  double overall = 0.0;
  // Weighted mode was requested but the backend supplied no likelihoods.
  bool degraded_to_direct = false;
  std::optional<std::string> raw_text;

  bool operator==(const ScoreRecord&) const = default;
};

nlohmann::json ScoreRecordToJson(const ScoreRecord& record);
// Throws DataError on malformed input.
ScoreRecord ScoreRecordFromJson(const nlohmann::json& value);

// The five ranking heads of a DialogRPT-style evaluator, each in [0, 1].
struct DialogRptInputs {
  double updown = 0.0;
  double width = 0.0;
  double depth = 0.0;
  double human_vs_random = 0.0;
  double human_vs_machine = 0.0;
};

struct DialogRptScores {
  double content = 0.0;      // updown + 0.48 depth - 0.5 width
  double naturalness = 0.0;  // human_vs_machine
  double relevance = 0.0;    // human_vs_random
  double overall = 0.0;      // content * 0.5 (hvr + hvm)
};

// (updown + 0.48 depth - 0.5 width) * 0.5 (human_vs_random + human_vs_machine).
// Throws DataError if any head lies outside [0, 1].
double DialogRptComposite(const DialogRptInputs& in);
DialogRptScores DialogRptSubmetrics(const DialogRptInputs& in);

enum class WeightNormalization { kNone, kSumToOne };

struct CompositeSpec {
  std::map<std::string, double> weights;
  WeightNormalization normalization = WeightNormalization::kNone;

  // 0.4 content + 0.2 grammar + 0.4 relevance.
  static CompositeSpec UniEval();
};

void ValidateCompositeSpec(const CompositeSpec& spec);

// Sum of weight * score over the spec's submetrics. Throws DataError when a
// weighted submetric is missing.
double WeightedComposite(const std::map<std::string, double>& scores,
                         const CompositeSpec& spec);

// Rescales to sum 1. Throws DataError for negative or all-zero input.
ValueDistribution NormalizeDistribution(const ValueDistribution& dist);

// Expected rating sum_v v * P(v) after renormalisation; lies in [1, 5].
double WeightedScore(const ValueDistribution& dist);

// Unweighted mean of the submetric scores and the overall score.
double CombineWithOverall(std::span<const double> submetrics, double overall);

// How a metric's final overall score is derived from the backend's raw
// output.
enum class OverallRule {
  kReported,            // take the backend's overall as is
  kComposite,           // weighted composite of submetrics
  kAverageWithOverall,  // mean of submetrics and the reported overall
  kDialogRpt,           // five heads -> content/naturalness/relevance/overall
};

struct MetricProfile {
  OverallRule rule = OverallRule::kReported;
  CompositeSpec composite;
  // Declared range of every final submetric and overall score.
  std::optional<std::pair<double, double>> range;

  static MetricProfile Named(std::string_view name);
};

// Applies the profile to a raw backend record: distributions become weighted
// scores (overriding direct values), then the overall rule runs and the
// declared range is checked. Throws DataError on violations.
ScoreRecord FinalizeRecord(ScoreRecord raw, const MetricProfile& profile);

}  // namespace dialrobust

#endif  // DIALROBUST_SCORING_H_
