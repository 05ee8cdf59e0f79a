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

#include "dialrobust/scoring.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "dialrobust/corpus.h"
#include "dialrobust/errors.h"

namespace dialrobust {
namespace {

using nlohmann::json;

void CheckUnitInterval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DataError(std::string("DialogRPT head '") + name +
                    "' outside [0, 1]: " + std::to_string(value));
  }
}

// Exact key first, then any key naming the same canonical aspect.
const double* FindScore(const std::map<std::string, double>& scores,
                        const std::string& name) {
  if (const auto it = scores.find(name); it != scores.end()) {
    return &it->second;
  }
  const std::string canonical = CanonicalSubmetric(name);
  for (const auto& [key, value] : scores) {
    if (CanonicalSubmetric(key) == canonical) return &value;
  }
  return nullptr;
}

double RequireHead(const std::map<std::string, double>& scores,
                   const char* name) {
  const auto it = scores.find(name);
  if (it == scores.end()) {
    throw DataError(std::string("DialogRPT record lacks head '") + name + "'");
  }
  return it->second;
}

}  // namespace

std::string_view ScoreModeName(ScoreMode mode) {
  return mode == ScoreMode::kWeighted ? "weighted" : "direct";
}

ScoreMode ParseScoreMode(std::string_view name) {
  if (name == "direct") return ScoreMode::kDirect;
  if (name == "weighted") return ScoreMode::kWeighted;
  throw ConfigError("unknown scoring mode '" + std::string(name) + "'");
}

json ScoreRecordToJson(const ScoreRecord& record) {
  json out{{"submetrics", json::object()}, {"overall", record.overall}};
  for (const auto& [name, value] : record.submetrics) {
    out["submetrics"][name] = value;
  }
  if (!record.distributions.empty()) {
    json dists = json::object();
    for (const auto& [name, dist] : record.distributions) {
      dists[name] = json::array();
      for (const double p : dist) dists[name].push_back(p);
    }
    out["distributions"] = std::move(dists);
  }
  if (record.degraded_to_direct) out["degraded_to_direct"] = true;
  if (record.raw_text) out["raw_text"] = *record.raw_text;
  return out;
}

ScoreRecord ScoreRecordFromJson(const json& value) {
  if (!value.is_object()) throw DataError("score record is not an object");
  ScoreRecord record;
  try {
    if (const auto it = value.find("submetrics"); it != value.end()) {
      for (const auto& [name, score] : it->items()) {
        record.submetrics[name] = score.get<double>();
      }
    }
    if (const auto it = value.find("distributions"); it != value.end()) {
      for (const auto& [name, probs] : it->items()) {
        ValueDistribution dist{};
        if (probs.is_array()) {
          if (probs.size() != dist.size()) {
            throw DataError("distribution '" + name + "' needs 5 entries");
          }
          for (std::size_t i = 0; i < dist.size(); ++i) {
            dist[i] = probs[i].get<double>();
          }
        } else if (probs.is_object()) {
          // {"5": 0.7, "4": 0.3}
          for (const auto& [key, p] : probs.items()) {
            const int v = std::stoi(key);
            if (v < 1 || v > 5) {
              throw DataError("distribution value " + key + " outside 1..5");
            }
            dist[v - 1] = p.get<double>();
          }
        } else {
          throw DataError("distribution '" + name + "' is malformed");
        }
        record.distributions[name] = dist;
      }
    }
    record.overall = value.value("overall", 0.0);
    record.degraded_to_direct = value.value("degraded_to_direct", false);
    if (const auto it = value.find("raw_text");
        it != value.end() && it->is_string()) {
      record.raw_text = it->get<std::string>();
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed score record: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw DataError("malformed distribution key");
  }
  return record;
}

double DialogRptComposite(const DialogRptInputs& in) {
  return DialogRptSubmetrics(in).overall;
}

DialogRptScores DialogRptSubmetrics(const DialogRptInputs& in) {
  CheckUnitInterval(in.updown, "updown");
  CheckUnitInterval(in.width, "width");
  CheckUnitInterval(in.depth, "depth");
  CheckUnitInterval(in.human_vs_random, "human_vs_random");
  CheckUnitInterval(in.human_vs_machine, "human_vs_machine");
  DialogRptScores out;
  out.content = in.updown + 0.48 * in.depth - 0.5 * in.width;
  out.naturalness = in.human_vs_machine;
  out.relevance = in.human_vs_random;
  out.overall =
      out.content * (0.5 * (in.human_vs_random + in.human_vs_machine));
  return out;
}

CompositeSpec CompositeSpec::UniEval() {
  return CompositeSpec{{{"content", 0.4}, {"grammar", 0.2}, {"relevance", 0.4}},
                       WeightNormalization::kNone};
}

void ValidateCompositeSpec(const CompositeSpec& spec) {
  bool any_positive = false;
  for (const auto& [name, weight] : spec.weights) {
    if (!(weight >= 0.0)) {
      throw ConfigError("composite weight for '" + name + "' is negative");
    }
    any_positive = any_positive || weight > 0.0;
  }
  if (!any_positive) throw ConfigError("composite needs a positive weight");
}

double WeightedComposite(const std::map<std::string, double>& scores,
                         const CompositeSpec& spec) {
  ValidateCompositeSpec(spec);
  double total = 0.0;
  double weight_sum = 0.0;
  for (const auto& [name, weight] : spec.weights) {
    const double* score = FindScore(scores, name);
    if (score == nullptr) {
      throw DataError("composite submetric '" + name + "' missing");
    }
    total += weight * *score;
    weight_sum += weight;
  }
  if (spec.normalization == WeightNormalization::kSumToOne) {
    total /= weight_sum;
  }
  return total;
}

ValueDistribution NormalizeDistribution(const ValueDistribution& dist) {
  double sum = 0.0;
  for (const double p : dist) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DataError("distribution has a negative or non-finite entry");
    }
    sum += p;
  }
  if (sum <= 0.0) throw DataError("distribution has no probability mass");
  ValueDistribution out;
  for (std::size_t i = 0; i < dist.size(); ++i) out[i] = dist[i] / sum;
  return out;
}

double WeightedScore(const ValueDistribution& dist) {
  const ValueDistribution normalized = NormalizeDistribution(dist);
  double score = 0.0;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    score += static_cast<double>(i + 1) * normalized[i];
  }
  return score;
}

double CombineWithOverall(std::span<const double> submetrics, double overall) {
  const double sum = std::accumulate(submetrics.begin(), submetrics.end(), 0.0);
  return (sum + overall) / static_cast<double>(submetrics.size() + 1);
}

MetricProfile MetricProfile::Named(std::string_view name) {
  MetricProfile profile;
  if (name == "reported") return profile;
  if (name == "baseline") {
    profile.range = {0.0, 1.0};
    return profile;
  }
  if (name == "unieval") {
    profile.rule = OverallRule::kComposite;
    profile.composite = CompositeSpec::UniEval();
    profile.range = {0.0, 1.0};
    return profile;
  }
  if (name == "dialogrpt") {
    profile.rule = OverallRule::kDialogRpt;
    return profile;
  }
  if (name == "prompteval") {
    profile.rule = OverallRule::kAverageWithOverall;
    profile.range = {1.0, 5.0};
    return profile;
  }
  throw ConfigError("unknown metric profile '" + std::string(name) + "'");
}

ScoreRecord FinalizeRecord(ScoreRecord raw, const MetricProfile& profile) {
  ScoreRecord record = std::move(raw);
  for (auto& [name, dist] : record.distributions) {
    dist = NormalizeDistribution(dist);
    const double score = WeightedScore(dist);
    if (name == "overall") {
      record.overall = score;
    } else {
      record.submetrics[name] = score;
    }
  }

  switch (profile.rule) {
    case OverallRule::kReported:
      break;
    case OverallRule::kComposite:
      record.overall = WeightedComposite(record.submetrics, profile.composite);
      break;
    case OverallRule::kAverageWithOverall: {
      if (record.submetrics.empty()) {
        throw DataError("overall averaging needs at least one submetric");
      }
      std::vector<double> values;
      for (const auto& [name, value] : record.submetrics) {
        values.push_back(value);
      }
      record.overall = CombineWithOverall(values, record.overall);
      break;
    }
    case OverallRule::kDialogRpt: {
      const DialogRptInputs heads{
          RequireHead(record.submetrics, "updown"),
          RequireHead(record.submetrics, "width"),
          RequireHead(record.submetrics, "depth"),
          RequireHead(record.submetrics, "human_vs_random"),
          RequireHead(record.submetrics, "human_vs_machine")};
      const DialogRptScores scores = DialogRptSubmetrics(heads);
      record.submetrics = {{"content", scores.content},
                           {"naturalness", scores.naturalness},
                           {"relevance", scores.relevance}};
      record.overall = scores.overall;
      break;
    }
  }

  if (profile.range) {
    const auto [lo, hi] = *profile.range;
    const auto check = [&](const std::string& name, double value) {
      if (!(value >= lo - 1e-12 && value <= hi + 1e-12)) {
        throw DataError("score '" + name + "' = " + std::to_string(value) +
                        " outside the metric's declared range");
      }
    };
    for (const auto& [name, value] : record.submetrics) check(name, value);
    check("overall", record.overall);
  }
  return record;
}

}  // namespace dialrobust
