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

#include "dialrobust/correlation.h"

#include "dialrobust/corpus.h"
#include "dialrobust/errors.h"

namespace dialrobust {
namespace {

std::optional<double> HumanRating(const ScoreEntry& entry,
                                  const std::string& canonical) {
  if (canonical == "overall" && entry.human_overall) return entry.human_overall;
  for (const auto& [name, value] : entry.annotations) {
    if (CanonicalSubmetric(name) == canonical) return value;
  }
  return std::nullopt;
}

std::optional<double> MetricScore(const ScoreRecord& record,
                                  const std::string& canonical) {
  if (canonical == "overall") return record.overall;
  for (const auto& [name, value] : record.submetrics) {
    if (CanonicalSubmetric(name) == canonical) return value;
  }
  return std::nullopt;
}

}  // namespace

const CorrelationCell* CorrelationReport::Find(
    std::string_view submetric) const {
  for (const CorrelationCell& cell : cells) {
    if (cell.submetric == submetric) return &cell;
  }
  return nullptr;
}

CorrelationReport BuildCorrelationReport(
    const ScoreTable& table, const std::vector<std::string>& submetrics,
    double alpha) {
  CorrelationReport report;
  report.metric = table.metric;
  report.corpus = table.corpus;

  for (const std::string& requested : submetrics) {
    CorrelationCell cell;
    cell.submetric = CanonicalSubmetric(requested);
    if (cell.submetric == "groundedness" && !table.grounded) {
      cell.skipped_reason = "corpus is not grounded";
      report.cells.push_back(std::move(cell));
      continue;
    }
    std::vector<double> human;
    std::vector<double> metric;
    bool metric_has = false;
    bool human_has = false;
    for (const ScoreEntry& entry : table.entries) {
      if (entry.role != EntryRole::kCandidate || !entry.record) continue;
      const auto h = HumanRating(entry, cell.submetric);
      const auto m = MetricScore(*entry.record, cell.submetric);
      human_has = human_has || h.has_value();
      metric_has = metric_has || m.has_value();
      if (h && m) {
        human.push_back(*h);
        metric.push_back(*m);
      }
    }
    cell.n = human.size();
    if (!human_has) {
      cell.skipped_reason = "no human ratings for " + cell.submetric;
    } else if (!metric_has) {
      cell.skipped_reason = "metric does not score " + cell.submetric;
    } else {
      try {
        cell.result = KendallTauB(human, metric);
        cell.significant = cell.result->p_value <= alpha;
      } catch (const StatsError& e) {
        cell.skipped_reason = e.what();
      }
    }
    report.cells.push_back(std::move(cell));
  }
  return report;
}

}  // namespace dialrobust
