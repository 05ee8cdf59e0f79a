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

#include "dialrobust/reference.h"

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "dialrobust/errors.h"

namespace dialrobust::reference {

PairCounts CountPairsBruteForce(std::span<const double> x,
                                std::span<const double> y) {
  if (x.size() != y.size()) throw StatsError("paired samples differ in length");
  PairCounts counts;
  counts.n = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      ++counts.pairs;
      const bool tx = x[i] == x[j];
      const bool ty = y[i] == y[j];
      if (tx) ++counts.x_ties;
      if (ty) ++counts.y_ties;
      if (tx && ty) ++counts.joint_ties;
      if (tx || ty) continue;
      if ((x[i] < x[j]) == (y[i] < y[j])) {
        ++counts.concordant;
      } else {
        ++counts.discordant;
      }
    }
  }
  return counts;
}

double KendallTauBBruteForce(std::span<const double> x,
                             std::span<const double> y) {
  return TauBFromCounts(CountPairsBruteForce(x, y));
}

std::vector<AdversarialResponse> GenerateCorpusSuiteSerial(
    const Corpus& corpus, const SuiteOptions& options) {
  std::vector<AdversarialResponse> out;
  for (const Conversation& conversation : corpus.conversations) {
    for (AdversarialResponse& adv : GenerateSuite(conversation, options)) {
      out.push_back(std::move(adv));
    }
  }
  return out;
}

RobustnessReport BuildRobustnessReportSerial(const ScoreTable& table,
                                             TieRule rule) {
  RobustnessReport report;
  report.metric = table.metric;
  report.corpus = table.corpus;
  report.rule = rule;

  std::set<std::string> names;
  for (const ScoreEntry& entry : table.entries) {
    if (entry.role == EntryRole::kReference && entry.record) {
      for (const auto& [name, value] : entry.record->submetrics) {
        names.insert(name);
      }
    }
  }
  report.submetrics.assign(names.begin(), names.end());
  report.matrix_counts.assign(report.submetrics.size(), {});

  const auto find_reference = [&](const std::string& id) -> const ScoreEntry* {
    for (const ScoreEntry& entry : table.entries) {
      if (entry.role == EntryRole::kReference && entry.conversation_id == id) {
        return &entry;
      }
    }
    return nullptr;
  };

  for (const AttackSpec& spec : AttackRegistry()) {
    AttackResult result{std::string(spec.attack_id), spec.category, {}, {}};
    std::vector<AttackCounts> per_submetric(report.submetrics.size());
    for (const ScoreEntry& entry : table.entries) {
      if (entry.role != EntryRole::kAdversarial ||
          entry.attack_id != spec.attack_id) {
        continue;
      }
      ++result.counts.total;
      for (AttackCounts& c : per_submetric) ++c.total;
      const ScoreEntry* ref = find_reference(entry.conversation_id);
      std::string reason;
      if (entry.skipped_reason) {
        reason = "skipped";
      } else if (ref == nullptr || !ref->record) {
        reason = "reference_error";
      } else if (!entry.record) {
        reason = entry.error ? entry.error->kind : "unscored";
      }
      if (!reason.empty()) {
        ++result.counts.exclusions;
        ++report.exclusions[reason];
        for (AttackCounts& c : per_submetric) ++c.exclusions;
        continue;
      }
      const double r = ref->record->overall;
      const double a = entry.record->overall;
      if (a > r) {
        ++result.counts.wins;
      } else if (a < r) {
        ++result.counts.losses;
      } else {
        ++result.counts.ties;
      }
      for (std::size_t s = 0; s < report.submetrics.size(); ++s) {
        const auto& rs = ref->record->submetrics;
        const auto& as = entry.record->submetrics;
        const auto ri = rs.find(report.submetrics[s]);
        const auto ai = as.find(report.submetrics[s]);
        if (ri == rs.end() || ai == as.end()) {
          ++per_submetric[s].exclusions;
        } else if (ai->second > ri->second) {
          ++per_submetric[s].wins;
        } else if (ai->second < ri->second) {
          ++per_submetric[s].losses;
        } else {
          ++per_submetric[s].ties;
        }
      }
    }
    report.per_attack.push_back(result);
    for (std::size_t s = 0; s < report.submetrics.size(); ++s) {
      report.matrix_counts[s].push_back(per_submetric[s]);
    }
  }
  return ApplyTieRule(std::move(report), rule);
}

}  // namespace dialrobust::reference
