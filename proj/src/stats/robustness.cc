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

#include "dialrobust/robustness.h"

#include <set>
#include <utility>

#include "dialrobust/errors.h"

namespace dialrobust {
namespace {

using EntryPair = std::pair<const ScoreEntry*, const ScoreEntry*>;

std::optional<double> SubmetricOf(const ScoreEntry& entry,
                                  const std::string& name) {
  if (!entry.record) return std::nullopt;
  const auto it = entry.record->submetrics.find(name);
  if (it == entry.record->submetrics.end()) return std::nullopt;
  return it->second;
}

void Finalize(RobustnessReport& report) {
  for (AttackResult& attack : report.per_attack) {
    attack.rate = attack.counts.rate(report.rule);
  }
  report.per_category.clear();
  double category_sum = 0.0;
  std::size_t category_count = 0;
  for (const AttackCategory category : kAllCategories) {
    CategoryResult result;
    result.category = category;
    double sum = 0.0;
    for (const AttackResult& attack : report.per_attack) {
      if (attack.category == category && attack.rate) {
        sum += *attack.rate;
        ++result.evaluable_attacks;
      }
    }
    if (result.evaluable_attacks > 0) {
      result.mean = sum / static_cast<double>(result.evaluable_attacks);
      category_sum += *result.mean;
      ++category_count;
    }
    report.per_category.push_back(result);
  }
  report.overall_avg =
      category_count == 0
          ? std::nullopt
          : std::optional<double>(category_sum /
                                  static_cast<double>(category_count));
  report.matrix.assign(report.matrix_counts.size(), {});
  for (std::size_t r = 0; r < report.matrix_counts.size(); ++r) {
    for (const AttackCounts& counts : report.matrix_counts[r]) {
      report.matrix[r].push_back(counts.rate(report.rule));
    }
  }
}

}  // namespace

std::string_view TieRuleName(TieRule rule) {
  return rule == TieRule::kTiesAreSuccess ? "success" : "failure";
}

TieRule ParseTieRule(std::string_view name) {
  if (name == "success") return TieRule::kTiesAreSuccess;
  if (name == "failure") return TieRule::kTiesAreFailure;
  throw ConfigError("unknown tie rule '" + std::string(name) +
                    "' (expected success or failure)");
}

bool AttackSucceeds(double reference, double adversarial, TieRule rule) {
  return rule == TieRule::kTiesAreSuccess ? adversarial >= reference
                                          : adversarial > reference;
}

std::size_t AttackCounts::successes(TieRule rule) const {
  return rule == TieRule::kTiesAreSuccess ? wins + ties : wins;
}

std::size_t AttackCounts::failures(TieRule rule) const {
  return rule == TieRule::kTiesAreSuccess ? losses : losses + ties;
}

std::optional<double> AttackCounts::rate(TieRule rule) const {
  if (comparisons() == 0) return std::nullopt;
  return static_cast<double>(successes(rule)) /
         static_cast<double>(comparisons());
}

void AttackCounts::Add(double reference, double adversarial) {
  if (adversarial > reference) {
    ++wins;
  } else if (adversarial < reference) {
    ++losses;
  } else {
    ++ties;
  }
}

const AttackResult* RobustnessReport::FindAttack(
    std::string_view attack_id) const {
  for (const AttackResult& attack : per_attack) {
    if (attack.attack_id == attack_id) return &attack;
  }
  return nullptr;
}

RobustnessReport BuildRobustnessReport(const ScoreTable& table, TieRule rule) {
  RobustnessReport report;
  report.metric = table.metric;
  report.corpus = table.corpus;
  report.rule = rule;

  std::map<std::string, const ScoreEntry*, std::less<>> references;
  for (const ScoreEntry& entry : table.entries) {
    if (entry.role == EntryRole::kReference) {
      references.emplace(entry.conversation_id, &entry);
    }
  }

  const auto registry = AttackRegistry();
  std::map<std::string_view, std::size_t> column;
  for (std::size_t a = 0; a < registry.size(); ++a) {
    column[registry[a].attack_id] = a;
    report.per_attack.push_back(
        {std::string(registry[a].attack_id), registry[a].category, {}, {}});
  }

  std::vector<std::vector<EntryPair>> comparable(registry.size());
  for (const ScoreEntry& entry : table.entries) {
    if (entry.role != EntryRole::kAdversarial) continue;
    const auto col = column.find(entry.attack_id);
    if (col == column.end()) {
      throw DataError("score table has unknown attack '" + entry.attack_id +
                      "'");
    }
    AttackCounts& counts = report.per_attack[col->second].counts;
    ++counts.total;
    const auto ref = references.find(entry.conversation_id);
    std::string reason;
    if (entry.skipped_reason) {
      reason = "skipped";
    } else if (ref == references.end() || !ref->second->scored()) {
      reason = "reference_error";
    } else if (!entry.scored()) {
      reason = entry.error ? entry.error->kind : "unscored";
    }
    if (!reason.empty()) {
      ++counts.exclusions;
      ++report.exclusions[reason];
      continue;
    }
    counts.Add(ref->second->record->overall, entry.record->overall);
    comparable[col->second].push_back({ref->second, &entry});
  }

  std::set<std::string> names;
  for (const auto& [id, entry] : references) {
    if (entry->record) {
      for (const auto& [name, value] : entry->record->submetrics) {
        names.insert(name);
      }
    }
  }
  report.submetrics.assign(names.begin(), names.end());

  const std::size_t rows = report.submetrics.size();
  const std::size_t cols = registry.size();
  report.matrix_counts.assign(rows, std::vector<AttackCounts>(cols));
  const auto cells = static_cast<long>(rows * cols);
#pragma omp parallel for schedule(static)
  for (long cell = 0; cell < cells; ++cell) {
    const std::size_t r = static_cast<std::size_t>(cell) / cols;
    const std::size_t a = static_cast<std::size_t>(cell) % cols;
    AttackCounts& counts = report.matrix_counts[r][a];
    counts.total = report.per_attack[a].counts.total;
    counts.exclusions = report.per_attack[a].counts.exclusions;
    for (const auto& [ref, adv] : comparable[a]) {
      const auto ref_score = SubmetricOf(*ref, report.submetrics[r]);
      const auto adv_score = SubmetricOf(*adv, report.submetrics[r]);
      if (!ref_score || !adv_score) {
        ++counts.exclusions;
        continue;
      }
      counts.Add(*ref_score, *adv_score);
    }
  }

  Finalize(report);
  return report;
}

RobustnessReport ApplyTieRule(RobustnessReport report, TieRule rule) {
  report.rule = rule;
  Finalize(report);
  return report;
}

}  // namespace dialrobust
