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

#ifndef DIALROBUST_ROBUSTNESS_H_
#define DIALROBUST_ROBUSTNESS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialrobust/attacks.h"
#include "dialrobust/dispatcher.h"

namespace dialrobust {

// How a tie between the reference and the adversarial score is counted.
enum class TieRule { kTiesAreSuccess, kTiesAreFailure };
std::string_view TieRuleName(TieRule rule);
TieRule ParseTieRule(std::string_view name);

// True when the attack succeeds: the adversarial response scores at least
// as high as the reference (strictly higher under kTiesAreFailure).
bool AttackSucceeds(double reference, double adversarial,
                    TieRule rule = TieRule::kTiesAreSuccess);

// Outcome tallies for one attack. Ties are stored apart from wins so either
// rule can be applied afterwards.
struct AttackCounts {
  std::size_t wins = 0;    // adversarial strictly higher
  std::size_t ties = 0;
  std::size_t losses = 0;  // reference strictly higher
  std::size_t exclusions = 0;
  // Conversations whose suite contains the attack.
  std::size_t total = 0;

  std::size_t comparisons() const { return wins + ties + losses; }
  std::size_t successes(TieRule rule) const;
  std::size_t failures(TieRule rule) const;
  // nullopt when nothing could be compared.
  std::optional<double> rate(TieRule rule) const;
  void Add(double reference, double adversarial);
  bool operator==(const AttackCounts&) const = default;
};

struct AttackResult {
  std::string attack_id;
  AttackCategory category = AttackCategory::kStatic;
  AttackCounts counts;
  std::optional<double> rate;  // under the report's tie rule
};

struct CategoryResult {
  AttackCategory category = AttackCategory::kStatic;
  // Unweighted mean over the category's evaluable attacks.
  std::optional<double> mean;
  std::size_t evaluable_attacks = 0;
};

struct RobustnessReport {
  std::string metric;
  std::string corpus;
  TieRule rule = TieRule::kTiesAreSuccess;
  std::vector<AttackResult> per_attack;       // registry order
  std::vector<CategoryResult> per_category;   // kAllCategories order
  std::optional<double> overall_avg;          // mean of category means
  // Success rate per submetric (rows) and attack (columns, registry order).
  std::vector<std::string> submetrics;
  std::vector<std::vector<std::optional<double>>> matrix;
  // Per-submetric tallies behind `matrix`.
  std::vector<std::vector<AttackCounts>> matrix_counts;
  // Excluded adversarial entries by reason ("skipped", error kinds,
  // "reference_error").
  std::map<std::string, std::size_t> exclusions;

  const AttackResult* FindAttack(std::string_view attack_id) const;
};

// Compares every adversarial entry of the table with its conversation's
// reference. Attacks are reported in registry order; attacks absent from the
// suite have total 0 and no rate. Submetric cells run in parallel.
RobustnessReport BuildRobustnessReport(
    const ScoreTable& table, TieRule rule = TieRule::kTiesAreSuccess);

// Recomputes rates, category means and the overall average from the stored
// counts under another tie rule.
RobustnessReport ApplyTieRule(RobustnessReport report, TieRule rule);

}  // namespace dialrobust

#endif  // DIALROBUST_ROBUSTNESS_H_
