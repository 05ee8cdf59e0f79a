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

#ifndef DIALROBUST_CORRELATION_H_
#define DIALROBUST_CORRELATION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialrobust/dispatcher.h"
#include "dialrobust/kendall.h"

namespace dialrobust {

inline constexpr double kSignificanceLevel = 0.05;

struct CorrelationCell {
  // Canonical submetric name.
  std::string submetric;
  std::optional<KendallResult> result;
  // p <= alpha.
  bool significant = false;
  std::size_t n = 0;
  // Why no tau was computed.
  std::optional<std::string> skipped_reason;
};

struct CorrelationReport {
  std::string metric;
  std::string corpus;
  std::vector<CorrelationCell> cells;

  const CorrelationCell* Find(std::string_view submetric) const;
};

// Column order of the correlation tables.
inline constexpr std::string_view kCorrelationSubmetrics[] = {
    "content", "naturalness", "relevance", "groundedness", "overall"};

// Pairs the human rating of every scored annotated candidate with the
// metric's score for the same aspect (matched through CanonicalSubmetric;
// "overall" uses the overall scores) and computes tau-b per submetric.
// Degenerate or unavailable submetrics are reported with a reason.
CorrelationReport BuildCorrelationReport(
    const ScoreTable& table,
    const std::vector<std::string>& submetrics = {
        std::begin(kCorrelationSubmetrics), std::end(kCorrelationSubmetrics)},
    double alpha = kSignificanceLevel);

}  // namespace dialrobust

#endif  // DIALROBUST_CORRELATION_H_
