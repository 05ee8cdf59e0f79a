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

#ifndef DIALROBUST_KENDALL_H_
#define DIALROBUST_KENDALL_H_

#include <cstddef>
#include <cstdint>
#include <span>

namespace dialrobust {

// Pair statistics of two paired samples.
struct PairCounts {
  std::size_t n = 0;
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  std::int64_t pairs = 0;     // n (n - 1) / 2
  std::int64_t x_ties = 0;    // pairs tied on x (including joint ties)
  std::int64_t y_ties = 0;    // pairs tied on y (including joint ties)
  std::int64_t joint_ties = 0;

  bool operator==(const PairCounts&) const = default;
};

struct KendallResult {
  double tau = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  // Whether p_value came from exact enumeration rather than the normal
  // approximation.
  bool exact = false;
};

// Below this size p-values are computed exactly.
inline constexpr std::size_t kExactPValueLimit = 10;

// O(n log n) pair counting (sort by x, count y inversions by merge sort).
// Throws StatsError on size mismatch or non-finite values.
PairCounts CountPairs(std::span<const double> x, std::span<const double> y);

// tau-b = (C - D) / sqrt((pairs - x_ties) (pairs - y_ties)). Throws
// UndefinedCorrelationError when n < 2 or either side is constant.
double TauBFromCounts(const PairCounts& counts);

// tau-b with a two-sided p-value: exact over all distinct rearrangements of y
// when n < kExactPValueLimit, otherwise the normal approximation with the
// tie-adjusted variance of S = C - D.
KendallResult KendallTauB(std::span<const double> x, std::span<const double> y);

// Tie-adjusted variance of S under independence.
double KendallVarianceS(std::span<const double> x, std::span<const double> y);

}  // namespace dialrobust

#endif  // DIALROBUST_KENDALL_H_
