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

#include "dialrobust/kendall.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dialrobust/errors.h"

namespace dialrobust {
namespace {

void CheckInputs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw StatsError("paired samples differ in length: " +
                     std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw StatsError("non-finite value at position " + std::to_string(i));
    }
  }
}

std::int64_t TiedPairs(std::int64_t run) { return run * (run - 1) / 2; }

// Sorts v[lo, hi) ascending and returns the number of strict inversions.
std::int64_t MergeCount(std::vector<double>& v, std::vector<double>& scratch,
                        std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t inversions =
      MergeCount(v, scratch, lo, mid) + MergeCount(v, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      inversions += static_cast<std::int64_t>(mid - i);
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inversions;
}

// Sum over tie groups of f(group size).
template <typename F>
double SumOverTies(std::span<const double> values, F f) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    total += f(static_cast<double>(j - i));
    i = j;
  }
  return total;
}

std::int64_t ScoreS(std::span<const double> x, std::span<const double> y) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx * dy > 0) {
        ++s;
      } else if (dx * dy < 0) {
        --s;
      }
    }
  }
  return s;
}

double ExactPValue(std::span<const double> x, std::span<const double> y,
                   std::int64_t observed) {
  std::vector<double> perm(y.begin(), y.end());
  std::sort(perm.begin(), perm.end());
  const std::int64_t threshold = observed < 0 ? -observed : observed;
  std::uint64_t total = 0;
  std::uint64_t extreme = 0;
  do {
    const std::int64_t s = ScoreS(x, perm);
    ++total;
    if ((s < 0 ? -s : s) >= threshold) ++extreme;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

PairCounts CountPairs(std::span<const double> x, std::span<const double> y) {
  CheckInputs(x, y);
  PairCounts counts;
  const std::size_t n = x.size();
  counts.n = n;
  counts.pairs = TiedPairs(static_cast<std::int64_t>(n));
  if (n < 2) return counts;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });

  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    counts.x_ties += TiedPairs(static_cast<std::int64_t>(j - i));
    std::size_t k = i;
    while (k < j) {
      std::size_t m = k;
      while (m < j && y[order[m]] == y[order[k]]) ++m;
      counts.joint_ties += TiedPairs(static_cast<std::int64_t>(m - k));
      k = m;
    }
    i = j;
  }

  std::vector<double> ys(n);
  for (std::size_t r = 0; r < n; ++r) ys[r] = y[order[r]];
  std::vector<double> scratch(n);
  counts.discordant = MergeCount(ys, scratch, 0, n);

  i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && ys[j] == ys[i]) ++j;
    counts.y_ties += TiedPairs(static_cast<std::int64_t>(j - i));
    i = j;
  }

  counts.concordant = counts.pairs - counts.x_ties - counts.y_ties +
                      counts.joint_ties - counts.discordant;
  return counts;
}

double TauBFromCounts(const PairCounts& counts) {
  if (counts.n < 2) {
    throw UndefinedCorrelationError("tau needs at least two pairs");
  }
  const std::int64_t untied_x = counts.pairs - counts.x_ties;
  const std::int64_t untied_y = counts.pairs - counts.y_ties;
  if (untied_x == 0 || untied_y == 0) {
    throw UndefinedCorrelationError(
        "tau is undefined when one side is constant");
  }
  const double s = static_cast<double>(counts.concordant - counts.discordant);
  return s / std::sqrt(static_cast<double>(untied_x) *
                       static_cast<double>(untied_y));
}

double KendallVarianceS(std::span<const double> x, std::span<const double> y) {
  CheckInputs(x, y);
  const double n = static_cast<double>(x.size());
  const double m = n * (n - 1.0);
  const auto tie_terms = [](std::span<const double> v, double& pairs,
                            double& cubic, double& linear) {
    pairs = SumOverTies(v, [](double t) { return t * (t - 1.0) / 2.0; });
    cubic = SumOverTies(v, [](double t) { return t * (t - 1.0) * (t - 2.0); });
    linear =
        SumOverTies(v, [](double t) { return t * (t - 1.0) * (2.0 * t + 5.0); });
  };
  double x_pairs, x_cubic, x_linear, y_pairs, y_cubic, y_linear;
  tie_terms(x, x_pairs, x_cubic, x_linear);
  tie_terms(y, y_pairs, y_cubic, y_linear);
  double var = (m * (2.0 * n + 5.0) - x_linear - y_linear) / 18.0 +
               2.0 * x_pairs * y_pairs / m;
  if (n > 2) var += x_cubic * y_cubic / (9.0 * m * (n - 2.0));
  return var;
}

KendallResult KendallTauB(std::span<const double> x,
                          std::span<const double> y) {
  const PairCounts counts = CountPairs(x, y);
  KendallResult result;
  result.n = counts.n;
  result.tau = TauBFromCounts(counts);
  const std::int64_t s = counts.concordant - counts.discordant;
  if (counts.n < kExactPValueLimit) {
    result.exact = true;
    result.p_value = ExactPValue(x, y, s);
    return result;
  }
  const double var = KendallVarianceS(x, y);
  if (!(var > 0.0)) {
    throw UndefinedCorrelationError("zero variance of the tau statistic");
  }
  const double z = static_cast<double>(s) / std::sqrt(var);
  result.p_value = std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
  return result;
}

}  // namespace dialrobust
