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
#include <cstdint>
#include <limits>
#include <vector>

#include "dialrobust/errors.h"
#include "dialrobust/hashing.h"
#include "dialrobust/reference.h"
#include "gtest/gtest.h"

namespace dialrobust {
namespace {

using Vec = std::vector<double>;

// Pair loop kept local to the test so it shares no code with the library.
double OracleTauB(const Vec& x, const Vec& y) {
  const std::size_t n = x.size();
  std::int64_t s = 0;
  std::int64_t tx = 0;
  std::int64_t ty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      tx += dx == 0;
      ty += dy == 0;
      if (dx * dy > 0) ++s;
      if (dx * dy < 0) --s;
    }
  }
  const double n0 = static_cast<double>(n * (n - 1) / 2);
  return static_cast<double>(s) /
         std::sqrt((n0 - static_cast<double>(tx)) *
                   (n0 - static_cast<double>(ty)));
}

// Draws values from a small pool so ties are common.
Vec RandomVector(PortableRng& rng, std::size_t n, int levels) {
  Vec v(n);
  for (double& value : v) {
    value = static_cast<double>(rng.UniformBelow(levels)) * 0.5 - 1.0;
  }
  return v;
}

bool Constant(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [&](double a) { return a == v[0]; });
}

TEST(KendallTauB, HandCountedExample) {
  const Vec x{1, 2, 3, 4};
  const Vec y{1, 3, 2, 4};
  const PairCounts counts = CountPairs(x, y);
  EXPECT_EQ(counts.concordant, 5);
  EXPECT_EQ(counts.discordant, 1);
  EXPECT_EQ(counts.pairs, 6);
  const KendallResult r = KendallTauB(x, y);
  EXPECT_NEAR(r.tau, 4.0 / 6.0, 1e-12);
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR(r.p_value, 8.0 / 24.0, 1e-12);
}

TEST(KendallTauB, PerfectAgreementAndReversal) {
  const Vec x{0.3, -1, 2.5, 7, 4, 1e-3, 11, 5.5, -3, 8, 9.25, 0.7};
  Vec neg(x.size());
  std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });
  EXPECT_DOUBLE_EQ(KendallTauB(x, x).tau, 1.0);
  EXPECT_DOUBLE_EQ(KendallTauB(x, neg).tau, -1.0);
}

TEST(KendallTauB, MatchesOracleOnRandomVectorsWithTies) {
  PortableRng rng(20240517);
  int checked = 0;
  while (checked < 200) {
    const std::size_t n = 2 + rng.UniformBelow(49);
    const int levels = 2 + static_cast<int>(rng.UniformBelow(8));
    const Vec x = RandomVector(rng, n, levels);
    const Vec y = RandomVector(rng, n, levels);
    if (Constant(x) || Constant(y)) continue;
    ++checked;
    const double oracle = OracleTauB(x, y);
    EXPECT_NEAR(KendallTauB(x, y).tau, oracle, 1e-12) << "n=" << n;
    EXPECT_NEAR(reference::KendallTauBBruteForce(x, y), oracle, 1e-12);
    EXPECT_EQ(CountPairs(x, y), reference::CountPairsBruteForce(x, y));
  }
}

TEST(KendallTauB, RangeAndAntisymmetry) {
  PortableRng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Vec x = RandomVector(rng, 30, 5);
    const Vec y = RandomVector(rng, 30, 5);
    if (Constant(x) || Constant(y)) continue;
    Vec neg(y.size());
    std::transform(y.begin(), y.end(), neg.begin(), [](double v) { return -v; });
    const double tau = KendallTauB(x, y).tau;
    EXPECT_GE(tau, -1.0);
    EXPECT_LE(tau, 1.0);
    EXPECT_NEAR(KendallTauB(x, neg).tau, -tau, 1e-15);
  }
}

TEST(KendallTauB, InvariantUnderIncreasingTransform) {
  PortableRng rng(6);
  for (int i = 0; i < 100; ++i) {
    const Vec x = RandomVector(rng, 25, 6);
    const Vec y = RandomVector(rng, 25, 6);
    if (Constant(x) || Constant(y)) continue;
    Vec fx(x.size());
    std::transform(x.begin(), x.end(), fx.begin(),
                   [](double v) { return std::exp(3 * v) + 7; });
    const KendallResult a = KendallTauB(x, y);
    const KendallResult b = KendallTauB(fx, y);
    EXPECT_EQ(a.tau, b.tau);
    EXPECT_EQ(a.p_value, b.p_value);
  }
}

struct PValueCase {
  Vec x;
  Vec y;
  double tau;
  double p;
};

// Values from scipy.stats.kendalltau(variant="b", method="asymptotic").
TEST(KendallTauB, NormalApproximationMatchesScipy) {
  const std::vector<PValueCase> cases = {
      {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12},
       {2, 1, 4, 3, 6, 5, 8, 7, 10, 9, 12, 11},
       0.8181818181818181,
       0.00021313412412417887},
      {{1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 1, 2, 3, 4, 5},
       {1, 2, 1, 3, 2, 4, 3, 5, 4, 5, 2, 2, 3, 3, 4},
       0.6966731912120168,
       0.001257833426612533},
      {{3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4},
       {2, 7, 1, 8, 2, 8, 1, 8, 2, 8, 4, 5, 9, 0, 4, 5, 2, 3, 5, 3},
       0.1502915281630456,
       0.38810698303200064},
  };
  for (const PValueCase& c : cases) {
    const KendallResult r = KendallTauB(c.x, c.y);
    EXPECT_FALSE(r.exact);
    EXPECT_NEAR(r.tau, c.tau, 1e-12);
    EXPECT_NEAR(r.p_value, c.p, 1e-9 * std::max(1.0, c.p));
  }
}

// Share of distinct rearrangements of y with |S| at least the observed one,
// counted by brute force outside the library.
TEST(KendallTauB, ExactPValueForSmallSamples) {
  const std::vector<PValueCase> cases = {
      {{1, 2, 3, 4, 5, 6}, {2, 1, 4, 3, 6, 5}, 0.6, 98.0 / 720.0},
      {{1, 1, 2, 3, 3, 4, 5},
       {2, 1, 2, 3, 5, 5, 4},
       0.6842105263157895,
       65.0 / 1260.0},
      {{1, 2, 3, 4, 5, 6, 7, 8, 9},
       {9, 8, 7, 6, 5, 4, 3, 2, 1},
       -1.0,
       2.0 / 362880.0},
  };
  for (const PValueCase& c : cases) {
    const KendallResult r = KendallTauB(c.x, c.y);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.n, c.x.size());
    EXPECT_NEAR(r.tau, c.tau, 1e-12);
    EXPECT_NEAR(r.p_value, c.p, 1e-12);
  }
}

TEST(KendallTauB, VarianceWithoutTies) {
  const Vec x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const Vec y{3, 1, 2, 5, 4, 8, 6, 7, 10, 9};
  // n (n - 1) (2n + 5) / 18
  EXPECT_NEAR(KendallVarianceS(x, y), 10.0 * 9 * 25 / 18, 1e-9);
}

TEST(KendallTauB, DegenerateInputs) {
  EXPECT_THROW(KendallTauB(Vec{1}, Vec{2}), UndefinedCorrelationError);
  EXPECT_THROW(KendallTauB(Vec{1, 1, 1}, Vec{1, 2, 3}),
               UndefinedCorrelationError);
  EXPECT_THROW(KendallTauB(Vec{1, 2, 3}, Vec{4, 4, 4}),
               UndefinedCorrelationError);
  EXPECT_THROW(CountPairs(Vec{1, 2}, Vec{1}), StatsError);
  EXPECT_THROW(
      CountPairs(Vec{1, std::numeric_limits<double>::quiet_NaN()}, Vec{1, 2}),
      StatsError);
}

TEST(KendallTauB, LargeInputAgreesWithBruteForce) {
  PortableRng rng(77);
  const Vec x = RandomVector(rng, 2000, 5);
  const Vec y = RandomVector(rng, 2000, 9);
  EXPECT_EQ(CountPairs(x, y), reference::CountPairsBruteForce(x, y));
}

}  // namespace
}  // namespace dialrobust
