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

#ifndef DIALROBUST_REFERENCE_H_
#define DIALROBUST_REFERENCE_H_

#include <span>
#include <vector>

#include "dialrobust/corpus.h"
#include "dialrobust/dispatcher.h"
#include "dialrobust/kendall.h"
#include "dialrobust/robustness.h"
#include "dialrobust/suite.h"

// Straightforward serial versions of the parallel and O(n log n) kernels.
// Tests compare the fast paths against these; the benchmarks time both.
namespace dialrobust::reference {

// O(n^2) loop over all pairs.
PairCounts CountPairsBruteForce(std::span<const double> x,
                                std::span<const double> y);
double KendallTauBBruteForce(std::span<const double> x,
                             std::span<const double> y);

std::vector<AdversarialResponse> GenerateCorpusSuiteSerial(
    const Corpus& corpus, const SuiteOptions& options);

// Same result as BuildRobustnessReport, computed with nested serial loops
// that look each pair up by key.
RobustnessReport BuildRobustnessReportSerial(
    const ScoreTable& table, TieRule rule = TieRule::kTiesAreSuccess);

}  // namespace dialrobust::reference

#endif  // DIALROBUST_REFERENCE_H_
