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

// OpenMP kernels against their serial references.

#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "dialrobust/dispatcher.h"
#include "dialrobust/hashing.h"
#include "dialrobust/kendall.h"
#include "dialrobust/reference.h"
#include "dialrobust/robustness.h"
#include "dialrobust/suite.h"
#include "testing/fixtures.h"

namespace dialrobust {
namespace {

std::vector<double> Ratings(std::size_t n, std::uint64_t seed) {
  PortableRng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = static_cast<double>(1 + rng.UniformBelow(5));
  return out;
}

void BM_KendallFast(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = Ratings(n, 1);
  const auto y = Ratings(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(KendallTauB(x, y).tau);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallFast)
    ->RangeMultiplier(4)
    ->Range(64, 16384)
    ->Complexity(benchmark::oNLogN);

void BM_KendallBruteForce(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = Ratings(n, 1);
  const auto y = Ratings(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::KendallTauBBruteForce(x, y));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallBruteForce)
    ->RangeMultiplier(4)
    ->Range(64, 4096)
    ->Complexity(benchmark::oNSquared);

const Corpus& BenchCorpus() {
  static const Corpus* corpus =
      new Corpus(testing::SyntheticCorpus(2000, true, 9));
  return *corpus;
}

void BM_SuiteParallel(benchmark::State& state) {
  SuiteOptions options;
  options.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(GenerateCorpusSuite(BenchCorpus(), options));
  }
}
BENCHMARK(BM_SuiteParallel)->Unit(benchmark::kMillisecond);

void BM_SuiteSerial(benchmark::State& state) {
  SuiteOptions options;
  options.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::GenerateCorpusSuiteSerial(BenchCorpus(), options));
  }
}
BENCHMARK(BM_SuiteSerial)->Unit(benchmark::kMillisecond);

// Every suite entry scored with four submetrics drawn at random.
const ScoreTable& BenchTable() {
  static const ScoreTable* table = [] {
    auto* out = new ScoreTable;
    out->metric = "bench";
    out->corpus = "bench";
    PortableRng rng(4);
    SuiteOptions options;
    options.seed = 1;
    const auto suite = GenerateCorpusSuite(BenchCorpus(), options);
    const auto record = [&rng] {
      ScoreRecord r;
      for (const char* name : {"content", "naturalness", "relevance",
                               "groundedness"}) {
        r.submetrics[name] = rng.UniformUnit();
      }
      r.overall = rng.UniformUnit();
      return r;
    };
    for (const Conversation& conv : BenchCorpus().conversations) {
      ScoreEntry entry;
      entry.conversation_id = conv.id;
      entry.response = conv.reference;
      entry.record = record();
      out->entries.push_back(entry);
    }
    for (const AdversarialResponse& adv : suite) {
      ScoreEntry entry;
      entry.conversation_id = adv.conversation_id;
      entry.role = EntryRole::kAdversarial;
      entry.attack_id = adv.attack_id;
      entry.response = adv.text;
      entry.record = record();
      out->entries.push_back(entry);
    }
    return out;
  }();
  return *table;
}

void BM_RobustnessParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildRobustnessReport(BenchTable()));
  }
}
BENCHMARK(BM_RobustnessParallel)->Unit(benchmark::kMillisecond);

void BM_RobustnessSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::BuildRobustnessReportSerial(BenchTable()));
  }
}
BENCHMARK(BM_RobustnessSerial)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dialrobust

BENCHMARK_MAIN();
