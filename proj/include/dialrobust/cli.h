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

#ifndef DIALROBUST_CLI_H_
#define DIALROBUST_CLI_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dialrobust/backend.h"
#include "dialrobust/dispatcher.h"
#include "dialrobust/replay_log.h"
#include "dialrobust/robustness.h"
#include "json.hpp"

namespace dialrobust {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitBackend = 4;
inline constexpr int kExitStats = 5;

// Maps an in-flight exception to its exit code.
int ExitCodeFor(const std::exception& error);

struct MetricConfig {
  std::string name;
  // baseline | mock | subprocess | chat
  std::string kind;
  ScoreMode mode = ScoreMode::kDirect;
  std::vector<std::string> submetrics;
  std::string profile = "reported";
  // subprocess
  std::vector<std::string> command;
  std::chrono::milliseconds handshake_timeout{30000};
  std::chrono::milliseconds request_timeout{60000};
  // mock
  std::optional<std::filesystem::path> table;
  std::optional<ScoreRecord> fallback;
  // chat
  std::string endpoint;
  std::string model;
  std::string api_key_env = "DIALROBUST_API_KEY";
  std::optional<std::filesystem::path> template_path;
  std::optional<std::filesystem::path> log;
  int max_retries = 3;
  // Attach the rendered prompt to subprocess requests.
  bool send_prompt = false;
};

struct RunConfig {
  std::vector<std::filesystem::path> corpora;
  std::vector<MetricConfig> metrics;
  std::uint64_t seed = 0;
  int jobs = 4;
  std::filesystem::path out = "out";
  bool replay = false;
  TieRule tie_rule = TieRule::kTiesAreSuccess;
};

// Relative paths resolve against `base_dir`. Throws ConfigError.
RunConfig ParseRunConfig(const nlohmann::json& value,
                         const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// A constructed scorer plus whatever it needs to stay alive.
struct MetricInstance {
  std::unique_ptr<Scorer> scorer;
  std::unique_ptr<ReplayLog> log;
  DispatchOptions options;
};

MetricInstance CreateMetric(const MetricConfig& metric, bool grounded,
                            int jobs, bool replay);

struct ImportArgs {
  std::filesystem::path source;
  std::filesystem::path mapping;
  std::filesystem::path out;
};

struct GenerateArgs {
  std::filesystem::path corpus;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

struct ScoreArgs {
  std::filesystem::path corpus;
  std::filesystem::path suite;
  RunConfig config;
};

struct ReportArgs {
  // Score files, or directories searched for *.scores.jsonl.
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out;
  TieRule tie_rule = TieRule::kTiesAreSuccess;
};

// Each command prints a short summary to `out` and returns an exit code.
// Library errors propagate as exceptions.
int RunImport(const ImportArgs& args, std::ostream& out);
int RunGenerate(const GenerateArgs& args, std::ostream& out);
int RunScore(const ScoreArgs& args, std::ostream& out, std::ostream& err);
int RunReport(const ReportArgs& args, std::ostream& out);
int RunStats(const std::filesystem::path& corpus, std::ostream& out);

// Name of the score file a metric writes for a corpus.
std::string ScoreFileName(const std::string& metric, const std::string& corpus);

// Full command line: subcommands import, generate, score, report, stats.
int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dialrobust

#endif  // DIALROBUST_CLI_H_
