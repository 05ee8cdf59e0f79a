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

#include <algorithm>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "dialrobust/cli.h"
#include "dialrobust/corpus.h"
#include "dialrobust/errors.h"
#include "dialrobust/report.h"
#include "dialrobust/suite.h"

namespace dialrobust {
namespace {

constexpr std::string_view kScoreSuffix = ".scores.jsonl";

std::string Stem(std::string_view name) {
  std::string out;
  for (const char c : name) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '.' || c == '_' ||
                      c == '-';
    out += keep ? c : '_';
  }
  return out;
}

std::vector<std::filesystem::path> CollectScoreFiles(
    const std::vector<std::filesystem::path>& inputs) {
  std::vector<std::filesystem::path> files;
  for (const std::filesystem::path& input : inputs) {
    if (std::filesystem::is_directory(input)) {
      std::vector<std::filesystem::path> found;
      for (const auto& entry : std::filesystem::directory_iterator(input)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() > kScoreSuffix.size() &&
            name.compare(name.size() - kScoreSuffix.size(),
                         kScoreSuffix.size(), kScoreSuffix) == 0) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (std::filesystem::exists(input)) {
      files.push_back(input);
    } else {
      throw DataError("score input not found: " + input.string());
    }
  }
  return files;
}

void CreateParent(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
}

}  // namespace

std::string ScoreFileName(const std::string& metric,
                          const std::string& corpus) {
  return Stem(metric) + "__" + Stem(corpus) + std::string(kScoreSuffix);
}

int RunImport(const ImportArgs& args, std::ostream& out) {
  const FieldMapping mapping = LoadFieldMapping(args.mapping);
  const ImportResult result = ImportExternal(args.source, mapping);
  CreateParent(args.out);
  SaveCorpus(result.corpus, args.out);
  out << "imported " << result.corpus.conversations.size()
      << " conversations (grounded="
      << (result.corpus.grounded ? "true" : "false") << ") to "
      << args.out.string() << "\n";
  if (result.unmapped_fields > 0) {
    out << "warning: ignored " << result.unmapped_fields
        << " unmapped source fields\n";
  }
  return kExitOk;
}

int RunGenerate(const GenerateArgs& args, std::ostream& out) {
  const Corpus corpus = LoadCorpus(args.corpus);
  SuiteOptions options;
  options.seed = args.seed;
  const auto suite = GenerateCorpusSuite(corpus, options);
  CreateParent(args.out);
  SaveSuite(suite, args.out);

  std::map<AttackCategory, std::size_t> per_category;
  std::size_t skipped = 0;
  for (const AdversarialResponse& adv : suite) {
    ++per_category[adv.category];
    if (adv.skipped()) ++skipped;
  }
  out << "generated " << suite.size() << " adversarial responses for "
      << corpus.conversations.size() << " conversations (seed " << args.seed
      << ")\n";
  for (const AttackCategory category : kAllCategories) {
    out << "  " << CategoryId(category) << ": " << per_category[category]
        << "\n";
  }
  out << "  skipped: " << skipped << "\n";
  return kExitOk;
}

int RunScore(const ScoreArgs& args, std::ostream& out, std::ostream& err) {
  if (args.config.metrics.empty()) {
    throw ConfigError("config declares no metrics");
  }
  const Corpus corpus = LoadCorpus(args.corpus);
  const auto suite = LoadSuite(args.suite);
  std::filesystem::create_directories(args.config.out);

  int status = kExitOk;
  for (const MetricConfig& metric : args.config.metrics) {
    try {
      MetricInstance instance = CreateMetric(metric, corpus.grounded,
                                             args.config.jobs,
                                             args.config.replay);
      const ScoreTable table =
          ScoreSuite(corpus, suite, *instance.scorer, instance.options);
      const std::filesystem::path path =
          args.config.out / ScoreFileName(table.metric, corpus.name);
      SaveScoreTable(table, path);
      out << metric.name << ": " << table.entries.size() << " entries, "
          << table.dispatched << " requests, " << table.ExcludedCount()
          << " excluded";
      for (const auto& [kind, count] : table.ErrorCounts()) {
        out << " " << kind << "=" << count;
      }
      out << " -> " << path.string() << "\n";
    } catch (const Error& e) {
      err << "metric '" << metric.name << "' failed: " << e.what() << "\n";
      if (status == kExitOk) status = ExitCodeFor(e);
    }
  }
  return status;
}

int RunReport(const ReportArgs& args, std::ostream& out) {
  const auto files = CollectScoreFiles(args.inputs);
  if (files.empty()) throw DataError("no score files to report on");
  std::vector<ScoreTable> tables;
  for (const std::filesystem::path& file : files) {
    tables.push_back(LoadScoreTable(file));
  }
  const ReportBundle bundle = BuildBundle(tables, args.tie_rule);
  const auto written = EmitBundle(bundle, args.out);
  for (const RobustnessReport& report : bundle.robustness) {
    out << report.metric << " on " << report.corpus << ": average attack "
        << "success rate "
        << (report.overall_avg ? FormatFixed(*report.overall_avg, kRateDecimals)
                               : std::string("-"))
        << "\n";
  }
  out << "wrote " << written.size() << " files to " << args.out.string()
      << "\n";
  return kExitOk;
}

int RunStats(const std::filesystem::path& corpus, std::ostream& out) {
  out << FormatCorpusStats(ComputeCorpusStats(LoadCorpus(corpus))) << "\n";
  return kExitOk;
}

int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adversarial robustness benchmark for dialogue metrics",
               "dialrobust"};
  app.require_subcommand(1);

  ImportArgs import_args;
  auto* import_cmd = app.add_subcommand("import", "Normalise an external export");
  import_cmd->add_option("source", import_args.source, "Export file")
      ->required();
  import_cmd->add_option("--mapping", import_args.mapping,
                         "Field mapping (JSON)")
      ->required();
  import_cmd->add_option("--out", import_args.out, "Corpus file to write")
      ->required();

  GenerateArgs generate_args;
  std::string generate_config;
  std::optional<std::uint64_t> generate_seed;
  std::string generate_out;
  auto* generate_cmd =
      app.add_subcommand("generate", "Generate the adversarial suite");
  generate_cmd->add_option("--corpus", generate_args.corpus, "Corpus file")
      ->required();
  generate_cmd->add_option("--seed", generate_seed, "Master seed");
  generate_cmd->add_option("--config", generate_config, "Run config");
  generate_cmd->add_option("--out", generate_out, "Suite file to write");

  std::string score_corpus;
  std::string score_suite;
  std::string score_config;
  std::string score_out;
  std::optional<int> score_jobs;
  bool score_replay = false;
  auto* score_cmd = app.add_subcommand("score", "Score responses per metric");
  score_cmd->add_option("--corpus", score_corpus, "Corpus file");
  score_cmd->add_option("--suite", score_suite, "Suite file")->required();
  score_cmd->add_option("--config", score_config, "Run config")->required();
  score_cmd->add_option("--out", score_out, "Output directory");
  score_cmd->add_option("--jobs", score_jobs, "Requests in flight")
      ->check(CLI::PositiveNumber);
  score_cmd->add_flag("--replay", score_replay,
                      "Answer from audit logs without network access");

  ReportArgs report_args;
  std::string report_config;
  std::string report_tie_rule;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Build tables and heatmap");
  report_cmd->add_option("scores", report_args.inputs,
                         "Score files or directories")
      ->required();
  report_cmd->add_option("--out", report_out, "Output directory");
  report_cmd->add_option("--config", report_config, "Run config");
  report_cmd->add_option("--tie-rule", report_tie_rule,
                         "Count ties as 'success' (default) or 'failure'");

  std::string stats_corpus;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("--corpus", stats_corpus, "Corpus file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*import_cmd) return RunImport(import_args, out);
    if (*generate_cmd) {
      RunConfig config;
      if (!generate_config.empty()) config = LoadRunConfig(generate_config);
      generate_args.seed = generate_seed.value_or(config.seed);
      if (!generate_out.empty()) {
        generate_args.out = generate_out;
      } else if (!generate_config.empty()) {
        generate_args.out = config.out / "suite.jsonl";
      } else {
        throw ConfigError("generate needs --out or --config");
      }
      return RunGenerate(generate_args, out);
    }
    if (*score_cmd) {
      ScoreArgs args;
      args.config = LoadRunConfig(score_config);
      if (!score_out.empty()) args.config.out = score_out;
      if (score_jobs) args.config.jobs = *score_jobs;
      if (score_replay) args.config.replay = true;
      if (!score_corpus.empty()) {
        args.corpus = score_corpus;
      } else if (args.config.corpora.size() == 1) {
        args.corpus = args.config.corpora.front();
      } else {
        throw ConfigError("score needs --corpus (config names " +
                          std::to_string(args.config.corpora.size()) +
                          " corpora)");
      }
      args.suite = score_suite;
      return RunScore(args, out, err);
    }
    if (*report_cmd) {
      RunConfig config;
      if (!report_config.empty()) config = LoadRunConfig(report_config);
      report_args.tie_rule = report_tie_rule.empty()
                                 ? config.tie_rule
                                 : ParseTieRule(report_tie_rule);
      report_args.out = report_out.empty() ? config.out / "report"
                                           : std::filesystem::path(report_out);
      return RunReport(report_args, out);
    }
    if (*stats_cmd) return RunStats(stats_corpus, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << "\n";
    return kExitUnexpected;
  }
  return kExitConfig;
}

}  // namespace dialrobust
