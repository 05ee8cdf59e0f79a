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
#include <fstream>

#include "dialrobust/errors.h"
#include "dialrobust/lexicon.h"
#include "dialrobust/report.h"
#include "report/internal.h"

namespace dialrobust {
namespace {

using nlohmann::json;

json Optional(const std::optional<double>& value) {
  return value ? json(*value) : json(nullptr);
}

void AddUnique(std::vector<std::string>& names, const std::string& name) {
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    names.push_back(name);
  }
}

json RobustnessToJson(const RobustnessReport& report) {
  json attacks = json::array();
  for (const AttackResult& attack : report.per_attack) {
    const AttackCounts& c = attack.counts;
    attacks.push_back({{"attack_id", attack.attack_id},
                       {"category", CategoryId(attack.category)},
                       {"rate", Optional(attack.rate)},
                       {"successes", c.successes(report.rule)},
                       {"failures", c.failures(report.rule)},
                       {"wins", c.wins},
                       {"ties", c.ties},
                       {"losses", c.losses},
                       {"exclusions", c.exclusions},
                       {"total", c.total}});
  }
  json categories = json::array();
  for (const CategoryResult& category : report.per_category) {
    categories.push_back({{"category", CategoryId(category.category)},
                          {"label", CategoryLabel(category.category)},
                          {"mean", Optional(category.mean)},
                          {"evaluable_attacks", category.evaluable_attacks}});
  }
  json matrix = json::array();
  for (const auto& row : report.matrix) {
    json values = json::array();
    for (const auto& value : row) values.push_back(Optional(value));
    matrix.push_back(std::move(values));
  }
  return {{"metric", report.metric},
          {"corpus", report.corpus},
          {"tie_rule", TieRuleName(report.rule)},
          {"overall_avg", Optional(report.overall_avg)},
          {"categories", std::move(categories)},
          {"attacks", std::move(attacks)},
          {"submetrics", report.submetrics},
          {"matrix", std::move(matrix)},
          {"exclusions", report.exclusions}};
}

json CorrelationToJson(const CorrelationReport& report) {
  json cells = json::array();
  for (const CorrelationCell& cell : report.cells) {
    json out{{"submetric", cell.submetric}, {"n", cell.n}};
    if (cell.result) {
      out["tau"] = cell.result->tau;
      out["p_value"] = cell.result->p_value;
      out["exact_p"] = cell.result->exact;
      out["significant"] = cell.significant;
    }
    if (cell.skipped_reason) out["skipped_reason"] = *cell.skipped_reason;
    cells.push_back(std::move(out));
  }
  return {{"metric", report.metric},
          {"corpus", report.corpus},
          {"cells", std::move(cells)}};
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

}  // namespace

const RobustnessReport* ReportBundle::FindRobustness(
    std::string_view metric, std::string_view corpus) const {
  for (const RobustnessReport& report : robustness) {
    if (report.metric == metric && report.corpus == corpus) return &report;
  }
  return nullptr;
}

const CorrelationReport* ReportBundle::FindCorrelation(
    std::string_view metric, std::string_view corpus) const {
  for (const CorrelationReport& report : correlation) {
    if (report.metric == metric && report.corpus == corpus) return &report;
  }
  return nullptr;
}

ReportBundle BuildBundle(const std::vector<ScoreTable>& tables, TieRule rule) {
  if (tables.empty()) throw DataError("no score tables to report on");
  ReportBundle bundle;
  json runs = json::array();
  for (const ScoreTable& table : tables) {
    if (bundle.FindRobustness(table.metric, table.corpus) != nullptr) {
      throw DataError("two score files for metric '" + table.metric +
                      "' on corpus '" + table.corpus + "'");
    }
    AddUnique(bundle.metrics, table.metric);
    AddUnique(bundle.corpora, table.corpus);
    bundle.robustness.push_back(BuildRobustnessReport(table, rule));
    bundle.correlation.push_back(BuildCorrelationReport(table));
    runs.push_back({{"metric", table.metric},
                    {"corpus", table.corpus},
                    {"grounded", table.grounded},
                    {"backend", HandshakeToJson(table.backend)},
                    {"mode", ScoreModeName(table.mode)},
                    {"profile", table.profile},
                    {"seed", table.seed},
                    {"entries", table.entries.size()},
                    {"dispatched", table.dispatched},
                    {"excluded", table.ExcludedCount()},
                    {"error_counts", table.ErrorCounts()}});
  }
  bundle.heatmap = CombineHeatmap(bundle.robustness);
  bundle.metadata = {{"tie_rule", TieRuleName(rule)},
                     {"lexicon_version", Lexicon::Builtin().version()},
                     {"runs", std::move(runs)}};
  return bundle;
}

json BundleToJson(const ReportBundle& bundle) {
  json robustness = json::array();
  for (const RobustnessReport& report : bundle.robustness) {
    robustness.push_back(RobustnessToJson(report));
  }
  json correlation = json::array();
  for (const CorrelationReport& report : bundle.correlation) {
    correlation.push_back(CorrelationToJson(report));
  }
  json heatmap_values = json::array();
  for (const auto& row : bundle.heatmap.values) {
    json values = json::array();
    for (const auto& value : row) values.push_back(Optional(value));
    heatmap_values.push_back(std::move(values));
  }
  return {{"metadata", bundle.metadata},
          {"robustness", std::move(robustness)},
          {"correlation", std::move(correlation)},
          {"heatmap",
           {{"rows", bundle.heatmap.row_labels},
            {"columns", bundle.heatmap.column_labels},
            {"values", std::move(heatmap_values)}}}};
}

std::vector<std::filesystem::path> EmitBundle(
    const ReportBundle& bundle, const std::filesystem::path& dir) {
  if (bundle.robustness.empty() && bundle.correlation.empty()) {
    throw DataError("report bundle is empty");
  }
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto emit = [&](const std::string& name, const std::string& text) {
    const std::filesystem::path path = dir / name;
    WriteFile(path, text);
    written.push_back(path);
  };
  for (const std::string& corpus : bundle.corpora) {
    const std::string stem = internal::FileStem(corpus);
    for (const TableFormat format : {TableFormat::kCsv, TableFormat::kMarkdown}) {
      const std::string ext = format == TableFormat::kCsv ? ".csv" : ".md";
      emit("robustness_" + stem + ext, RobustnessTable(bundle, corpus, format));
      emit("correlation_" + stem + ext,
           CorrelationTable(bundle, corpus, format));
      emit("attacks_" + stem + ext, AttackTable(bundle, corpus, format));
    }
  }
  const std::filesystem::path heatmap = dir / "heatmap.svg";
  EmitHeatmap(bundle.heatmap, heatmap,
              "Attack success rate by submetric, averaged over corpora");
  written.push_back(heatmap);
  emit("bundle.json", BundleToJson(bundle).dump(2) + "\n");
  return written;
}

}  // namespace dialrobust
