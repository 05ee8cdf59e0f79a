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

#ifndef DIALROBUST_REPORT_H_
#define DIALROBUST_REPORT_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dialrobust/correlation.h"
#include "dialrobust/dispatcher.h"
#include "dialrobust/robustness.h"
#include "json.hpp"

namespace dialrobust {

// Fixed-point text with `decimals` digits, correctly rounded (exact binary
// ties go to even). Negative zero prints as zero.
std::string FormatFixed(double value, int decimals);

inline constexpr int kRateDecimals = 2;
inline constexpr int kTauDecimals = 3;

struct HeatmapMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  // nullopt cells render as "-".
  std::vector<std::vector<std::optional<double>>> values;
};

// Standalone SVG: one cell per value, fill interpolated linearly from white
// (rate 0) to red (rate 1), value printed with two decimals. Throws
// DataError when rows are ragged or labels do not match the shape.
std::string RenderHeatmapSvg(const HeatmapMatrix& matrix,
                             std::string_view title = {});
void EmitHeatmap(const HeatmapMatrix& matrix, const std::filesystem::path& path,
                 std::string_view title = {});

// Rows "<metric> / <submetric>" (canonical submetrics, then overall),
// columns the attack ids; each cell is the mean of the per-corpus rates.
HeatmapMatrix CombineHeatmap(std::span<const RobustnessReport> reports);

struct ReportBundle {
  std::vector<std::string> corpora;  // first-seen order
  std::vector<std::string> metrics;  // first-seen order
  std::vector<RobustnessReport> robustness;
  std::vector<CorrelationReport> correlation;
  HeatmapMatrix heatmap;
  nlohmann::json metadata;

  const RobustnessReport* FindRobustness(std::string_view metric,
                                         std::string_view corpus) const;
  const CorrelationReport* FindCorrelation(std::string_view metric,
                                           std::string_view corpus) const;
};

// Runs the statistics over every score table. Throws DataError when empty.
ReportBundle BuildBundle(const std::vector<ScoreTable>& tables,
                         TieRule rule = TieRule::kTiesAreSuccess);

enum class TableFormat { kCsv, kMarkdown };

// Metric rows; Speaker Tags, Static Resp., Ungrammatical, Context Rep., Avg
// columns. Markdown bolds the lowest rate per column.
std::string RobustnessTable(const ReportBundle& bundle,
                            std::string_view corpus, TableFormat format);
// Metric rows; one tau column per submetric. Markdown italicises values
// with p > 0.05 and bolds the highest per column; CSV carries p and n.
std::string CorrelationTable(const ReportBundle& bundle,
                             std::string_view corpus, TableFormat format);
// Attack rows, metric columns.
std::string AttackTable(const ReportBundle& bundle, std::string_view corpus,
                        TableFormat format);

nlohmann::json BundleToJson(const ReportBundle& bundle);

// Writes tables (both formats), the heatmap and bundle.json into `dir`.
// Returns the written paths in order. Throws DataError on an empty bundle.
std::vector<std::filesystem::path> EmitBundle(const ReportBundle& bundle,
                                              const std::filesystem::path& dir);

}  // namespace dialrobust

#endif  // DIALROBUST_REPORT_H_
