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
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "dialrobust/corpus.h"
#include "dialrobust/errors.h"
#include "dialrobust/report.h"
#include "report/internal.h"

namespace dialrobust {
namespace {

constexpr int kCellWidth = 52;
constexpr int kCellHeight = 26;
constexpr int kCharWidth = 7;
constexpr int kPad = 10;

// White at 0, (214, 39, 40) at 1.
std::string CellColor(double rate) {
  const double t = std::clamp(rate, 0.0, 1.0);
  const auto channel = [t](int hi) {
    return static_cast<int>(std::lround(255.0 + (hi - 255.0) * t));
  };
  char buffer[8];
  std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", channel(214),
                channel(39), channel(40));
  return buffer;
}

int SubmetricRank(const std::string& name) {
  const auto begin = std::begin(kCorrelationSubmetrics);
  const auto end = std::end(kCorrelationSubmetrics);
  const auto it = std::find(begin, end, name);
  return it == end ? static_cast<int>(end - begin)
                   : static_cast<int>(it - begin);
}

}  // namespace

std::string RenderHeatmapSvg(const HeatmapMatrix& matrix,
                             std::string_view title) {
  const std::size_t rows = matrix.values.size();
  if (rows != matrix.row_labels.size()) {
    throw DataError("heatmap has " + std::to_string(rows) + " rows but " +
                    std::to_string(matrix.row_labels.size()) + " row labels");
  }
  const std::size_t cols = matrix.column_labels.size();
  for (std::size_t r = 0; r < rows; ++r) {
    if (matrix.values[r].size() != cols) {
      throw DataError("heatmap row " + std::to_string(r) + " has " +
                      std::to_string(matrix.values[r].size()) +
                      " cells, expected " + std::to_string(cols));
    }
  }

  std::size_t row_chars = 0;
  for (const std::string& label : matrix.row_labels) {
    row_chars = std::max(row_chars, label.size());
  }
  std::size_t col_chars = 0;
  for (const std::string& label : matrix.column_labels) {
    col_chars = std::max(col_chars, label.size());
  }
  const int title_height = title.empty() ? 0 : 24;
  const int left = kPad + static_cast<int>(row_chars) * kCharWidth + kPad;
  const int top =
      title_height + kPad + static_cast<int>(col_chars) * kCharWidth + kPad;
  const int width = left + static_cast<int>(cols) * kCellWidth + kPad;
  const int height = top + static_cast<int>(rows) * kCellHeight + kPad;

  std::string svg;
  char line[512];
  std::snprintf(line, sizeof(line),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                "height=\"%d\" viewBox=\"0 0 %d %d\" "
                "font-family=\"Helvetica, Arial, sans-serif\" "
                "font-size=\"11\">\n",
                width, height, width, height);
  svg += line;
  std::snprintf(line, sizeof(line),
                "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" "
                "fill=\"#ffffff\"/>\n",
                width, height);
  svg += line;
  if (!title.empty()) {
    std::snprintf(line, sizeof(line),
                  "<text x=\"%d\" y=\"18\" font-size=\"14\">", kPad);
    svg += line + internal::XmlEscape(title) + "</text>\n";
  }
  for (std::size_t c = 0; c < cols; ++c) {
    const int x = left + static_cast<int>(c) * kCellWidth + kCellWidth / 2;
    const int y = top - kPad / 2;
    std::snprintf(line, sizeof(line),
                  "<text x=\"%d\" y=\"%d\" transform=\"rotate(-60 %d %d)\">",
                  x, y, x, y);
    svg += line + internal::XmlEscape(matrix.column_labels[c]) + "</text>\n";
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const int y = top + static_cast<int>(r) * kCellHeight;
    std::snprintf(line, sizeof(line),
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"end\">", left - kPad,
                  y + kCellHeight / 2 + 4);
    svg += line + internal::XmlEscape(matrix.row_labels[r]) + "</text>\n";
    for (std::size_t c = 0; c < cols; ++c) {
      const int x = left + static_cast<int>(c) * kCellWidth;
      const auto& value = matrix.values[r][c];
      const std::string fill = value ? CellColor(*value) : "#dddddd";
      std::snprintf(line, sizeof(line),
                    "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
                    "fill=\"%s\" stroke=\"#ffffff\"/>\n",
                    x, y, kCellWidth, kCellHeight, fill.c_str());
      svg += line;
      const bool dark = value && *value > 0.6;
      std::snprintf(line, sizeof(line),
                    "<text x=\"%d\" y=\"%d\" text-anchor=\"middle\" "
                    "fill=\"%s\">",
                    x + kCellWidth / 2, y + kCellHeight / 2 + 4,
                    dark ? "#ffffff" : "#000000");
      svg += line;
      svg += value ? FormatFixed(*value, kRateDecimals) : "-";
      svg += "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

void EmitHeatmap(const HeatmapMatrix& matrix, const std::filesystem::path& path,
                 std::string_view title) {
  const std::string svg = RenderHeatmapSvg(matrix, title);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << svg;
}

HeatmapMatrix CombineHeatmap(std::span<const RobustnessReport> reports) {
  HeatmapMatrix matrix;
  const auto registry = AttackRegistry();
  for (const AttackSpec& spec : registry) {
    matrix.column_labels.emplace_back(spec.attack_id);
  }

  std::vector<std::string> metrics;
  for (const RobustnessReport& report : reports) {
    if (std::find(metrics.begin(), metrics.end(), report.metric) ==
        metrics.end()) {
      metrics.push_back(report.metric);
    }
  }

  for (const std::string& metric : metrics) {
    // canonical submetric -> per-attack (sum, count)
    std::map<std::string, std::vector<std::pair<double, int>>> cells;
    const auto add = [&](const std::string& row, std::size_t attack,
                         const std::optional<double>& rate) {
      auto& slots = cells[row];
      slots.resize(registry.size(), {0.0, 0});
      if (rate) {
        slots[attack].first += *rate;
        ++slots[attack].second;
      }
    };
    for (const RobustnessReport& report : reports) {
      if (report.metric != metric) continue;
      for (std::size_t s = 0; s < report.submetrics.size(); ++s) {
        const std::string row = CanonicalSubmetric(report.submetrics[s]);
        for (std::size_t a = 0; a < registry.size(); ++a) {
          add(row, a, report.matrix[s][a]);
        }
      }
      for (std::size_t a = 0; a < report.per_attack.size(); ++a) {
        add("overall", a, report.per_attack[a].rate);
      }
    }
    std::vector<std::string> rows;
    for (const auto& [row, slots] : cells) rows.push_back(row);
    std::stable_sort(rows.begin(), rows.end(),
                     [](const std::string& a, const std::string& b) {
                       return SubmetricRank(a) < SubmetricRank(b);
                     });
    for (const std::string& row : rows) {
      matrix.row_labels.push_back(metric + " / " + row);
      std::vector<std::optional<double>> values;
      for (const auto& [sum, count] : cells[row]) {
        values.push_back(count == 0 ? std::nullopt
                                    : std::optional<double>(sum / count));
      }
      matrix.values.push_back(std::move(values));
    }
  }
  return matrix;
}

}  // namespace dialrobust
