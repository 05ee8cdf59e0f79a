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
#include <string>
#include <vector>

#include "dialrobust/report.h"
#include "report/internal.h"

namespace dialrobust {
namespace {

using internal::CsvField;

constexpr std::string_view kCorrelationHeadings[] = {
    "Content", "Naturalness", "Relevance", "Groundedness", "Overall"};

struct Cell {
  std::optional<double> value;
  std::string text;  // formatted value, "-" when missing
  bool italic = false;
  bool bold = false;
};

std::string MarkdownCell(const Cell& cell) {
  if (!cell.value) return cell.text;
  std::string marks;
  if (cell.bold) marks += "**";
  if (cell.italic) marks += "*";
  std::string reversed(marks.rbegin(), marks.rend());
  return marks + cell.text + reversed;
}

// Bolds, per column, the cells whose printed value is the best one.
void MarkBest(std::vector<std::vector<Cell>>& rows, bool lowest) {
  if (rows.empty()) return;
  for (std::size_t c = 0; c < rows.front().size(); ++c) {
    std::optional<double> best;
    for (const auto& row : rows) {
      if (!row[c].value) continue;
      const double printed = std::stod(row[c].text);
      if (!best || (lowest ? printed < *best : printed > *best)) best = printed;
    }
    if (!best) continue;
    for (auto& row : rows) {
      if (row[c].value && std::stod(row[c].text) == *best) row[c].bold = true;
    }
  }
}

Cell MakeCell(const std::optional<double>& value, int decimals) {
  Cell cell;
  cell.value = value;
  cell.text = value ? FormatFixed(*value, decimals) : "-";
  return cell;
}

std::string Render(const std::vector<std::string>& header,
                   const std::vector<std::string>& labels,
                   const std::vector<std::vector<Cell>>& rows,
                   TableFormat format) {
  std::string out;
  if (format == TableFormat::kCsv) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i > 0) out += ',';
      out += CsvField(header[i]);
    }
    out += '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out += CsvField(labels[r]);
      for (const Cell& cell : rows[r]) {
        out += ',';
        if (cell.value) out += cell.text;
      }
      out += '\n';
    }
    return out;
  }
  out += '|';
  for (const std::string& h : header) out += ' ' + h + " |";
  out += "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += i == 0 ? "---|" : "---:|";
  }
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += "| " + labels[r] + " |";
    for (const Cell& cell : rows[r]) out += ' ' + MarkdownCell(cell) + " |";
    out += '\n';
  }
  return out;
}

}  // namespace

std::string RobustnessTable(const ReportBundle& bundle,
                            std::string_view corpus, TableFormat format) {
  std::vector<std::string> header = {"Metric"};
  for (const AttackCategory category : kAllCategories) {
    header.emplace_back(CategoryLabel(category));
  }
  header.emplace_back("Avg");

  std::vector<std::string> labels;
  std::vector<std::vector<Cell>> rows;
  for (const std::string& metric : bundle.metrics) {
    const RobustnessReport* report = bundle.FindRobustness(metric, corpus);
    if (report == nullptr) continue;
    std::vector<Cell> row;
    for (const CategoryResult& category : report->per_category) {
      row.push_back(MakeCell(category.mean, kRateDecimals));
    }
    row.push_back(MakeCell(report->overall_avg, kRateDecimals));
    labels.push_back(metric);
    rows.push_back(std::move(row));
  }
  MarkBest(rows, /*lowest=*/true);
  return Render(header, labels, rows, format);
}

std::string CorrelationTable(const ReportBundle& bundle,
                             std::string_view corpus, TableFormat format) {
  if (format == TableFormat::kCsv) {
    std::string out = "metric,submetric,tau,p_value,significant,n,note\n";
    for (const std::string& metric : bundle.metrics) {
      const CorrelationReport* report = bundle.FindCorrelation(metric, corpus);
      if (report == nullptr) continue;
      for (const CorrelationCell& cell : report->cells) {
        out += CsvField(metric) + ',' + CsvField(cell.submetric) + ',';
        if (cell.result) {
          out += FormatFixed(cell.result->tau, kTauDecimals) + ',' +
                 FormatFixed(cell.result->p_value, 4) + ',' +
                 (cell.significant ? "true" : "false");
        } else {
          out += ",,";
        }
        out += ',' + std::to_string(cell.n) + ',' +
               CsvField(cell.skipped_reason.value_or("")) + '\n';
      }
    }
    return out;
  }

  std::vector<std::string> header = {"Metric"};
  for (const std::string_view h : kCorrelationHeadings) header.emplace_back(h);
  std::vector<std::string> labels;
  std::vector<std::vector<Cell>> rows;
  for (const std::string& metric : bundle.metrics) {
    const CorrelationReport* report = bundle.FindCorrelation(metric, corpus);
    if (report == nullptr) continue;
    std::vector<Cell> row;
    for (const std::string_view submetric : kCorrelationSubmetrics) {
      const CorrelationCell* cell = report->Find(submetric);
      if (cell == nullptr || !cell->result) {
        row.push_back(MakeCell(std::nullopt, kTauDecimals));
        continue;
      }
      Cell c = MakeCell(cell->result->tau, kTauDecimals);
      c.italic = !cell->significant;
      row.push_back(std::move(c));
    }
    labels.push_back(metric);
    rows.push_back(std::move(row));
  }
  MarkBest(rows, /*lowest=*/false);
  return Render(header, labels, rows, format);
}

std::string AttackTable(const ReportBundle& bundle, std::string_view corpus,
                        TableFormat format) {
  std::vector<std::string> header = {"Attack"};
  std::vector<const RobustnessReport*> reports;
  for (const std::string& metric : bundle.metrics) {
    if (const RobustnessReport* report = bundle.FindRobustness(metric, corpus)) {
      header.push_back(metric);
      reports.push_back(report);
    }
  }
  std::vector<std::string> labels;
  std::vector<std::vector<Cell>> rows;
  for (const AttackSpec& spec : AttackRegistry()) {
    std::vector<Cell> row;
    for (const RobustnessReport* report : reports) {
      const AttackResult* attack = report->FindAttack(spec.attack_id);
      row.push_back(MakeCell(attack ? attack->rate : std::nullopt,
                             kRateDecimals));
    }
    labels.emplace_back(spec.attack_id);
    rows.push_back(std::move(row));
  }
  return Render(header, labels, rows, format);
}

}  // namespace dialrobust
