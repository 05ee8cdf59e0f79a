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

#include "dialrobust/report.h"

#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dialrobust/errors.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/fixtures.h"

namespace dialrobust {
namespace {

using ::testing::HasSubstr;
using ::testing::Not;

ScoreRecord Record(double overall, std::map<std::string, double> subs = {}) {
  ScoreRecord r;
  r.overall = overall;
  r.submetrics = std::move(subs);
  return r;
}

// Rates: static.greeting 2/3 under the default tie rule.
ScoreTable GreetingTable(const std::string& metric, const std::string& corpus,
                         const std::vector<std::pair<double, double>>& pairs) {
  ScoreTable table;
  table.metric = metric;
  table.corpus = corpus;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string conv = "c" + std::to_string(i);
    ScoreEntry ref;
    ref.conversation_id = conv;
    ref.role = EntryRole::kReference;
    ref.response = "ref";
    ref.record = Record(pairs[i].first, {{"content", pairs[i].first}});
    table.entries.push_back(ref);
    ScoreEntry adv;
    adv.conversation_id = conv;
    adv.role = EntryRole::kAdversarial;
    adv.attack_id = "static.greeting";
    adv.response = "hello";
    adv.record = Record(pairs[i].second, {{"content", pairs[i].second}});
    table.entries.push_back(adv);
  }
  return table;
}

void AddCandidates(ScoreTable& table, const std::vector<double>& human,
                   const std::vector<double>& metric) {
  for (std::size_t i = 0; i < human.size(); ++i) {
    ScoreEntry e;
    e.conversation_id = "c" + std::to_string(i);
    e.role = EntryRole::kCandidate;
    e.candidate_index = 0;
    e.response = "cand";
    e.annotations = {{"content", human[i]}};
    e.human_overall = human[i];
    e.record = Record(metric[i], {{"content", metric[i]}});
    table.entries.push_back(e);
  }
}

TEST(FormatFixed, RoundsCorrectly) {
  EXPECT_EQ(FormatFixed(0.5, 2), "0.50");
  EXPECT_EQ(FormatFixed(2.0 / 3.0, 2), "0.67");
  EXPECT_EQ(FormatFixed(0.125, 2), "0.12");  // exact tie goes to even
  EXPECT_EQ(FormatFixed(0.375, 2), "0.38");
  EXPECT_EQ(FormatFixed(2.675, 2), "2.67");  // stored just below 2.675
  EXPECT_EQ(FormatFixed(-0.0001, 2), "0.00");
  EXPECT_EQ(FormatFixed(-0.25, 3), "-0.250");
  EXPECT_EQ(FormatFixed(1.0, 0), "1");
}

TEST(FormatFixed, RejectsNonFinite) {
  EXPECT_THROW(FormatFixed(std::numeric_limits<double>::quiet_NaN(), 2),
               DataError);
  EXPECT_THROW(FormatFixed(std::numeric_limits<double>::infinity(), 2),
               DataError);
}

TEST(Heatmap, SingleMidScaleCell) {
  HeatmapMatrix m;
  m.row_labels = {"row"};
  m.column_labels = {"col"};
  m.values = {{0.5}};
  const std::string svg = RenderHeatmapSvg(m);
  EXPECT_EQ(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0), 0u);
  EXPECT_THAT(svg, HasSubstr(">0.50</text>"));
  // Half way from white to (214, 39, 40), halves rounded away from zero.
  EXPECT_THAT(svg, HasSubstr("fill=\"#eb9394\""));
  EXPECT_THAT(svg, HasSubstr(">row</text>"));
  EXPECT_THAT(svg, HasSubstr(">col</text>"));
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
}

TEST(Heatmap, ScaleEndpointsAndMissingCells) {
  HeatmapMatrix m;
  m.row_labels = {"r"};
  m.column_labels = {"zero", "one", "none"};
  m.values = {{0.0, 1.0, std::nullopt}};
  const std::string svg = RenderHeatmapSvg(m, "Title & more");
  EXPECT_THAT(svg, HasSubstr("fill=\"#d62728\""));
  EXPECT_THAT(svg, HasSubstr(">0.00</text>"));
  EXPECT_THAT(svg, HasSubstr(">1.00</text>"));
  EXPECT_THAT(svg, HasSubstr("fill=\"#dddddd\""));
  EXPECT_THAT(svg, HasSubstr(">-</text>"));
  EXPECT_THAT(svg, HasSubstr("Title &amp; more"));
}

TEST(Heatmap, EscapesLabels) {
  HeatmapMatrix m;
  m.row_labels = {"a<b"};
  m.column_labels = {"\"q\""};
  m.values = {{0.1}};
  const std::string svg = RenderHeatmapSvg(m);
  EXPECT_THAT(svg, HasSubstr("a&lt;b"));
  EXPECT_THAT(svg, HasSubstr("&quot;q&quot;"));
  EXPECT_THAT(svg, Not(HasSubstr("a<b")));
}

TEST(Heatmap, RaggedRowsRejected) {
  HeatmapMatrix m;
  m.row_labels = {"a", "b"};
  m.column_labels = {"x", "y"};
  m.values = {{0.1, 0.2}, {0.3}};
  EXPECT_THROW(RenderHeatmapSvg(m), DataError);
  m.values = {{0.1, 0.2}};
  EXPECT_THROW(RenderHeatmapSvg(m), DataError);
}

TEST(Heatmap, DeterministicBytes) {
  HeatmapMatrix m;
  for (int r = 0; r < 4; ++r) {
    m.row_labels.push_back("metric / row" + std::to_string(r));
    m.values.emplace_back();
    for (int c = 0; c < 20; ++c) {
      if (r == 0) m.column_labels.push_back("attack." + std::to_string(c));
      m.values.back().push_back((r * 20 + c) / 79.0);
    }
  }
  testing::TempDir dir;
  EmitHeatmap(m, dir / "a.svg");
  EmitHeatmap(m, dir / "b.svg");
  const std::string a = testing::ReadFile(dir / "a.svg");
  EXPECT_EQ(a, testing::ReadFile(dir / "b.svg"));
  EXPECT_EQ(a, RenderHeatmapSvg(m));
  std::size_t rects = 0;
  for (std::size_t pos = 0; (pos = a.find("<rect", pos)) != std::string::npos;
       ++pos) {
    ++rects;
  }
  EXPECT_EQ(rects, 81u);  // background plus one per cell
}

TEST(CombineHeatmap, AveragesAcrossCorpora) {
  const ScoreTable one = GreetingTable("m", "a", {{1, 0}, {1, 0}});
  const ScoreTable two = GreetingTable("m", "b", {{0, 1}, {1, 0}});
  const ReportBundle bundle = BuildBundle({one, two});
  const HeatmapMatrix& m = bundle.heatmap;
  ASSERT_EQ(m.column_labels.size(), 20u);
  ASSERT_EQ(m.row_labels,
            (std::vector<std::string>{"m / content", "m / overall"}));
  const std::size_t greeting = 3;
  EXPECT_EQ(m.column_labels[greeting], "static.greeting");
  EXPECT_DOUBLE_EQ(*m.values[1][greeting], 0.25);
  EXPECT_DOUBLE_EQ(*m.values[0][greeting], 0.25);
  EXPECT_FALSE(m.values[1][0].has_value());
}

TEST(RobustnessTable, CsvAndMarkdown) {
  ReportBundle bundle = BuildBundle(
      {GreetingTable("alpha", "c", {{0.9, 0.8}, {0.5, 0.5}, {0.7, 0.9}}),
       GreetingTable("beta", "c", {{0.9, 0.8}, {0.9, 0.5}, {0.7, 0.9}})});
  const std::string csv = RobustnessTable(bundle, "c", TableFormat::kCsv);
  EXPECT_EQ(csv,
            "Metric,Speaker Tags,Static Resp.,Ungrammatical,Context Rep.,Avg\n"
            "alpha,,0.67,,,0.67\n"
            "beta,,0.33,,,0.33\n");
  const std::string md = RobustnessTable(bundle, "c", TableFormat::kMarkdown);
  EXPECT_THAT(md, HasSubstr("| alpha | - | 0.67 | - | - | 0.67 |"));
  EXPECT_THAT(md, HasSubstr("| beta | - | **0.33** | - | - | **0.33** |"));
  EXPECT_EQ(RobustnessTable(bundle, "elsewhere", TableFormat::kCsv),
            "Metric,Speaker Tags,Static Resp.,Ungrammatical,Context Rep.,Avg\n");
}

TEST(RobustnessTable, SingleMetricRow) {
  const ReportBundle bundle =
      BuildBundle({GreetingTable("only", "c", {{1, 0}})});
  const std::string md = RobustnessTable(bundle, "c", TableFormat::kMarkdown);
  EXPECT_EQ(md,
            "| Metric | Speaker Tags | Static Resp. | Ungrammatical | "
            "Context Rep. | Avg |\n"
            "|---|---:|---:|---:|---:|---:|\n"
            "| only | - | **0.00** | - | - | **0.00** |\n");
}

TEST(CorrelationTable, ItalicisesInsignificantCells) {
  // Six perfectly ordered candidates: exact two-sided p = 2/720.
  ScoreTable strong = GreetingTable("strong", "c", {{1, 0}});
  AddCandidates(strong, {1, 2, 3, 4, 5, 6}, {1, 2, 3, 4, 5, 6});
  // Three discordant pairs of fifteen: tau 0.6, exact p 98/720.
  ScoreTable weak = GreetingTable("weak", "c", {{1, 0}});
  AddCandidates(weak, {1, 2, 3, 4, 5, 6}, {2, 1, 4, 3, 6, 5});
  const ReportBundle bundle = BuildBundle({strong, weak});
  const std::string md = CorrelationTable(bundle, "c", TableFormat::kMarkdown);
  EXPECT_THAT(md, HasSubstr("| Metric | Content | Naturalness | Relevance | "
                            "Groundedness | Overall |"));
  EXPECT_THAT(md, HasSubstr("| strong | **1.000** | - | - | - | **1.000** |"));
  EXPECT_THAT(md, HasSubstr("| weak | *0.600* | - | - | - | *0.600* |"));

  const std::string csv = CorrelationTable(bundle, "c", TableFormat::kCsv);
  EXPECT_THAT(csv, HasSubstr("metric,submetric,tau,p_value,significant,n,note\n"));
  EXPECT_THAT(csv, HasSubstr("strong,content,1.000,0.0028,true,6,\n"));
  EXPECT_THAT(csv, HasSubstr("weak,overall,0.600,0.1361,false,6,\n"));
  EXPECT_THAT(csv, HasSubstr("weak,groundedness,,,,0,corpus is not grounded\n"));
}

TEST(AttackTable, AttackRowsMetricColumns) {
  const ReportBundle bundle =
      BuildBundle({GreetingTable("alpha", "c", {{1, 0}, {0, 1}}),
                   GreetingTable("beta", "c", {{1, 1}})});
  const std::string csv = AttackTable(bundle, "c", TableFormat::kCsv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "Attack,alpha,beta");
  EXPECT_THAT(csv, HasSubstr("\nstatic.greeting,0.50,1.00\n"));
  EXPECT_THAT(csv, HasSubstr("\ntag.teacher,,\n"));
  std::size_t lines = 0;
  for (const char c : csv) lines += c == '\n';
  EXPECT_EQ(lines, 21u);
}

TEST(BuildBundle, RejectsEmptyAndDuplicateInput) {
  EXPECT_THROW(BuildBundle({}), DataError);
  const ScoreTable t = GreetingTable("m", "c", {{1, 0}});
  EXPECT_THROW(BuildBundle({t, t}), DataError);
}

TEST(BuildBundle, FirstSeenOrderAndMetadata) {
  const ReportBundle bundle =
      BuildBundle({GreetingTable("z", "c2", {{1, 0}}),
                   GreetingTable("a", "c1", {{1, 0}}),
                   GreetingTable("a", "c2", {{1, 0}})});
  EXPECT_EQ(bundle.metrics, (std::vector<std::string>{"z", "a"}));
  EXPECT_EQ(bundle.corpora, (std::vector<std::string>{"c2", "c1"}));
  EXPECT_EQ(bundle.metadata["runs"].size(), 3u);
  EXPECT_EQ(bundle.metadata["tie_rule"], "success");
  EXPECT_NE(bundle.FindRobustness("a", "c1"), nullptr);
  EXPECT_EQ(bundle.FindRobustness("z", "c1"), nullptr);
  const nlohmann::json json = BundleToJson(bundle);
  EXPECT_EQ(json["robustness"].size(), 3u);
  EXPECT_EQ(json["heatmap"]["columns"].size(), 20u);
}

TEST(EmitBundle, WritesEveryArtifact) {
  const ReportBundle bundle =
      BuildBundle({GreetingTable("m", "my corpus", {{1, 0}})});
  testing::TempDir dir;
  const auto written = EmitBundle(bundle, dir / "out");
  std::vector<std::string> names;
  for (const auto& path : written) {
    EXPECT_TRUE(std::filesystem::exists(path)) << path;
    names.push_back(path.filename().string());
  }
  EXPECT_EQ(names, (std::vector<std::string>{
                       "robustness_my_corpus.csv", "correlation_my_corpus.csv",
                       "attacks_my_corpus.csv", "robustness_my_corpus.md",
                       "correlation_my_corpus.md", "attacks_my_corpus.md",
                       "heatmap.svg", "bundle.json"}));
  const auto again = EmitBundle(bundle, dir / "again");
  for (std::size_t i = 0; i < written.size(); ++i) {
    EXPECT_EQ(testing::ReadFile(written[i]), testing::ReadFile(again[i]));
  }
}

TEST(EmitBundle, EmptyBundleRejected) {
  testing::TempDir dir;
  EXPECT_THROW(EmitBundle(ReportBundle{}, dir / "out"), DataError);
}

}  // namespace
}  // namespace dialrobust
