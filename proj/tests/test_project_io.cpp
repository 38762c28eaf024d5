#include <fahp/error.hpp>
#include <fahp/export.hpp>
#include <fahp/project_io.hpp>
#include <fahp/sensitivity.hpp>

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "project_gen.hpp"

using namespace fahp;
using nlohmann::json;

namespace {

const std::string kFixture = FAHP_FIXTURE_DIR "/turkiye.json";

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json fixture_json() { return json::parse(read_text(kFixture)); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

std::vector<std::string> lines(const std::string& text) { return split(text, '\n'); }

struct Evaluated {
  Hierarchy h;
  DecisionResult result;
};

Evaluated evaluate(const ProjectFile& p) {
  Evaluated e{to_hierarchy(p), {}};
  e.result = score_alternatives(e.h, compute_local_weights(e.h));
  return e;
}

void expect_grid(const FuzzyComparisonMatrix& m, const std::vector<std::vector<double>>& printed) {
  const std::size_t n = m.order();
  ASSERT_EQ(printed.size(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Tfn& x = m.at(i, j);
      EXPECT_NEAR(x.lower(), printed[i][3 * j], 0.0051) << i << "," << j;
      EXPECT_NEAR(x.middle(), printed[i][3 * j + 1], 0.0051) << i << "," << j;
      EXPECT_NEAR(x.upper(), printed[i][3 * j + 2], 0.0051) << i << "," << j;
    }
}

} // namespace

TEST(Load, FixtureShape) {
  auto p = load_project_file(kFixture);
  EXPECT_EQ(p.criteria.size(), 5u);
  EXPECT_EQ(p.alternatives.size(), 5u);
  EXPECT_EQ(p.judgments.size(), 6u);
  EXPECT_EQ(p.direct_weights.size(), 30u);
  EXPECT_EQ(p.alternatives[1].label, "Solar");
  EXPECT_EQ(p.settings.defuzz, DefuzzMethod::Middle);
  EXPECT_EQ(p.settings.method, DerivationMethod::GmMiddle);
  EXPECT_DOUBLE_EQ(p.settings.cr_threshold, 0.1);
  EXPECT_DOUBLE_EQ(p.settings.sensitivity_factor, 1.5);
  ASSERT_TRUE(p.judgments[0].published_cr.has_value());
  EXPECT_TRUE(validate_project(p).ok());
}

TEST(Load, FixtureMatchesPrintedMatrices) {
  auto h = to_hierarchy(load_project_file(kFixture));
  expect_grid(h.matrices.at("goal"), {
      {1.00, 1.00, 1.00, 0.17, 0.20, 0.25, 0.25, 0.33, 0.50, 2.00, 3.00, 4.00, 2.00, 3.00, 4.00},
      {4.00, 5.00, 6.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 6.00, 7.00, 8.00, 6.00, 7.00, 8.00},
      {2.00, 3.00, 4.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 5.00, 6.00, 7.00, 5.00, 6.00, 7.00},
      {0.25, 0.33, 0.50, 0.13, 0.14, 0.17, 0.14, 0.17, 0.20, 1.00, 1.00, 1.00, 0.33, 0.50, 1.00},
      {0.25, 0.33, 0.50, 0.13, 0.14, 0.17, 0.14, 0.17, 0.20, 1.00, 2.00, 3.00, 1.00, 1.00, 1.00},
  });
  expect_grid(h.matrices.at("C3"), {
      {1.00, 1.00, 1.00, 0.25, 0.33, 0.50, 0.25, 0.33, 0.50, 0.17, 0.20, 0.25},
      {2.00, 3.00, 4.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 0.33, 0.50, 1.00},
      {2.00, 3.00, 4.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 0.25, 0.33, 0.50},
      {4.00, 5.00, 6.00, 1.00, 2.00, 3.00, 2.00, 3.00, 4.00, 1.00, 1.00, 1.00},
  });
  expect_grid(h.matrices.at("C4"), {{1.00, 1.00, 1.00, 0.11, 0.11, 0.13}, {8.00, 9.00, 9.00, 1.00, 1.00, 1.00}});
}

TEST(Load, UnknownJudgmentNode) {
  auto j = fixture_json();
  j["judgments"][2]["node"] = "C99";
  try {
    load_project(j.dump());
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("C99"), std::string::npos);
    EXPECT_NE(msg.find("$.judgments[2].node"), std::string::npos) << msg;
  }
}

TEST(Load, TruncatedFileReportsLocation) {
  const auto text = read_text(kFixture);
  const auto cut = text.substr(0, text.size() / 2);
  try {
    load_project(cut);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    const std::size_t expected_line = std::size_t(std::count(cut.begin(), cut.end(), '\n')) + 1;
    EXPECT_EQ(e.line(), expected_line);
    EXPECT_GE(e.column(), 1u);
    EXPECT_NE(std::string(e.what()).find("line " + std::to_string(expected_line)), std::string::npos) << e.what();
  }
}

TEST(Load, SchemaVersionAndTypeErrors) {
  auto j = fixture_json();
  j["schema_version"] = 2;
  EXPECT_THROW(load_project(j.dump()), VersionError);
  j = fixture_json();
  j["settings"]["cr_threshold"] = "low";
  try {
    load_project(j.dump());
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("$.settings.cr_threshold"), std::string::npos) << e.what();
  }
  j = fixture_json();
  j["judgments"][0]["scores"][0][1] = 12;
  EXPECT_THROW(load_project(j.dump()), ValidationError);
  EXPECT_THROW(load_project_file(FAHP_FIXTURE_DIR "/does-not-exist.json"), IoError);
}

TEST(Load, ShortScoreRowIsIncomplete) {
  auto j = fixture_json();
  j["judgments"][0]["scores"][3] = json::array();
  try {
    load_project(j.dump());
    FAIL();
  } catch (const IncompleteMatrixError& e) {
    ASSERT_EQ(e.missing().size(), 1u);
    EXPECT_EQ(e.missing()[0], std::make_pair(std::size_t{3}, std::size_t{4}));
  }
}

TEST(Load, PairsFormEqualsScoresForm) {
  auto j = fixture_json();
  j["judgments"][3] = {{"node", "C3"},
                       {"pairs", {{"C32", "C31", 3}, {"C31", "C33", -3}, {"C31", "C34", -5}, {"C32", "C33", 1},
                                  {"C32", "C34", -2}, {"C33", "C34", -3}}}};
  auto a = to_hierarchy(load_project_file(kFixture));
  auto b = to_hierarchy(load_project(j.dump()));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(a.matrices.at("C3").at(i, k), b.matrices.at("C3").at(i, k));
}

TEST(Load, MultipleExpertsAreAggregated) {
  auto j = fixture_json();
  j["judgments"].push_back({{"node", "C4"}, {"expert", "second"}, {"scores", {{-7}}}});
  auto h = to_hierarchy(load_project(j.dump()));
  const Tfn& x = h.matrices.at("C4").at(1, 0);
  EXPECT_NEAR(x.lower(), std::sqrt(8.0 * 6.0), 1e-12);
  EXPECT_NEAR(x.middle(), std::sqrt(9.0 * 7.0), 1e-12);
  EXPECT_NEAR(x.upper(), std::sqrt(9.0 * 8.0), 1e-12);
}

TEST(RoundTrip, Fixture) {
  auto p = load_project_file(kFixture);
  auto text = save_project(p);
  auto q = load_project(text);
  EXPECT_TRUE(semantically_equal(p, q));
  EXPECT_EQ(save_project(q), text);
}

TEST(RoundTrip, RandomProjects) {
  std::mt19937 rng(71);
  for (int t = 0; t < 100; ++t) {
    auto p = testgen::random_project(rng);
    ASSERT_TRUE(validate_project(p).ok()) << t;
    auto q = load_project(save_project(p));
    EXPECT_TRUE(semantically_equal(p, q)) << t;
  }
}

TEST(RoundTrip, TfnDecimalsSurvive) {
  auto p = load_project_file(kFixture);
  p.judgments[4].data = TfnUpper{Tfn(0.11, 0.11, 0.13)};
  auto q = load_project(save_project(p));
  const auto& tfn = std::get<TfnUpper>(q.judgments[4].data);
  ASSERT_EQ(tfn.size(), 1u);
  EXPECT_EQ(tfn[0], Tfn(0.11, 0.11, 0.13));
}

TEST(RoundTrip, SemanticEqualityNoticesChanges) {
  auto p = load_project_file(kFixture);
  auto q = p;
  q.direct_weights["C11"].weights[0] += 1e-6;
  EXPECT_FALSE(semantically_equal(p, q));
  q = p;
  q.alternatives[0].label = "Offshore wind";
  EXPECT_FALSE(semantically_equal(p, q));
}

TEST(Save, RefusesInvalidProject) {
  auto p = load_project_file(kFixture);
  p.alternatives.clear();
  EXPECT_THROW(save_project(p), ValidationError);
  auto dir = std::filesystem::temp_directory_path() / "fahp_io_test";
  std::filesystem::create_directories(dir);
  EXPECT_THROW(save_project_file(p, dir / "bad.json"), ValidationError);
  EXPECT_FALSE(std::filesystem::exists(dir / "bad.json"));
  std::filesystem::remove_all(dir);
}

TEST(Fixture, PublishedExpectationsReproduced) {
  auto fx = load_fixture(FAHP_FIXTURE_DIR);
  EXPECT_EQ(fx.name, "turkiye-renewables-2024");
  auto e = evaluate(fx.project);
  for (const auto& [node, values] : fx.expected.local_weights) {
    const auto& got = e.result.local_weights.at(node).values;
    ASSERT_EQ(got.size(), values.size()) << node;
    for (std::size_t k = 0; k < values.size(); ++k) EXPECT_NEAR(got[k], values[k], 0.005) << node << "[" << k << "]";
  }
  for (const auto& [node, values] : fx.expected.criterion_scores)
    for (std::size_t a = 0; a < values.size(); ++a)
      EXPECT_NEAR(e.result.criterion_scores.at(node)[a], values[a], 0.005) << node << "[" << a << "]";
  for (std::size_t a = 0; a < 5; ++a) EXPECT_NEAR(e.result.global_scores[a], fx.expected.global_scores[a], 0.005);
  EXPECT_EQ(e.result.ranking.order, fx.expected.ranking);
  EXPECT_FALSE(fx.expected.sources.empty());
}

TEST(Export, CsvLayout) {
  auto e = evaluate(load_project_file(kFixture));
  auto rows = lines(export_csv(e.result));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "alternative,C1,C2,C3,C4,C5,global");
  const std::regex six_decimals(R"(^\d+\.\d{6}$)");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    auto cells = split(rows[r], ',');
    ASSERT_EQ(cells.size(), e.result.top_level_ids.size() + 2);
    for (std::size_t c = 1; c < cells.size(); ++c) EXPECT_TRUE(std::regex_match(cells[c], six_decimals)) << cells[c];
  }
  auto a2 = split(rows[2], ',');
  EXPECT_EQ(a2[0], "A2");
  const double published[] = {0.276, 0.222, 0.248, 0.162, 0.261};
  for (std::size_t c = 0; c < 5; ++c) EXPECT_NEAR(std::stod(a2[c + 1]), published[c], 0.002);
  EXPECT_NEAR(std::stod(a2[6]), 0.24, 0.005);
  EXPECT_NEAR(std::stod(a2[6]), e.result.global_scores[1], 5e-7);
}

TEST(Export, SensitivityCsv) {
  auto e = evaluate(load_project_file(kFixture));
  auto rep = run_scenarios(e.h, e.result);
  auto rows = lines(export_csv(rep));
  EXPECT_EQ(rows[0], "scenario,boosted_node,factor,alternative,score,rank");
  EXPECT_EQ(rows.size(), 1u + 6u * 5u);
  auto baseline_only = run_scenario_set(e.h, e.result, {{"Scenario 1", std::nullopt, 1.0}});
  EXPECT_EQ(lines(export_csv(baseline_only)).size(), 6u);
}

TEST(Report, DeterministicAndLabelled) {
  auto e = evaluate(load_project_file(kFixture));
  auto rep = run_scenarios(e.h, e.result);
  auto cr = assess_consistency(e.h, DefuzzMethod::Middle);
  auto a = render_report(e.h, e.result, &rep, cr);
  auto b = render_report(e.h, e.result, &rep, cr);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("Final order: Solar, Wind, Hydroelectric, Biomass, Geothermal"), std::string::npos);
  for (const char* section : {"## Criterion weights", "## Alternative scores by criterion", "## Final ranking",
                              "## Sensitivity analysis", "## Consistency annex"})
    EXPECT_NE(a.find(section), std::string::npos) << section;
  EXPECT_EQ(a.find("REVISE"), std::string::npos);
}

TEST(Report, FlagsFailingMatrix) {
  auto p = load_project_file(kFixture);
  p.criteria[3].children.push_back({"C43", "Cohesion", {}, {}});
  p.direct_weights["C43"] = {{0.2, 0.2, 0.2, 0.2, 0.2}, std::nullopt};
  for (auto& j : p.judgments)
    if (j.node_id == "C4") j.data = ScoreUpper{{0, 1, 9}, {0, 2, -9}, {1, 2, 9}};
  auto h = to_hierarchy(p);
  LocalWeightOptions opts;
  opts.allow_inconsistent = true;
  auto result = score_alternatives(h, compute_local_weights(h, opts));
  auto text = render_report(h, result, nullptr, assess_consistency(h, DefuzzMethod::Middle));
  EXPECT_NE(text.find("REVISE"), std::string::npos);
  EXPECT_NE(text.find("C4"), std::string::npos);
  EXPECT_EQ(text.find("## Sensitivity analysis"), std::string::npos);
}

TEST(Json, PayloadShapes) {
  auto p = load_project_file(kFixture);
  auto e = evaluate(p);
  auto r = to_json(e.result);
  EXPECT_EQ(r["ranking"], json({"A2", "A1", "A5", "A4", "A3"}));
  EXPECT_NEAR(r["scores"]["A2"].get<double>(), e.result.global_scores[1], 1e-15);
  auto m = model_json(p);
  ASSERT_EQ(m["scale"].size(), 9u);
  EXPECT_EQ(m["scale"][8]["tfn"], json({8.0, 9.0, 9.0}));
  EXPECT_NEAR(m["scale"][8]["reciprocal"][2].get<double>(), 0.125, 1e-15);
}
