#include <fahp/error.hpp>
#include <fahp/hierarchy.hpp>
#include <fahp/project_io.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"

using namespace fahp;

namespace {

Hierarchy bundled() { return to_hierarchy(load_project_file(FAHP_FIXTURE_DIR "/turkiye.json")); }

FuzzyComparisonMatrix consistent_matrix(const std::vector<std::string>& ids, const std::vector<double>& w) {
  std::vector<Tfn> up;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      double r = w[i] / w[j];
      up.emplace_back(r, r, r);
    }
  return FuzzyComparisonMatrix::from_upper(ids, up);
}

// Random hierarchy of depth 1..3 with consistent matrices, plus the
// explicit path list the oracle needs.
struct RandomCase {
  Hierarchy h;
  std::vector<oracle::PathLeaf> paths;
};

RandomCase random_case(std::mt19937& rng, std::size_t n_alt) {
  RandomCase rc;
  for (std::size_t a = 0; a < n_alt; ++a) rc.h.alternatives.push_back({"A" + std::to_string(a + 1), ""});
  std::uniform_int_distribution<int> width(1, 3), depth(1, 3);
  int counter = 0;
  std::size_t leaves = 0;

  auto attach = [&](auto&& self, const std::string& parent, std::vector<CriterionNode>& slot, int levels,
                    std::vector<double> path) -> void {
    int n = width(rng);
    if (leaves + std::size_t(n) > 10) n = 1;
    std::vector<std::string> ids;
    for (int k = 0; k < n; ++k) {
      CriterionNode node;
      node.id = "K" + std::to_string(++counter);
      ids.push_back(node.id);
      slot.push_back(std::move(node));
    }
    auto w = oracle::random_simplex(rng, std::size_t(n));
    if (n >= 2) rc.h.matrices.emplace(parent, consistent_matrix(ids, w));
    for (int k = 0; k < n; ++k) {
      auto p = path;
      p.push_back(w[std::size_t(k)]);
      if (levels > 1 && leaves < 9) {
        self(self, slot[std::size_t(k)].id, slot[std::size_t(k)].children, levels - 1, p);
      } else {
        ++leaves;
        auto alt = oracle::random_simplex(rng, n_alt);
        rc.h.direct_weights[slot[std::size_t(k)].id] = alt;
        rc.paths.push_back({p, alt});
      }
    }
  };
  attach(attach, rc.h.goal_id, rc.h.criteria, depth(rng), {});
  return rc;
}

} // namespace

TEST(Validate, BundledModelIsValid) {
  auto h = bundled();
  EXPECT_TRUE(validate_hierarchy(h).ok());
  EXPECT_EQ(h.criteria.size(), 5u);
  EXPECT_EQ(h.leaves().size(), 30u);
  EXPECT_EQ(h.alternatives.size(), 5u);
  std::map<std::string, std::size_t> width;
  for (const auto& c : h.criteria) width[c.label] = c.children.size();
  EXPECT_EQ(width["Technical"], 9u);
  EXPECT_EQ(width["Economic"], 8u);
  EXPECT_EQ(width["Political"], 4u);
  EXPECT_EQ(width["Social"], 2u);
  EXPECT_EQ(width["Environmental"], 7u);
}

TEST(Validate, DuplicateId) {
  auto h = bundled();
  h.criteria[1].children[0].id = "C11";
  auto r = validate_hierarchy(h);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(std::any_of(r.violations.begin(), r.violations.end(), [](const Violation& v) {
    return v.kind == Violation::Kind::DuplicateId && v.node_id == "C11";
  }));
}

TEST(Validate, LeafWithoutJudgment) {
  auto h = bundled();
  h.direct_weights.erase("C42");
  auto r = validate_hierarchy(h);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].kind, Violation::Kind::MissingJudgment);
  EXPECT_EQ(r.violations[0].node_id, "C42");
  EXPECT_EQ(to_string(r.violations[0].kind), "missing-judgment");
}

TEST(Validate, LeafWithBothJudgmentKinds) {
  auto h = bundled();
  std::vector<double> w(5, 0.2);
  h.matrices.emplace("C42", consistent_matrix(h.alternative_ids(), w));
  auto r = validate_hierarchy(h);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].kind, Violation::Kind::ConflictingJudgment);
}

TEST(Validate, EmptyLevelsAndBadDirectWeights) {
  Hierarchy empty;
  auto r = validate_hierarchy(empty);
  EXPECT_EQ(r.violations.size(), 2u);
  auto h = bundled();
  h.direct_weights["C41"] = {0.5, 0.5};
  EXPECT_FALSE(validate_hierarchy(h).ok());
  h.direct_weights["C41"] = {0.5, 0.5, 0.5, 0.5, 0.5};
  EXPECT_FALSE(validate_hierarchy(h).ok());
  EXPECT_THROW(compute_local_weights(h), ValidationError);
}

TEST(LocalWeights, BundledMainAndEnvironmental) {
  auto local = compute_local_weights(bundled());
  const std::vector<double> main{0.125, 0.416, 0.353, 0.046, 0.060};
  const std::vector<double> env{0.063, 0.115, 0.138, 0.217, 0.135, 0.042, 0.290};
  for (std::size_t k = 0; k < main.size(); ++k) EXPECT_NEAR(local.at("goal").values[k], main[k], 0.002);
  for (std::size_t k = 0; k < env.size(); ++k) EXPECT_NEAR(local.at("C5").values[k], env[k], 0.005);
  EXPECT_EQ(local.size(), 1u + 5u + 30u);
}

TEST(LocalWeights, DirectVectorsAreRenormalized) {
  auto h = bundled();
  auto local = compute_local_weights(h);
  const auto& raw = h.direct_weights.at("C11");
  double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  for (std::size_t a = 0; a < raw.size(); ++a) EXPECT_NEAR(local.at("C11").values[a], raw[a] / sum, 1e-15);
}

TEST(LocalWeights, SingleCriterionGetsFullWeight) {
  Hierarchy h;
  h.criteria.push_back({"K1", "only", {}, {}});
  h.alternatives = {{"A1", ""}, {"A2", ""}};
  h.direct_weights["K1"] = {0.3, 0.7};
  auto local = compute_local_weights(h);
  EXPECT_EQ(local.at("goal").values, std::vector<double>{1.0});
  auto r = score_alternatives(h, local);
  // One leaf: global scores are that leaf's alternative weights.
  EXPECT_NEAR(r.global_scores[0], 0.3, 1e-15);
  EXPECT_NEAR(r.global_scores[1], 0.7, 1e-15);
}

TEST(LocalWeights, InconsistentMatrixNamesNode) {
  auto h = bundled();
  std::vector<Tfn> up{signed_scale_lookup(9), signed_scale_lookup(-9), signed_scale_lookup(9)};
  h.criteria[3].children.push_back({"C43", "extra", {}, {}});
  h.matrices.erase("C4");
  h.matrices.emplace("C4", FuzzyComparisonMatrix::from_upper({"C41", "C42", "C43"}, up));
  h.direct_weights["C43"] = {0.2, 0.2, 0.2, 0.2, 0.2};
  try {
    compute_local_weights(h);
    FAIL() << "expected ConsistencyError";
  } catch (const ConsistencyError& e) {
    EXPECT_EQ(e.node_id(), "C4");
    EXPECT_GT(e.cr(), 0.1);
  }
  LocalWeightOptions opts;
  opts.allow_inconsistent = true;
  EXPECT_NO_THROW(compute_local_weights(h, opts));
}

TEST(Synthesis, BundledPerCriterionAndGlobal) {
  auto h = bundled();
  auto local = compute_local_weights(h);
  auto r = score_alternatives(h, local);
  // Cross-check: dot product of C1 sub-weights with each leaf's A1 weight.
  double a1_c1 = 0.0;
  for (const auto& leaf : h.find("C1")->children) a1_c1 += local.at("C1").at(leaf.id) * local.at(leaf.id).values[0];
  EXPECT_NEAR(r.criterion_scores.at("C1")[0], a1_c1, 1e-15);
  EXPECT_NEAR(r.criterion_scores.at("C1")[0], 0.214, 0.002);
  EXPECT_NEAR(r.criterion_scores.at("C1")[4], 0.268, 0.002);
  const std::vector<double> global{0.23, 0.24, 0.14, 0.18, 0.22};
  for (std::size_t a = 0; a < 5; ++a) EXPECT_NEAR(r.global_scores[a], global[a], 0.005);
  EXPECT_NEAR(r.score("A2"), r.global_scores[1], 0);
  EXPECT_THROW(r.score("A9"), ShapeError);
  EXPECT_EQ(r.ranking.order, (std::vector<std::string>{"A2", "A1", "A5", "A4", "A3"}));
  EXPECT_TRUE(r.ranking.ties.empty());
}

TEST(Ranking, TiesAndSingleAlternative) {
  auto r = rank_scores({"B", "A", "C"}, {0.4, 0.4, 0.2});
  EXPECT_EQ(r.order, (std::vector<std::string>{"A", "B", "C"}));
  ASSERT_EQ(r.ties.size(), 1u);
  EXPECT_EQ(r.ties[0], (std::vector<std::string>{"A", "B"}));
  auto one = rank_scores({"X"}, {1.0});
  EXPECT_EQ(one.order.size(), 1u);
  EXPECT_TRUE(one.ties.empty());
  auto near = rank_scores({"B", "A"}, {0.5 + 4e-10, 0.5 - 4e-10});
  EXPECT_EQ(near.ties.size(), 1u);
}

TEST(Property, SynthesisMatchesPathEnumeration) {
  std::mt19937 rng(53);
  for (int t = 0; t < 300; ++t) {
    std::size_t n_alt = 2 + t % 5;
    auto rc = random_case(rng, n_alt);
    ASSERT_TRUE(validate_hierarchy(rc.h).ok());
    auto r = score_alternatives(rc.h, compute_local_weights(rc.h));
    auto expected = oracle::enumerate_paths(rc.paths, n_alt);
    for (std::size_t a = 0; a < n_alt; ++a) EXPECT_NEAR(r.global_scores[a], expected[a], 1e-12);
    EXPECT_NEAR(std::accumulate(r.global_scores.begin(), r.global_scores.end(), 0.0), 1.0, 1e-6);
    double leaf_sum = 0;
    for (const auto& [id, g] : r.leaf_global_weights) leaf_sum += g;
    EXPECT_NEAR(leaf_sum, 1.0, 1e-9);
  }
}

TEST(Property, RelabelingPreservesRanking) {
  std::mt19937 rng(59);
  for (int t = 0; t < 50; ++t) {
    auto rc = random_case(rng, 4);
    auto r1 = score_alternatives(rc.h, compute_local_weights(rc.h));
    // Rename alternatives in reverse order of their ids.
    Hierarchy h2 = rc.h;
    std::map<std::string, std::string> rename{{"A1", "Z4"}, {"A2", "Z3"}, {"A3", "Z2"}, {"A4", "Z1"}};
    for (auto& a : h2.alternatives) a.id = rename[a.id];
    auto r2 = score_alternatives(h2, compute_local_weights(h2));
    if (!r1.ranking.ties.empty()) continue;
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(rename[r1.ranking.order[k]], r2.ranking.order[k]);
  }
}

TEST(Property, ZeroWeightCriterionCanBeRemoved) {
  std::mt19937 rng(61);
  for (int t = 0; t < 50; ++t) {
    auto rc = random_case(rng, 3);
    auto local = compute_local_weights(rc.h);
    auto base = score_alternatives(rc.h, local);

    Hierarchy wider = rc.h;
    wider.criteria.push_back({"ZERO", "", {}, {}});
    auto local2 = local;
    auto& top = local2.at(wider.goal_id);
    top.item_ids.push_back("ZERO");
    top.values.push_back(0.0);
    local2["ZERO"] = WeightVector{"ZERO", DerivationMethod::GmMiddle, wider.alternative_ids(), {0.9, 0.05, 0.05}};
    auto r = score_alternatives(wider, local2);
    for (std::size_t a = 0; a < 3; ++a) EXPECT_NEAR(r.global_scores[a], base.global_scores[a], 1e-12);
  }
}
