#pragma once

#include "fahp/hierarchy.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fahp {

inline constexpr double kDefaultBoostFactor = 1.5;

struct Scenario {
  std::string name;
  /// Empty for the baseline.
  std::optional<std::string> boosted_node;
  double factor = 1.0;
};

struct ScenarioResult {
  Scenario scenario;
  /// Local weights of the boosted node's parent after rescaling
  /// (the unchanged top-level vector for the baseline).
  WeightVector adjusted_weights;
  std::vector<double> global_scores;
  Ranking ranking;
};

/// A pair whose relative order differs from the baseline.
struct RankFlip {
  std::string scenario;
  std::string baseline_higher;
  std::string now_higher;
};

struct SensitivityReport {
  std::vector<std::string> alternative_ids;
  std::vector<ScenarioResult> scenarios;
  /// Alternative -> 1-based ranks attained across all scenarios.
  std::map<std::string, std::set<int>> stability;
  std::vector<RankFlip> flips;
};

/// Boost `boosted` by `factor` and rescale the others proportionally:
/// w'_b = factor * w_b, w'_j = w_j * (1 - w'_b) / (1 - w_b).
/// Throws InfeasibleBoostError when factor * w_b >= 1, DomainError for
/// factor <= 0, ShapeError for an unknown item.
WeightVector scenario_weights(const WeightVector& base, std::string_view boosted, double factor);

/// Baseline plus one scenario per top-level criterion, each boosted by
/// `factor`; lower-level weights stay fixed.
SensitivityReport run_scenarios(const Hierarchy& h, const DecisionResult& base, double factor = kDefaultBoostFactor);

/// Arbitrary scenario list. Any criterion may be boosted; its parent's local
/// vector is rescaled. The first scenario is the reference for flips.
SensitivityReport run_scenario_set(const Hierarchy& h, const DecisionResult& base, const std::vector<Scenario>& scenarios);

} // namespace fahp
