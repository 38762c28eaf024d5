#include "fahp/sensitivity.hpp"

#include "fahp/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace fahp {

WeightVector scenario_weights(const WeightVector& base, std::string_view boosted, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw DomainError(fmt::format("boost factor must be positive, got {}", factor));
  std::size_t b = base.item_ids.size();
  for (std::size_t k = 0; k < base.item_ids.size(); ++k)
    if (base.item_ids[k] == boosted) b = k;
  if (b == base.item_ids.size())
    throw ShapeError(fmt::format("node '{}' is not weighted under '{}'", boosted, base.node_id));

  const double wb = base.values[b];
  const double boosted_w = factor * wb;
  if (boosted_w >= 1.0)
    throw InfeasibleBoostError(
        fmt::format("boosting '{}' ({:.4f}) by {} gives {:.4f}, which is not below 1", boosted, wb, factor, boosted_w));

  WeightVector out = base;
  const double scale = (1.0 - boosted_w) / (1.0 - wb);
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = k == b ? boosted_w : base.values[k] * scale;
  return out;
}

SensitivityReport run_scenarios(const Hierarchy& h, const DecisionResult& base, double factor) {
  std::vector<Scenario> scenarios{{"Scenario 1", std::nullopt, 1.0}};
  int k = 2;
  for (const auto& c : h.criteria) scenarios.push_back({fmt::format("Scenario {}", k++), c.id, factor});
  return run_scenario_set(h, base, scenarios);
}

SensitivityReport run_scenario_set(const Hierarchy& h, const DecisionResult& base, const std::vector<Scenario>& scenarios) {
  SensitivityReport report;
  report.alternative_ids = base.alternative_ids;

  for (const auto& s : scenarios) {
    ScenarioResult sr{s, {}, {}, {}};
    if (!s.boosted_node) {
      sr.adjusted_weights = base.local_weights.at(h.goal_id);
      sr.global_scores = base.global_scores;
      sr.ranking = base.ranking;
    } else {
      const std::string parent = h.parent_of(*s.boosted_node);
      if (parent.empty())
        throw ShapeError(fmt::format("scenario '{}' boosts unknown criterion '{}'", s.name, *s.boosted_node));
      auto local = base.local_weights;
      sr.adjusted_weights = scenario_weights(local.at(parent), *s.boosted_node, s.factor);
      local.at(parent) = sr.adjusted_weights;
      auto rescored = score_alternatives(h, local);
      sr.global_scores = std::move(rescored.global_scores);
      sr.ranking = std::move(rescored.ranking);
    }
    report.scenarios.push_back(std::move(sr));
  }

  for (const auto& sr : report.scenarios)
    for (std::size_t pos = 0; pos < sr.ranking.order.size(); ++pos)
      report.stability[sr.ranking.order[pos]].insert(static_cast<int>(pos + 1));

  if (report.scenarios.empty()) return report;
  const auto& ref = report.scenarios.front().ranking.order;
  for (std::size_t s = 1; s < report.scenarios.size(); ++s) {
    const auto& order = report.scenarios[s].ranking.order;
    auto pos_of = [&](const std::string& id) {
      return static_cast<std::size_t>(std::find(order.begin(), order.end(), id) - order.begin());
    };
    for (std::size_t a = 0; a < ref.size(); ++a)
      for (std::size_t b = a + 1; b < ref.size(); ++b)
        if (pos_of(ref[b]) < pos_of(ref[a])) report.flips.push_back({report.scenarios[s].scenario.name, ref[a], ref[b]});
  }
  return report;
}

} // namespace fahp
