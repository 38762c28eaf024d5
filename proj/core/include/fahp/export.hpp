#pragma once

#include "fahp/hierarchy.hpp"
#include "fahp/project_io.hpp"
#include "fahp/sensitivity.hpp"

#include <map>
#include <nlohmann/json.hpp>
#include <string>

namespace fahp {

/// One row per alternative: id, score under each top-level criterion, global
/// score. Header row first; six decimals; '.' separator.
std::string export_csv(const DecisionResult& result);

/// One row per (scenario, alternative): scenario, boosted node, factor,
/// alternative, score, rank.
std::string export_csv(const SensitivityReport& report);

/// Markdown report: criterion weights, per-criterion alternative scores,
/// final ranking, sensitivity table, consistency annex. Deterministic.
/// `sensitivity` may be null.
std::string render_report(const Hierarchy& h, const DecisionResult& result, const SensitivityReport* sensitivity,
                          const std::map<std::string, ConsistencyReport>& consistency);

// JSON payloads shared by the CLI (--format json) and the HTTP service.
nlohmann::json to_json(const WeightVector& w);
nlohmann::json to_json(const std::map<std::string, WeightVector>& local);
nlohmann::json to_json(const DecisionResult& result);
nlohmann::json to_json(const SensitivityReport& report);
/// `item_ids` names the matrix rows so worst entries can be reported by id.
nlohmann::json to_json(const ConsistencyReport& report, const std::vector<std::string>& item_ids);
nlohmann::json to_json(const ValidationReport& report);
/// Hierarchy, alternatives, settings, current judgments and the importance
/// scale (with reciprocal triples).
nlohmann::json model_json(const ProjectFile& project);

} // namespace fahp
