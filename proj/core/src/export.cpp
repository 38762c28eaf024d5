#include "fahp/export.hpp"

#include "fahp/error.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace fahp {

using nlohmann::json;

namespace {

std::string label_of(const Hierarchy& h, const std::string& id) {
  if (id == h.goal_id) return h.goal.empty() ? id : h.goal;
  for (const auto& a : h.alternatives)
    if (a.id == id) return a.label;
  if (const auto* n = h.find(id)) return n->label;
  return id;
}

std::string six(double v) { return fmt::format("{:.6f}", v); }

json node_json(const CriterionNode& n) {
  json j{{"id", n.id}, {"label", n.label}, {"sdg", n.sdg_tags}, {"children", json::array()}};
  for (const auto& c : n.children) j["children"].push_back(node_json(c));
  return j;
}

// Internal nodes in goal-first, depth-first order.
void inner_nodes(const std::vector<CriterionNode>& nodes, std::vector<std::string>& out) {
  for (const auto& n : nodes) {
    if (n.is_leaf()) continue;
    out.push_back(n.id);
    inner_nodes(n.children, out);
  }
}

} // namespace

std::string export_csv(const DecisionResult& result) {
  std::string out = "alternative";
  for (const auto& c : result.top_level_ids) out += "," + c;
  out += ",global\n";
  for (std::size_t a = 0; a < result.alternative_ids.size(); ++a) {
    out += result.alternative_ids[a];
    for (const auto& c : result.top_level_ids) out += "," + six(result.criterion_scores.at(c)[a]);
    out += "," + six(result.global_scores[a]) + "\n";
  }
  return out;
}

std::string export_csv(const SensitivityReport& report) {
  std::string out = "scenario,boosted_node,factor,alternative,score,rank\n";
  for (const auto& s : report.scenarios) {
    for (std::size_t a = 0; a < report.alternative_ids.size(); ++a) {
      const auto& id = report.alternative_ids[a];
      const auto& order = s.ranking.order;
      const auto rank = std::find(order.begin(), order.end(), id) - order.begin() + 1;
      out += fmt::format("{},{},{},{},{},{}\n", s.scenario.name, s.scenario.boosted_node.value_or(""),
                         six(s.scenario.factor), id, six(s.global_scores[a]), rank);
    }
  }
  return out;
}

std::string render_report(const Hierarchy& h, const DecisionResult& result, const SensitivityReport* sensitivity,
                          const std::map<std::string, ConsistencyReport>& consistency) {
  std::string md = fmt::format("# {}\n\n", h.goal.empty() ? "Decision report" : h.goal);

  md += "## Criterion weights\n\n";
  std::vector<std::string> nodes{h.goal_id};
  inner_nodes(h.criteria, nodes);
  for (const auto& id : nodes) {
    const auto it = result.local_weights.find(id);
    if (it == result.local_weights.end()) continue;
    md += fmt::format("### {} ({})\n\n| Criterion | Label | Local weight | Global weight |\n|---|---|---:|---:|\n",
                      label_of(h, id), id);
    for (std::size_t k = 0; k < it->second.size(); ++k) {
      const auto& child = it->second.item_ids[k];
      double global = 0.0;
      if (auto g = result.leaf_global_weights.find(child); g != result.leaf_global_weights.end()) {
        global = g->second;
      } else {
        // Inner node: global weight is the sum over its leaves.
        for (const auto* leaf : h.leaves()) {
          std::string p = leaf->id;
          while (!p.empty() && p != child && p != h.goal_id) p = h.parent_of(p);
          if (p == child) global += result.leaf_global_weights.at(leaf->id);
        }
      }
      md += fmt::format("| {} | {} | {:.3f} | {:.4f} |\n", child, label_of(h, child), it->second.values[k], global);
    }
    md += "\n";
  }

  md += "## Alternative scores by criterion\n\n| Alternative |";
  for (const auto& c : result.top_level_ids) md += fmt::format(" {} |", c);
  md += " Global |\n|---|";
  for (std::size_t k = 0; k <= result.top_level_ids.size(); ++k) md += "---:|";
  md += "\n";
  for (std::size_t a = 0; a < result.alternative_ids.size(); ++a) {
    md += fmt::format("| {} ({}) |", label_of(h, result.alternative_ids[a]), result.alternative_ids[a]);
    for (const auto& c : result.top_level_ids) md += fmt::format(" {:.3f} |", result.criterion_scores.at(c)[a]);
    md += fmt::format(" {:.3f} |\n", result.global_scores[a]);
  }

  md += "\n## Final ranking\n\n";
  for (std::size_t k = 0; k < result.ranking.order.size(); ++k) {
    const auto& id = result.ranking.order[k];
    md += fmt::format("{}. {} ({}): {:.4f}\n", k + 1, label_of(h, id), id, result.score(id));
  }
  std::vector<std::string> labels;
  for (const auto& id : result.ranking.order) labels.push_back(label_of(h, id));
  md += fmt::format("\nFinal order: {}\n", fmt::join(labels, ", "));
  for (const auto& t : result.ranking.ties) md += fmt::format("\nTied: {}\n", fmt::join(t, ", "));

  if (sensitivity) {
    md += "\n## Sensitivity analysis\n\n| Scenario | Boosted | Factor | Ranking |";
    for (const auto& a : sensitivity->alternative_ids) md += fmt::format(" {} |", a);
    md += "\n|---|---|---:|---|";
    for (std::size_t k = 0; k < sensitivity->alternative_ids.size(); ++k) md += "---:|";
    md += "\n";
    for (const auto& s : sensitivity->scenarios) {
      md += fmt::format("| {} | {} | {:.2f} | {} |", s.scenario.name, s.scenario.boosted_node.value_or("-"),
                        s.scenario.factor, fmt::join(s.ranking.order, " > "));
      for (double v : s.global_scores) md += fmt::format(" {:.4f} |", v);
      md += "\n";
    }
    if (sensitivity->flips.empty()) {
      md += "\nNo rank changes relative to the baseline.\n";
    } else {
      md += "\nRank changes relative to the baseline:\n\n";
      for (const auto& f : sensitivity->flips)
        md += fmt::format("- {}: {} now ranks above {}\n", f.scenario, f.now_higher, f.baseline_higher);
    }
  }

  md += "\n## Consistency annex\n\n| Node | Order | lambda_max | CI | RI | CR | Verdict |\n|---|---:|---:|---:|---:|---:|---|\n";
  std::vector<std::string> failing;
  for (const auto& [id, r] : consistency) {
    md += fmt::format("| {} | {} | {:.4f} | {:.4f} | {:.2f} | {:.4f} | {} |\n", id, r.order, r.lambda_max, r.ci, r.ri,
                      r.cr, r.acceptable ? "acceptable" : "REVISE");
    if (!r.acceptable) failing.push_back(id);
  }
  for (const auto& id : failing) {
    const auto& r = consistency.at(id);
    const auto ids = h.compared_ids(id);
    md += fmt::format("\n**{}** exceeds the CR threshold {} (CR = {:.4f}). Suggested revisions:\n\n", id, r.threshold, r.cr);
    const std::size_t shown = std::min<std::size_t>(3, r.worst_entries.size());
    for (std::size_t k = 0; k < shown; ++k) {
      const auto& c = r.worst_entries[k];
      md += fmt::format("- ({}, {}): suggest score {}\n", ids[c.i], ids[c.j], c.suggested_score);
    }
  }
  return md;
}

json to_json(const WeightVector& w) {
  json j{{"node", w.node_id}, {"method", to_string(w.method)}, {"weights", json::array()}};
  for (std::size_t k = 0; k < w.size(); ++k) j["weights"].push_back({{"id", w.item_ids[k]}, {"weight", w.values[k]}});
  return j;
}

json to_json(const std::map<std::string, WeightVector>& local) {
  json j = json::object();
  for (const auto& [id, w] : local) j[id] = to_json(w);
  return j;
}

json to_json(const DecisionResult& result) {
  json scores = json::object();
  for (std::size_t a = 0; a < result.alternative_ids.size(); ++a) scores[result.alternative_ids[a]] = result.global_scores[a];
  json by_criterion = json::object();
  for (const auto& c : result.top_level_ids) {
    json row = json::object();
    for (std::size_t a = 0; a < result.alternative_ids.size(); ++a)
      row[result.alternative_ids[a]] = result.criterion_scores.at(c)[a];
    by_criterion[c] = std::move(row);
  }
  return {{"ranking", result.ranking.order},
          {"ties", result.ranking.ties},
          {"scores", std::move(scores)},
          {"criterion_scores", std::move(by_criterion)},
          {"leaf_global_weights", result.leaf_global_weights},
          {"local_weights", to_json(result.local_weights)}};
}

json to_json(const SensitivityReport& report) {
  json scenarios = json::array();
  for (const auto& s : report.scenarios) {
    json scores = json::object();
    for (std::size_t a = 0; a < report.alternative_ids.size(); ++a) scores[report.alternative_ids[a]] = s.global_scores[a];
    scenarios.push_back({{"name", s.scenario.name},
                         {"boosted_node", s.scenario.boosted_node ? json(*s.scenario.boosted_node) : json(nullptr)},
                         {"factor", s.scenario.factor},
                         {"adjusted_weights", to_json(s.adjusted_weights)},
                         {"scores", std::move(scores)},
                         {"ranking", s.ranking.order}});
  }
  json stability = json::object();
  for (const auto& [id, ranks] : report.stability) stability[id] = ranks;
  json flips = json::array();
  for (const auto& f : report.flips)
    flips.push_back({{"scenario", f.scenario}, {"baseline_higher", f.baseline_higher}, {"now_higher", f.now_higher}});
  return {{"scenarios", std::move(scenarios)}, {"stability", std::move(stability)}, {"flips", std::move(flips)}};
}

json to_json(const ConsistencyReport& report, const std::vector<std::string>& item_ids) {
  json worst = json::array();
  for (const auto& c : report.worst_entries) {
    json e{{"i", item_ids.at(c.i)}, {"j", item_ids.at(c.j)}, {"magnitude", c.magnitude}, {"suggested_score", c.suggested_score}};
    const int s = c.suggested_score;
    e["suggested_term"] = std::string(linguistic_label(PreciseScore(s < 0 ? -s : s)));
    worst.push_back(std::move(e));
  }
  return {{"order", report.order}, {"lambda_max", report.lambda_max}, {"ci", report.ci},
          {"ri", report.ri},       {"cr", report.cr},                 {"threshold", report.threshold},
          {"acceptable", report.acceptable}, {"worst_entries", std::move(worst)}};
}

json to_json(const ValidationReport& report) {
  json v = json::array();
  for (const auto& x : report.violations) v.push_back({{"kind", to_string(x.kind)}, {"node", x.node_id}, {"message", x.message}});
  return {{"valid", report.ok()}, {"violations", std::move(v)}};
}

json model_json(const ProjectFile& project) {
  json criteria = json::array();
  for (const auto& c : project.criteria) criteria.push_back(node_json(c));
  json alternatives = json::array();
  for (const auto& a : project.alternatives) alternatives.push_back({{"id", a.id}, {"label", a.label}});
  json scale = json::array();
  for (const auto& e : importance_scale()) {
    const Tfn t{e.tfn[0], e.tfn[1], e.tfn[2]};
    const Tfn r = tfn_reciprocal(t);
    scale.push_back({{"score", e.score},
                     {"label", e.label},
                     {"tfn", {t.lower(), t.middle(), t.upper()}},
                     {"reciprocal", {r.lower(), r.middle(), r.upper()}}});
  }
  // Current judgments in their stored form.
  const json saved = json::parse(save_project(project));
  return {{"goal", project.goal},
          {"goal_id", Hierarchy{}.goal_id},
          {"criteria", std::move(criteria)},
          {"alternatives", std::move(alternatives)},
          {"judgments", saved["judgments"]},
          {"direct_weights", saved["direct_weights"]},
          {"settings", saved["settings"]},
          {"scale", std::move(scale)}};
}

} // namespace fahp
