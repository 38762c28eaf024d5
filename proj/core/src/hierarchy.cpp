#include "fahp/hierarchy.hpp"

#include "fahp/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <set>

namespace fahp {

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kDirectSumTol = 0.01;

const CriterionNode* find_in(const std::vector<CriterionNode>& nodes, std::string_view id) {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
    if (const auto* hit = find_in(n.children, id)) return hit;
  }
  return nullptr;
}

void collect_leaves(const std::vector<CriterionNode>& nodes, std::vector<const CriterionNode*>& out) {
  for (const auto& n : nodes) {
    if (n.is_leaf())
      out.push_back(&n);
    else
      collect_leaves(n.children, out);
  }
}

std::string parent_in(const std::vector<CriterionNode>& nodes, std::string_view id, const std::string& parent) {
  for (const auto& n : nodes) {
    if (n.id == id) return parent;
    if (auto p = parent_in(n.children, id, n.id); !p.empty()) return p;
  }
  return {};
}

std::vector<std::string> ids_of(const std::vector<CriterionNode>& nodes) {
  std::vector<std::string> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) out.push_back(n.id);
  return out;
}

void check_tree(const Hierarchy& h, const std::vector<CriterionNode>& nodes, std::set<std::string>& seen,
                ValidationReport& report) {
  const auto alt_ids = h.alternative_ids();
  for (const auto& n : nodes) {
    if (n.id.empty())
      report.violations.push_back({Violation::Kind::EmptyLevel, n.id, "criterion with an empty id"});
    else if (!seen.insert(n.id).second)
      report.violations.push_back({Violation::Kind::DuplicateId, n.id, fmt::format("duplicate node id '{}'", n.id)});

    const bool has_matrix = h.matrices.contains(n.id);
    const bool has_direct = h.direct_weights.contains(n.id);
    if (n.is_leaf()) {
      if (has_matrix && has_direct) {
        report.violations.push_back({Violation::Kind::ConflictingJudgment, n.id,
                                     fmt::format("leaf '{}' has both a matrix and direct weights", n.id)});
      } else if (!has_matrix && !has_direct && alt_ids.size() >= 2) {
        report.violations.push_back({Violation::Kind::MissingJudgment, n.id,
                                     fmt::format("leaf '{}' has neither a matrix nor direct weights", n.id)});
      }
      if (has_matrix && h.matrices.at(n.id).item_ids() != alt_ids)
        report.violations.push_back({Violation::Kind::MatrixMismatch, n.id,
                                     fmt::format("matrix of leaf '{}' does not compare the alternatives", n.id)});
      if (has_direct) {
        const auto& w = h.direct_weights.at(n.id);
        const double sum = std::accumulate(w.begin(), w.end(), 0.0);
        const bool positive = std::all_of(w.begin(), w.end(), [](double x) { return x > 0.0 && std::isfinite(x); });
        if (w.size() != alt_ids.size() || !positive || std::abs(sum - 1.0) > kDirectSumTol)
          report.violations.push_back(
              {Violation::Kind::BadDirectWeights, n.id,
               fmt::format("direct weights of '{}' need {} positive values summing to 1 (got {} summing to {:.6g})",
                           n.id, alt_ids.size(), w.size(), sum)});
      }
    } else {
      if (has_direct)
        report.violations.push_back({Violation::Kind::ConflictingJudgment, n.id,
                                     fmt::format("inner criterion '{}' cannot carry direct weights", n.id)});
      if (n.children.size() >= 2 && !has_matrix)
        report.violations.push_back({Violation::Kind::MissingJudgment, n.id,
                                     fmt::format("criterion '{}' has no matrix over its sub-criteria", n.id)});
      if (has_matrix && h.matrices.at(n.id).item_ids() != ids_of(n.children))
        report.violations.push_back({Violation::Kind::MatrixMismatch, n.id,
                                     fmt::format("matrix of '{}' does not compare its sub-criteria", n.id)});
      check_tree(h, n.children, seen, report);
    }
  }
}

} // namespace

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
  case Violation::Kind::DuplicateId: return "duplicate-id";
  case Violation::Kind::EmptyLevel: return "empty-level";
  case Violation::Kind::MissingJudgment: return "missing-judgment";
  case Violation::Kind::ConflictingJudgment: return "conflicting-judgment";
  case Violation::Kind::MatrixMismatch: return "matrix-mismatch";
  case Violation::Kind::UnknownNode: return "unknown-node";
  case Violation::Kind::BadDirectWeights: return "bad-direct-weights";
  }
  return "unknown";
}

const CriterionNode* Hierarchy::find(std::string_view id) const { return find_in(criteria, id); }

std::vector<std::string> Hierarchy::compared_ids(std::string_view node_id) const {
  if (node_id == goal_id) return ids_of(criteria);
  const auto* n = find(node_id);
  if (!n) throw ShapeError(fmt::format("unknown node '{}'", node_id));
  return n->is_leaf() ? alternative_ids() : ids_of(n->children);
}

std::vector<const CriterionNode*> Hierarchy::leaves() const {
  std::vector<const CriterionNode*> out;
  collect_leaves(criteria, out);
  return out;
}

std::vector<std::string> Hierarchy::alternative_ids() const {
  std::vector<std::string> out;
  out.reserve(alternatives.size());
  for (const auto& a : alternatives) out.push_back(a.id);
  return out;
}

std::string Hierarchy::parent_of(std::string_view id) const { return parent_in(criteria, id, goal_id); }

ValidationReport validate_hierarchy(const Hierarchy& h) {
  ValidationReport report;
  if (h.criteria.empty())
    report.violations.push_back({Violation::Kind::EmptyLevel, h.goal_id, "hierarchy has no criteria"});
  if (h.alternatives.size() < 2)
    report.violations.push_back({Violation::Kind::EmptyLevel, h.goal_id,
                                 fmt::format("need at least 2 alternatives, got {}", h.alternatives.size())});

  std::set<std::string> seen{h.goal_id};
  for (const auto& a : h.alternatives) {
    if (!seen.insert(a.id).second)
      report.violations.push_back({Violation::Kind::DuplicateId, a.id, fmt::format("duplicate node id '{}'", a.id)});
  }
  if (h.criteria.size() >= 2 && !h.matrices.contains(h.goal_id))
    report.violations.push_back({Violation::Kind::MissingJudgment, h.goal_id, "goal has no matrix over its criteria"});
  if (h.matrices.contains(h.goal_id) && h.matrices.at(h.goal_id).item_ids() != ids_of(h.criteria))
    report.violations.push_back(
        {Violation::Kind::MatrixMismatch, h.goal_id, "goal matrix does not compare the top-level criteria"});

  check_tree(h, h.criteria, seen, report);

  for (const auto& [id, m] : h.matrices) {
    (void)m;
    if (!h.has_node(id))
      report.violations.push_back({Violation::Kind::UnknownNode, id, fmt::format("matrix for unknown node '{}'", id)});
  }
  for (const auto& [id, w] : h.direct_weights) {
    (void)w;
    if (!h.has_node(id))
      report.violations.push_back(
          {Violation::Kind::UnknownNode, id, fmt::format("direct weights for unknown node '{}'", id)});
  }
  return report;
}

ConsistencyReport assess_matrix(const FuzzyComparisonMatrix& m, DefuzzMethod defuzz, double threshold) {
  const auto crisp = crispify(m, defuzz);
  return consistency_ratio(crisp, row_geometric_mean(crisp), threshold);
}

std::map<std::string, ConsistencyReport> assess_consistency(const Hierarchy& h, DefuzzMethod defuzz,
                                                            double threshold) {
  std::map<std::string, ConsistencyReport> out;
  for (const auto& [id, m] : h.matrices) out.emplace(id, assess_matrix(m, defuzz, threshold));
  return out;
}

std::map<std::string, WeightVector> compute_local_weights(const Hierarchy& h, const LocalWeightOptions& options) {
  if (const auto report = validate_hierarchy(h); !report.ok())
    throw ValidationError("invalid hierarchy: " + report.violations.front().message);

  std::map<std::string, WeightVector> out;
  auto weigh = [&](const std::string& node_id) {
    const auto ids = h.compared_ids(node_id);
    if (auto it = h.matrices.find(node_id); it != h.matrices.end()) {
      if (!options.allow_inconsistent) {
        const auto cr = assess_matrix(it->second, options.defuzz, options.cr_threshold);
        if (!cr.acceptable)
          throw ConsistencyError(fmt::format("matrix of node '{}' has CR {:.4f}, not below threshold {}", node_id,
                                             cr.cr, options.cr_threshold),
                                 node_id, cr.cr);
      }
      out.emplace(node_id, derive_weights(it->second, options.method, options.defuzz, node_id));
      return;
    }
    WeightVector wv{node_id, options.method, ids, {}};
    if (auto it = h.direct_weights.find(node_id); it != h.direct_weights.end()) {
      wv.values = it->second;
      const double sum = std::accumulate(wv.values.begin(), wv.values.end(), 0.0);
      for (double& v : wv.values) v /= sum;
    } else {
      wv.values.assign(ids.size(), 1.0 / static_cast<double>(ids.size()));
    }
    out.emplace(node_id, std::move(wv));
  };

  weigh(h.goal_id);
  auto walk = [&](auto&& self, const std::vector<CriterionNode>& nodes) -> void {
    for (const auto& n : nodes) {
      weigh(n.id);
      self(self, n.children);
    }
  };
  walk(walk, h.criteria);
  return out;
}

double DecisionResult::score(std::string_view alternative_id) const {
  for (std::size_t k = 0; k < alternative_ids.size(); ++k)
    if (alternative_ids[k] == alternative_id) return global_scores[k];
  throw ShapeError(fmt::format("unknown alternative '{}'", alternative_id));
}

DecisionResult score_alternatives(const Hierarchy& h, const std::map<std::string, WeightVector>& local) {
  DecisionResult r;
  r.local_weights = local;
  r.alternative_ids = h.alternative_ids();
  r.top_level_ids = ids_of(h.criteria);
  const std::size_t n_alt = r.alternative_ids.size();
  r.global_scores.assign(n_alt, 0.0);

  auto local_of = [&](const std::string& id) -> const WeightVector& {
    auto it = local.find(id);
    if (it == local.end()) throw ShapeError(fmt::format("no local weights for node '{}'", id));
    return it->second;
  };

  // within_top: product of local weights below the top-level criterion.
  auto walk = [&](auto&& self, const CriterionNode& node, double global, double within_top,
                  std::vector<double>& top_scores) -> void {
    if (node.is_leaf()) {
      r.leaf_global_weights[node.id] = global;
      const auto& alt = local_of(node.id);
      if (alt.item_ids != r.alternative_ids)
        throw ShapeError(fmt::format("local weights of leaf '{}' are not over the alternatives", node.id));
      for (std::size_t a = 0; a < n_alt; ++a) {
        r.global_scores[a] += global * alt.values[a];
        top_scores[a] += within_top * alt.values[a];
      }
      return;
    }
    const auto& w = local_of(node.id);
    for (const auto& child : node.children) {
      const double wc = w.at(child.id);
      self(self, child, global * wc, within_top * wc, top_scores);
    }
  };

  const auto& top = local_of(h.goal_id);
  for (const auto& c : h.criteria) {
    std::vector<double> top_scores(n_alt, 0.0);
    walk(walk, c, top.at(c.id), 1.0, top_scores);
    r.criterion_scores.emplace(c.id, std::move(top_scores));
  }
  r.ranking = rank_alternatives(r);
  return r;
}

Ranking rank_scores(const std::vector<std::string>& ids, const std::vector<double>& scores) {
  if (ids.size() != scores.size()) throw ShapeError("ids and scores differ in length");
  std::vector<std::size_t> idx(ids.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ids[a] < ids[b];
  });

  Ranking out;
  std::size_t start = 0;
  while (start < idx.size()) {
    std::size_t end = start + 1;
    while (end < idx.size() && scores[idx[end - 1]] - scores[idx[end]] < kTieTol) ++end;
    std::vector<std::string> group;
    for (std::size_t k = start; k < end; ++k) group.push_back(ids[idx[k]]);
    std::sort(group.begin(), group.end());
    out.order.insert(out.order.end(), group.begin(), group.end());
    if (group.size() > 1) out.ties.push_back(std::move(group));
    start = end;
  }
  return out;
}

Ranking rank_alternatives(const DecisionResult& result) {
  return rank_scores(result.alternative_ids, result.global_scores);
}

} // namespace fahp
