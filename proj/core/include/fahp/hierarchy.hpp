#pragma once

#include "fahp/consistency.hpp"
#include "fahp/weights.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fahp {

struct CriterionNode {
  std::string id;
  std::string label;
  std::vector<std::string> sdg_tags;
  std::vector<CriterionNode> children;

  bool is_leaf() const noexcept { return children.empty(); }
};

struct Alternative {
  std::string id;
  std::string label;
};

/// Goal -> criteria (any depth) -> alternatives.
///
/// `matrices` is keyed by the node whose children are compared: the goal id
/// for the top-level criteria, a criterion id for its sub-criteria, and a leaf
/// id for the alternatives. A leaf carries either a matrix or a direct weight
/// vector over the alternatives, never both.
struct Hierarchy {
  std::string goal_id = "goal";
  std::string goal;
  std::vector<CriterionNode> criteria;
  std::vector<Alternative> alternatives;
  std::map<std::string, FuzzyComparisonMatrix> matrices;
  std::map<std::string, std::vector<double>> direct_weights;

  const CriterionNode* find(std::string_view id) const;
  /// Ids compared under `node_id`: top-level criteria for the goal,
  /// children for an inner criterion, alternatives for a leaf.
  std::vector<std::string> compared_ids(std::string_view node_id) const;
  std::vector<const CriterionNode*> leaves() const;
  std::vector<std::string> alternative_ids() const;
  /// Parent id of a criterion (the goal id for top-level ones); empty if unknown.
  std::string parent_of(std::string_view id) const;
  bool has_node(std::string_view id) const { return id == goal_id || find(id) != nullptr; }
};

struct Violation {
  enum class Kind {
    DuplicateId,
    EmptyLevel,
    MissingJudgment,
    ConflictingJudgment,
    MatrixMismatch,
    UnknownNode,
    BadDirectWeights,
  };
  Kind kind;
  std::string node_id;
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Never throws; every structural problem is listed.
ValidationReport validate_hierarchy(const Hierarchy& h);

struct LocalWeightOptions {
  DerivationMethod method = DerivationMethod::GmMiddle;
  DefuzzMethod defuzz = DefuzzMethod::Middle;
  double cr_threshold = kDefaultCrThreshold;
  /// Compute weights even when a matrix fails the CR gate.
  bool allow_inconsistent = false;
};

/// Consistency report per node that carries a matrix, computed on the
/// crispified matrix with its row-geometric-mean weights.
std::map<std::string, ConsistencyReport> assess_consistency(const Hierarchy& h, DefuzzMethod defuzz,
                                                            double threshold = kDefaultCrThreshold);

ConsistencyReport assess_matrix(const FuzzyComparisonMatrix& m, DefuzzMethod defuzz,
                                double threshold = kDefaultCrThreshold);

/// One weight vector per internal node and per leaf. Direct leaf vectors are
/// renormalized to sum exactly 1 (published vectors carry rounding).
/// Throws ValidationError for an invalid hierarchy and ConsistencyError
/// naming the first failing node unless `allow_inconsistent`.
std::map<std::string, WeightVector> compute_local_weights(const Hierarchy& h, const LocalWeightOptions& options = {});

struct Ranking {
  std::vector<std::string> order;
  /// Groups of two or more alternatives whose scores differ by < 1e-9.
  std::vector<std::vector<std::string>> ties;
};

struct DecisionResult {
  std::map<std::string, WeightVector> local_weights;
  std::vector<std::string> alternative_ids;
  std::vector<std::string> top_level_ids;
  /// Aligned with alternative_ids.
  std::vector<double> global_scores;
  /// Product of local weights from the goal down to each leaf.
  std::map<std::string, double> leaf_global_weights;
  /// Per top-level criterion, alternative scores within that criterion
  /// (aligned with alternative_ids).
  std::map<std::string, std::vector<double>> criterion_scores;
  Ranking ranking;

  double score(std::string_view alternative_id) const;
};

DecisionResult score_alternatives(const Hierarchy& h, const std::map<std::string, WeightVector>& local);

/// Descending by score; near-equal scores (< 1e-9 apart) form a tie group
/// ordered by id ascending.
Ranking rank_alternatives(const DecisionResult& result);
Ranking rank_scores(const std::vector<std::string>& ids, const std::vector<double>& scores);

} // namespace fahp
