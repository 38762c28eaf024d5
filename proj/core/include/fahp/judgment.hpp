#pragma once

#include "fahp/fuzzy.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fahp {

inline constexpr std::size_t kMaxMatrixOrder = 15;

/// One answered pair. A negative score means item j dominates item i.
struct PairJudgment {
  std::size_t i = 0;
  std::size_t j = 0;
  int score = 1;

  friend bool operator==(const PairJudgment&, const PairJudgment&) = default;
};

struct ExpertJudgmentSet {
  std::string expert_id;
  std::string node_id;
  std::vector<PairJudgment> upper_triangle;
};

/// Reciprocal n x n matrix of TFNs, 2 <= n <= 15, diagonal (1,1,1).
class FuzzyComparisonMatrix {
public:
  /// Validates the full grid (row-major, n*n entries): diagonal and
  /// reciprocity within 1e-9 componentwise.
  FuzzyComparisonMatrix(std::vector<std::string> item_ids, std::vector<Tfn> entries);

  /// Builds the lower triangle from exact reciprocals of `upper`, given
  /// row-major over i < j (n(n-1)/2 entries).
  static FuzzyComparisonMatrix from_upper(std::vector<std::string> item_ids, std::span<const Tfn> upper);

  std::size_t order() const noexcept { return item_ids_.size(); }
  const std::vector<std::string>& item_ids() const noexcept { return item_ids_; }
  const Tfn& at(std::size_t i, std::size_t j) const { return entries_[i * order() + j]; }

  /// Upper triangle, row-major over i < j.
  std::vector<Tfn> upper() const;

  /// Same matrix with items reordered: result item k is source item perm[k].
  FuzzyComparisonMatrix permuted(std::span<const std::size_t> perm) const;

private:
  FuzzyComparisonMatrix() = default;

  std::vector<std::string> item_ids_;
  std::vector<Tfn> entries_;
};

/// Crisp reciprocal matrix of positive reals with unit diagonal.
class CrispMatrix {
public:
  /// Validates diagonal == 1 and reciprocity within 1e-9.
  CrispMatrix(std::size_t order, std::vector<double> entries);

  /// Lower triangle from exact reciprocals of `upper` (row-major over i < j).
  static CrispMatrix from_upper(std::size_t order, std::span<const double> upper);

  std::size_t order() const noexcept { return order_; }
  double at(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  CrispMatrix permuted(std::span<const std::size_t> perm) const;

private:
  std::size_t order_;
  std::vector<double> entries_;
};

/// Normalizes pair direction (i < j), rejects duplicates and gaps.
/// Throws IncompleteMatrixError listing every missing pair, DuplicatePairError,
/// DomainError for bad scores or self-pairs, ShapeError for out-of-range indices.
FuzzyComparisonMatrix matrix_from_scores(const std::vector<std::string>& item_ids,
                                         const ExpertJudgmentSet& judgments);

/// Pairs (i < j) that `judgments` leaves unanswered for `order` items.
std::vector<std::pair<std::size_t, std::size_t>> missing_pairs(std::size_t order,
                                                               std::span<const PairJudgment> judgments);

/// Componentwise geometric mean over experts, reciprocity rebuilt from the
/// aggregated upper triangle.
FuzzyComparisonMatrix aggregate_experts(std::span<const FuzzyComparisonMatrix> matrices);

CrispMatrix crispify(const FuzzyComparisonMatrix& matrix, DefuzzMethod method);

/// Reads the upper triangle back as signed scale scores; nullopt if any
/// entry is off the scale.
std::optional<std::vector<PairJudgment>> scores_from_matrix(const FuzzyComparisonMatrix& matrix);

} // namespace fahp
