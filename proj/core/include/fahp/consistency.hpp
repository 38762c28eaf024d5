#pragma once

#include "fahp/judgment.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fahp {

inline constexpr double kDefaultCrThreshold = 0.1;

struct InconsistentCell {
  std::size_t i = 0;
  std::size_t j = 0;
  /// |log(a_ij * w_j / w_i)|
  double magnitude = 0.0;
  /// Scale score closest to w_i / w_j (negative: j dominates i).
  int suggested_score = 1;
};

struct ConsistencyReport {
  std::size_t order = 0;
  double lambda_max = 0.0;
  double ci = 0.0;
  double ri = 0.0;
  double cr = 0.0;
  double threshold = kDefaultCrThreshold;
  bool acceptable = true;
  /// Upper-triangle cells, worst first.
  std::vector<InconsistentCell> worst_entries;
};

/// Mean over rows of (A w)_i / w_i. `weights` must be positive and sum to 1.
double lambda_max_estimate(const CrispMatrix& matrix, std::span<const double> weights);

/// Random index for matrices of the given order (1..15).
///
/// Order 13 returns 1.56. Some reprints of the table carry 2.56 there, which
/// breaks the otherwise monotone sequence 1.54, ?, 1.58.
double random_index(std::size_t order);

ConsistencyReport consistency_ratio(const CrispMatrix& matrix, std::span<const double> weights,
                                    double threshold = kDefaultCrThreshold);

/// Top-k cells by inconsistency magnitude; cells below 1e-9 are omitted.
/// Equal magnitudes (to 1e-9) are ordered by (i, j) ascending.
std::vector<InconsistentCell> locate_inconsistency(const CrispMatrix& matrix, std::span<const double> weights,
                                                   std::size_t k);

/// Nearest signed scale score to a positive ratio.
int nearest_scale_score(double ratio);

} // namespace fahp
