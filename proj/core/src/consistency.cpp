#include "fahp/consistency.hpp"

#include "fahp/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace fahp {

namespace {

constexpr std::array<double, 15> kRandomIndex{0.0,  0.0,  0.52, 0.89, 1.11, 1.25, 1.35, 1.40,
                                              1.45, 1.49, 1.52, 1.54, 1.56, 1.58, 1.59};

void check_weights(const CrispMatrix& matrix, std::span<const double> weights) {
  if (weights.size() != matrix.order())
    throw ShapeError(fmt::format("weight vector has {} entries, matrix order is {}", weights.size(), matrix.order()));
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw DomainError("weights must be strictly positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DomainError(fmt::format("weights must sum to 1, got {}", sum));
}

std::vector<InconsistentCell> rank_cells(const CrispMatrix& a, std::span<const double> w) {
  std::vector<InconsistentCell> cells;
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = i + 1; j < a.order(); ++j) {
      const double mag = std::abs(std::log(a.at(i, j) * w[j] / w[i]));
      if (mag < 1e-9) continue;
      cells.push_back({i, j, mag, nearest_scale_score(w[i] / w[j])});
    }
  }
  // Quantize so that mathematically equal magnitudes tie deterministically.
  auto key = [](const InconsistentCell& c) { return std::llround(c.magnitude * 1e9); };
  std::sort(cells.begin(), cells.end(), [&](const InconsistentCell& x, const InconsistentCell& y) {
    const auto kx = key(x), ky = key(y);
    if (kx != ky) return kx > ky;
    return std::pair(x.i, x.j) < std::pair(y.i, y.j);
  });
  return cells;
}

} // namespace

int nearest_scale_score(double ratio) {
  if (!(ratio > 0.0)) throw DomainError("ratio must be positive");
  if (ratio >= 1.0) return static_cast<int>(std::clamp(std::lround(ratio), 1L, 9L));
  const int s = static_cast<int>(std::clamp(std::lround(1.0 / ratio), 1L, 9L));
  return s == 1 ? 1 : -s;
}

double lambda_max_estimate(const CrispMatrix& matrix, std::span<const double> weights) {
  check_weights(matrix, weights);
  const std::size_t n = matrix.order();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += matrix.at(i, j) * weights[j];
    total += row / weights[i];
  }
  return total / static_cast<double>(n);
}

double random_index(std::size_t order) {
  if (order < 1 || order > kRandomIndex.size())
    throw DomainError(fmt::format("random index is defined for orders 1..15, got {}", order));
  return kRandomIndex[order - 1];
}

ConsistencyReport consistency_ratio(const CrispMatrix& matrix, std::span<const double> weights, double threshold) {
  if (!(threshold > 0.0)) throw DomainError("consistency threshold must be positive");
  const std::size_t n = matrix.order();
  ConsistencyReport r;
  r.order = n;
  r.threshold = threshold;
  r.ri = random_index(n);
  if (n == 1) {
    check_weights(matrix, weights);
    r.lambda_max = 1.0;
    r.acceptable = 0.0 < threshold;
    return r;
  }
  r.lambda_max = lambda_max_estimate(matrix, weights);
  r.ci = (r.lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
  r.cr = r.ri > 0.0 ? r.ci / r.ri : 0.0;
  r.acceptable = r.cr < threshold;
  r.worst_entries = rank_cells(matrix, weights);
  return r;
}

std::vector<InconsistentCell> locate_inconsistency(const CrispMatrix& matrix, std::span<const double> weights,
                                                   std::size_t k) {
  if (k == 0) throw DomainError("k must be at least 1");
  check_weights(matrix, weights);
  auto cells = rank_cells(matrix, weights);
  if (cells.size() > k) cells.resize(k);
  return cells;
}

} // namespace fahp
