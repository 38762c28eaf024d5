#include "fahp/judgment.hpp"

#include "fahp/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <utility>

namespace fahp {

namespace {

constexpr double kReciprocityTol = 1e-9;

void check_order(std::size_t n) {
  if (n < 2 || n > kMaxMatrixOrder)
    throw ShapeError(fmt::format("comparison matrix order must be in 2..{}, got {}", kMaxMatrixOrder, n));
}

std::size_t upper_size(std::size_t n) { return n * (n - 1) / 2; }

bool near(double a, double b) { return std::abs(a - b) <= kReciprocityTol * std::max(1.0, std::abs(b)); }

} // namespace

FuzzyComparisonMatrix::FuzzyComparisonMatrix(std::vector<std::string> item_ids, std::vector<Tfn> entries)
    : item_ids_(std::move(item_ids)), entries_(std::move(entries)) {
  const std::size_t n = item_ids_.size();
  check_order(n);
  if (entries_.size() != n * n)
    throw ShapeError(fmt::format("expected {} entries for order {}, got {}", n * n, n, entries_.size()));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(at(i, i) == Tfn{1, 1, 1}))
      throw ValidationError(fmt::format("diagonal entry ({0},{0}) must be (1,1,1)", i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const Tfn expect = tfn_reciprocal(at(i, j));
      const Tfn& got = at(j, i);
      if (!near(got.lower(), expect.lower()) || !near(got.middle(), expect.middle()) ||
          !near(got.upper(), expect.upper()))
        throw ValidationError(
            fmt::format("entry ({},{}) is not the reciprocal of ({},{})", j, i, i, j));
    }
  }
}

FuzzyComparisonMatrix FuzzyComparisonMatrix::from_upper(std::vector<std::string> item_ids,
                                                        std::span<const Tfn> upper) {
  const std::size_t n = item_ids.size();
  check_order(n);
  if (upper.size() != upper_size(n))
    throw ShapeError(fmt::format("expected {} upper-triangle entries for order {}, got {}", upper_size(n), n,
                                 upper.size()));
  FuzzyComparisonMatrix m;
  m.item_ids_ = std::move(item_ids);
  m.entries_.assign(n * n, Tfn{1, 1, 1});
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      m.entries_[i * n + j] = upper[k];
      m.entries_[j * n + i] = tfn_reciprocal(upper[k]);
    }
  }
  return m;
}

std::vector<Tfn> FuzzyComparisonMatrix::upper() const {
  std::vector<Tfn> out;
  out.reserve(upper_size(order()));
  for (std::size_t i = 0; i < order(); ++i)
    for (std::size_t j = i + 1; j < order(); ++j) out.push_back(at(i, j));
  return out;
}

FuzzyComparisonMatrix FuzzyComparisonMatrix::permuted(std::span<const std::size_t> perm) const {
  const std::size_t n = order();
  if (perm.size() != n) throw ShapeError("permutation length does not match matrix order");
  FuzzyComparisonMatrix m;
  m.item_ids_.reserve(n);
  for (std::size_t k : perm) m.item_ids_.push_back(item_ids_.at(k));
  m.entries_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.entries_[i * n + j] = at(perm[i], perm[j]);
  return m;
}

CrispMatrix::CrispMatrix(std::size_t order, std::vector<double> entries)
    : order_(order), entries_(std::move(entries)) {
  if (order_ < 1 || order_ > kMaxMatrixOrder)
    throw ShapeError(fmt::format("crisp matrix order must be in 1..{}, got {}", kMaxMatrixOrder, order_));
  if (entries_.size() != order_ * order_)
    throw ShapeError(fmt::format("expected {} entries for order {}, got {}", order_ * order_, order_,
                                 entries_.size()));
  for (std::size_t i = 0; i < order_; ++i) {
    if (at(i, i) != 1.0) throw ValidationError(fmt::format("diagonal entry ({0},{0}) must be 1", i));
    for (std::size_t j = 0; j < order_; ++j) {
      if (!(at(i, j) > 0.0) || !std::isfinite(at(i, j)))
        throw ValidationError(fmt::format("entry ({},{}) must be a positive finite number", i, j));
      if (j > i && !near(at(j, i), 1.0 / at(i, j)))
        throw ValidationError(fmt::format("entry ({},{}) is not the reciprocal of ({},{})", j, i, i, j));
    }
  }
}

CrispMatrix CrispMatrix::from_upper(std::size_t order, std::span<const double> upper) {
  if (upper.size() != upper_size(order))
    throw ShapeError(fmt::format("expected {} upper-triangle entries for order {}, got {}", upper_size(order),
                                 order, upper.size()));
  std::vector<double> e(order * order, 1.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i + 1; j < order; ++j, ++k) {
      e[i * order + j] = upper[k];
      e[j * order + i] = 1.0 / upper[k];
    }
  }
  return CrispMatrix(order, std::move(e));
}

CrispMatrix CrispMatrix::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != order_) throw ShapeError("permutation length does not match matrix order");
  std::vector<double> e(order_ * order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) e[i * order_ + j] = at(perm[i], perm[j]);
  return CrispMatrix(order_, std::move(e));
}

std::vector<std::pair<std::size_t, std::size_t>> missing_pairs(std::size_t order,
                                                               std::span<const PairJudgment> judgments) {
  std::vector<bool> seen(order * order, false);
  for (const auto& p : judgments) {
    if (p.i >= order || p.j >= order || p.i == p.j) continue;
    const auto [a, b] = std::minmax(p.i, p.j);
    seen[a * order + b] = true;
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = i + 1; j < order; ++j)
      if (!seen[i * order + j]) out.emplace_back(i, j);
  return out;
}

FuzzyComparisonMatrix matrix_from_scores(const std::vector<std::string>& item_ids,
                                         const ExpertJudgmentSet& judgments) {
  const std::size_t n = item_ids.size();
  check_order(n);
  std::vector<std::optional<Tfn>> upper(n * n);
  for (const auto& p : judgments.upper_triangle) {
    if (p.i >= n || p.j >= n)
      throw ShapeError(fmt::format("pair ({},{}) out of range for {} items", p.i, p.j, n));
    if (p.i == p.j) throw DomainError(fmt::format("self-comparison ({0},{0}) is not allowed", p.i));
    if (p.score == 0 || p.score > 9 || p.score < -9)
      throw DomainError(fmt::format("score {} for pair ({},{}) is outside -9..-1, 1..9", p.score, item_ids[p.i],
                                    item_ids[p.j]));
    const bool flip = p.i > p.j;
    const std::size_t a = flip ? p.j : p.i;
    const std::size_t b = flip ? p.i : p.j;
    auto& slot = upper[a * n + b];
    if (slot)
      throw DuplicatePairError(fmt::format("pair ({}, {}) is judged more than once", item_ids[a], item_ids[b]));
    slot = signed_scale_lookup(flip ? -p.score : p.score);
  }
  const auto missing = missing_pairs(n, judgments.upper_triangle);
  if (!missing.empty()) {
    std::string names;
    for (const auto& [i, j] : missing) {
      if (!names.empty()) names += ", ";
      names += fmt::format("({}, {})", item_ids[i], item_ids[j]);
    }
    throw IncompleteMatrixError(fmt::format("incomplete judgments for node '{}': missing {}", judgments.node_id, names),
                                missing);
  }
  std::vector<Tfn> flat;
  flat.reserve(upper_size(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) flat.push_back(*upper[i * n + j]);
  return FuzzyComparisonMatrix::from_upper(item_ids, flat);
}

FuzzyComparisonMatrix aggregate_experts(std::span<const FuzzyComparisonMatrix> matrices) {
  if (matrices.empty()) throw ShapeError("aggregation needs at least one matrix");
  const auto& ids = matrices.front().item_ids();
  for (const auto& m : matrices)
    if (m.item_ids() != ids) throw ShapeError("expert matrices disagree on order or item ids");

  const std::size_t n = ids.size();
  const double inv_k = 1.0 / static_cast<double>(matrices.size());
  std::vector<Tfn> upper;
  upper.reserve(upper_size(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Sum of logs keeps the mean independent of argument order up to rounding.
      double sl = 0, sm = 0, su = 0;
      for (const auto& m : matrices) {
        sl += std::log(m.at(i, j).lower());
        sm += std::log(m.at(i, j).middle());
        su += std::log(m.at(i, j).upper());
      }
      upper.emplace_back(std::exp(sl * inv_k), std::exp(sm * inv_k), std::exp(su * inv_k));
    }
  }
  return FuzzyComparisonMatrix::from_upper(ids, upper);
}

CrispMatrix crispify(const FuzzyComparisonMatrix& matrix, DefuzzMethod method) {
  std::vector<double> upper;
  upper.reserve(upper_size(matrix.order()));
  for (const auto& t : matrix.upper()) upper.push_back(defuzzify(t, method));
  return CrispMatrix::from_upper(matrix.order(), upper);
}

std::optional<std::vector<PairJudgment>> scores_from_matrix(const FuzzyComparisonMatrix& matrix) {
  std::vector<PairJudgment> out;
  for (std::size_t i = 0; i < matrix.order(); ++i) {
    for (std::size_t j = i + 1; j < matrix.order(); ++j) {
      int s = inverse_scale_lookup(matrix.at(i, j));
      if (s == 0) return std::nullopt;
      if (s == -1) s = 1;
      out.push_back({i, j, s});
    }
  }
  return out;
}

} // namespace fahp
