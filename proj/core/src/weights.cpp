#include "fahp/weights.hpp"

#include "fahp/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace fahp {

namespace {

void normalize(std::vector<double>& v) {
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= sum;
}

} // namespace

std::string_view to_string(DerivationMethod method) {
  return method == DerivationMethod::GmMiddle ? "gm-middle" : "buckley";
}

DerivationMethod parse_derivation_method(std::string_view text) {
  if (text == "gm-middle") return DerivationMethod::GmMiddle;
  if (text == "buckley") return DerivationMethod::BuckleyCentroid;
  throw DomainError("unknown derivation method '" + std::string(text) + "' (expected gm-middle or buckley)");
}

double WeightVector::at(std::string_view item_id) const {
  for (std::size_t k = 0; k < item_ids.size(); ++k)
    if (item_ids[k] == item_id) return values[k];
  throw ShapeError("weight vector for '" + node_id + "' has no item '" + std::string(item_id) + "'");
}

std::vector<double> row_geometric_mean(const CrispMatrix& matrix) {
  const std::size_t n = matrix.order();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) log_sum += std::log(matrix.at(i, j));
    w[i] = std::exp(log_sum / static_cast<double>(n));
  }
  normalize(w);
  return w;
}

WeightVector derive_gm(const FuzzyComparisonMatrix& matrix, DefuzzMethod defuzz, std::string node_id) {
  return {std::move(node_id), DerivationMethod::GmMiddle, matrix.item_ids(),
          row_geometric_mean(crispify(matrix, defuzz))};
}

WeightVector derive_gm_middle(const FuzzyComparisonMatrix& matrix, std::string node_id) {
  return derive_gm(matrix, DefuzzMethod::Middle, std::move(node_id));
}

WeightVector derive_buckley(const FuzzyComparisonMatrix& matrix, std::string node_id) {
  const std::size_t n = matrix.order();
  std::vector<Tfn> row_means;
  row_means.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Tfn prod = matrix.at(i, 0);
    for (std::size_t j = 1; j < n; ++j) prod = tfn_product(prod, matrix.at(i, j));
    row_means.push_back(tfn_nth_root(prod, static_cast<unsigned>(n)));
  }
  double sl = 0, sm = 0, su = 0;
  for (const auto& r : row_means) {
    sl += r.lower();
    sm += r.middle();
    su += r.upper();
  }
  // r_i (x) (sum r)^-1: the reciprocal of the sum swaps its bounds.
  const Tfn inv_total{1.0 / su, 1.0 / sm, 1.0 / sl};
  std::vector<double> w;
  w.reserve(n);
  for (const auto& r : row_means) w.push_back(defuzzify(tfn_product(r, inv_total), DefuzzMethod::Centroid));
  normalize(w);
  return {std::move(node_id), DerivationMethod::BuckleyCentroid, matrix.item_ids(), std::move(w)};
}

WeightVector derive_weights(const FuzzyComparisonMatrix& matrix, DerivationMethod method, DefuzzMethod defuzz,
                            std::string node_id) {
  if (method == DerivationMethod::BuckleyCentroid) return derive_buckley(matrix, std::move(node_id));
  return derive_gm(matrix, defuzz, std::move(node_id));
}

} // namespace fahp
