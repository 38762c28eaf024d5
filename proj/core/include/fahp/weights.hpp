#pragma once

#include "fahp/judgment.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fahp {

enum class DerivationMethod {
  GmMiddle,        ///< crispify, then normalized row geometric means
  BuckleyCentroid, ///< fuzzy row geometric means, fuzzy weights, centroid
};

std::string_view to_string(DerivationMethod method);
DerivationMethod parse_derivation_method(std::string_view text);

/// Normalized priorities over the items of one hierarchy node.
struct WeightVector {
  std::string node_id;
  DerivationMethod method = DerivationMethod::GmMiddle;
  std::vector<std::string> item_ids;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  /// Throws ShapeError if `item_id` is not present.
  double at(std::string_view item_id) const;
};

/// Row geometric means of a crisp matrix, normalized to sum 1.
std::vector<double> row_geometric_mean(const CrispMatrix& matrix);

/// Crispify with `defuzz` (Middle for the GmMiddle method proper) and take
/// normalized row geometric means.
WeightVector derive_gm(const FuzzyComparisonMatrix& matrix, DefuzzMethod defuzz, std::string node_id = {});

WeightVector derive_gm_middle(const FuzzyComparisonMatrix& matrix, std::string node_id = {});

WeightVector derive_buckley(const FuzzyComparisonMatrix& matrix, std::string node_id = {});

WeightVector derive_weights(const FuzzyComparisonMatrix& matrix, DerivationMethod method,
                            DefuzzMethod defuzz = DefuzzMethod::Middle, std::string node_id = {});

} // namespace fahp
