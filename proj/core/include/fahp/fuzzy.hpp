#pragma once

#include <array>
#include <string_view>

namespace fahp {

/// Triangular fuzzy number (l, m, u) with 0 < l <= m <= u.
///
/// Construction validates the ordering; every operation in this header
/// returns values that satisfy it again.
class TriangularFuzzyNumber {
public:
  constexpr TriangularFuzzyNumber() = default;
  TriangularFuzzyNumber(double lower, double middle, double upper);

  constexpr double lower() const noexcept { return l_; }
  constexpr double middle() const noexcept { return m_; }
  constexpr double upper() const noexcept { return u_; }

  friend constexpr bool operator==(const TriangularFuzzyNumber&, const TriangularFuzzyNumber&) = default;

private:
  double l_ = 1.0;
  double m_ = 1.0;
  double u_ = 1.0;
};

using Tfn = TriangularFuzzyNumber;

/// Integer judgment on the 1..9 importance scale.
class PreciseScore {
public:
  explicit PreciseScore(int value);
  constexpr int value() const noexcept { return value_; }
  friend constexpr bool operator==(PreciseScore, PreciseScore) = default;

private:
  int value_;
};

enum class DefuzzMethod { Middle, Centroid };

struct ScaleEntry {
  int score;
  std::string_view label;
  std::array<double, 3> tfn;
};

/// The nine rows of the linguistic importance scale, score ascending.
const std::array<ScaleEntry, 9>& importance_scale();

TriangularFuzzyNumber scale_lookup(PreciseScore score);

/// Signed variant: a negative score yields the reciprocal of the positive one.
/// Zero and |score| > 9 throw DomainError.
TriangularFuzzyNumber signed_scale_lookup(int signed_score);

/// Inverse of signed_scale_lookup when x is (within tol) a scale triple or
/// the reciprocal of one. Returns 0 when x is not on the scale.
int inverse_scale_lookup(const TriangularFuzzyNumber& x, double tol = 1e-9);

std::string_view linguistic_label(PreciseScore score);

TriangularFuzzyNumber tfn_reciprocal(const TriangularFuzzyNumber& x);
TriangularFuzzyNumber tfn_product(const TriangularFuzzyNumber& x, const TriangularFuzzyNumber& y);
TriangularFuzzyNumber tfn_nth_root(const TriangularFuzzyNumber& x, unsigned n);

double defuzzify(const TriangularFuzzyNumber& x, DefuzzMethod method);

std::string_view to_string(DefuzzMethod method);
DefuzzMethod parse_defuzz_method(std::string_view text);

} // namespace fahp
