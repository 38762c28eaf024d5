#include "fahp/fuzzy.hpp"

#include "fahp/error.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace fahp {

namespace {

constexpr std::array<ScaleEntry, 9> kScale{{
    {1, "Equally important", {1, 1, 1}},
    {2, "Intermediate values", {1, 2, 3}},
    {3, "Weakly important", {2, 3, 4}},
    {4, "Intermediate values", {3, 4, 5}},
    {5, "Essentially important", {4, 5, 6}},
    {6, "Intermediate values", {5, 6, 7}},
    {7, "Very strongly important", {6, 7, 8}},
    {8, "Intermediate values", {7, 8, 9}},
    {9, "Absolutely important", {8, 9, 9}},
}};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

} // namespace

TriangularFuzzyNumber::TriangularFuzzyNumber(double lower, double middle, double upper)
    : l_(lower), m_(middle), u_(upper) {
  if (!std::isfinite(lower) || !std::isfinite(middle) || !std::isfinite(upper))
    throw DomainError("triangular fuzzy number components must be finite");
  if (!(lower > 0.0))
    throw DomainError("triangular fuzzy number must have l > 0, got l = " + std::to_string(lower));
  if (!(lower <= middle && middle <= upper))
    throw DomainError("triangular fuzzy number must satisfy l <= m <= u");
}

PreciseScore::PreciseScore(int value) : value_(value) {
  if (value < 1 || value > 9)
    throw DomainError("precise score must be in 1..9, got " + std::to_string(value));
}

const std::array<ScaleEntry, 9>& importance_scale() { return kScale; }

TriangularFuzzyNumber scale_lookup(PreciseScore score) {
  const auto& t = kScale[static_cast<std::size_t>(score.value() - 1)].tfn;
  return {t[0], t[1], t[2]};
}

TriangularFuzzyNumber signed_scale_lookup(int signed_score) {
  if (signed_score == 0) throw DomainError("signed score 0 is not on the scale");
  const auto tfn = scale_lookup(PreciseScore(std::abs(signed_score)));
  return signed_score > 0 ? tfn : tfn_reciprocal(tfn);
}

int inverse_scale_lookup(const TriangularFuzzyNumber& x, double tol) {
  for (const auto& e : kScale) {
    const auto& t = e.tfn;
    if (close(x.lower(), t[0], tol) && close(x.middle(), t[1], tol) && close(x.upper(), t[2], tol))
      return e.score;
    if (close(x.lower(), 1.0 / t[2], tol) && close(x.middle(), 1.0 / t[1], tol) &&
        close(x.upper(), 1.0 / t[0], tol))
      return -e.score;
  }
  return 0;
}

std::string_view linguistic_label(PreciseScore score) {
  return kScale[static_cast<std::size_t>(score.value() - 1)].label;
}

TriangularFuzzyNumber tfn_reciprocal(const TriangularFuzzyNumber& x) {
  return {1.0 / x.upper(), 1.0 / x.middle(), 1.0 / x.lower()};
}

TriangularFuzzyNumber tfn_product(const TriangularFuzzyNumber& x, const TriangularFuzzyNumber& y) {
  return {x.lower() * y.lower(), x.middle() * y.middle(), x.upper() * y.upper()};
}

TriangularFuzzyNumber tfn_nth_root(const TriangularFuzzyNumber& x, unsigned n) {
  if (n == 0) throw DomainError("nth root requires n >= 1");
  auto root = [n](double v) {
    switch (n) {
    case 1: return v;
    case 2: return std::sqrt(v);
    case 3: return std::cbrt(v);
    default: return std::pow(v, 1.0 / static_cast<double>(n));
    }
  };
  return {root(x.lower()), root(x.middle()), root(x.upper())};
}

double defuzzify(const TriangularFuzzyNumber& x, DefuzzMethod method) {
  switch (method) {
  case DefuzzMethod::Middle: return x.middle();
  case DefuzzMethod::Centroid: return (x.lower() + x.middle() + x.upper()) / 3.0;
  }
  return x.middle();
}

std::string_view to_string(DefuzzMethod method) {
  return method == DefuzzMethod::Middle ? "middle" : "centroid";
}

DefuzzMethod parse_defuzz_method(std::string_view text) {
  if (text == "middle") return DefuzzMethod::Middle;
  if (text == "centroid") return DefuzzMethod::Centroid;
  throw DomainError("unknown defuzzification method '" + std::string(text) + "' (expected middle or centroid)");
}

} // namespace fahp
