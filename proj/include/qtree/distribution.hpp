#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qtree/outcome_set.hpp"
#include "qtree/rational.hpp"

namespace qtree {

/// Absolute tolerance used for every floating-point probability comparison.
inline constexpr double kProbabilityTolerance = 1e-9;

/// Probability vector over outcomes 0..n-1. Every entry is strictly positive.
///
/// A distribution built from rationals is in exact mode: it keeps the exact
/// values next to their double images, and its entries must sum to exactly 1.
/// A distribution built from doubles must sum to 1 within kProbabilityTolerance.
/// Alphabets are limited to OutcomeSet::kMaxAlphabet symbols.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);
  explicit Distribution(std::vector<Rational> probs);

  static Distribution uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  bool is_exact() const { return exact_.has_value(); }
  /// Throws std::logic_error when the distribution is not in exact mode.
  const std::vector<Rational>& exact() const;

  OutcomeSet support() const { return OutcomeSet::full(size()); }
  double mass(OutcomeSet s) const;
  Rational exact_mass(OutcomeSet s) const;

 private:
  std::vector<double> probs_;
  std::optional<std::vector<Rational>> exact_;
};

}  // namespace qtree
