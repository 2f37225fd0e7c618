#include "qtree/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qtree {

namespace {

void check_size(std::size_t n) {
  if (n == 0) throw std::invalid_argument("distribution must have at least one outcome");
  if (n > OutcomeSet::kMaxAlphabet) {
    throw std::invalid_argument("distribution has " + std::to_string(n) + " outcomes; at most " +
                                std::to_string(OutcomeSet::kMaxAlphabet) + " are supported");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  check_size(probs_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!std::isfinite(probs_[i]) || probs_[i] <= 0.0) {
      throw std::invalid_argument("probability of outcome " + std::to_string(i) + " must be positive");
    }
    total += probs_[i];
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

Distribution::Distribution(std::vector<Rational> probs) {
  check_size(probs.size());
  Rational total;
  probs_.reserve(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= Rational(0)) {
      throw std::invalid_argument("probability of outcome " + std::to_string(i) + " must be positive");
    }
    total += probs[i];
    probs_.push_back(probs[i].to_double());
  }
  if (total != Rational(1)) {
    throw std::invalid_argument("probabilities sum to " + total.to_string() + ", not exactly 1");
  }
  exact_ = std::move(probs);
}

Distribution Distribution::uniform(std::size_t n) {
  check_size(n);
  return Distribution(std::vector<Rational>(n, Rational(1, static_cast<std::int64_t>(n))));
}

const std::vector<Rational>& Distribution::exact() const {
  if (!exact_) throw std::logic_error("distribution is not in exact mode");
  return *exact_;
}

double Distribution::mass(OutcomeSet s) const {
  double m = 0.0;
  for (std::size_t i : s) m += probs_.at(i);
  return m;
}

Rational Distribution::exact_mass(OutcomeSet s) const {
  const auto& e = exact();
  Rational m;
  for (std::size_t i : s) m += e.at(i);
  return m;
}

}  // namespace qtree
