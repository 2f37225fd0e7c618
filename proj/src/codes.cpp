#include "qtree/codes.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace qtree {

namespace {

void check_alphabet(const DecisionTree& t, const Distribution& d) {
  if (t.alphabet_size() != d.size()) {
    throw std::invalid_argument("tree alphabet size " + std::to_string(t.alphabet_size()) +
                                " does not match distribution size " + std::to_string(d.size()));
  }
}

// Masses are compared exactly in exact mode so ties follow the documented key.
template <typename Mass>
DecisionTree build_huffman(const Distribution& d, const std::vector<Mass>& mass) {
  const std::size_t n = d.size();
  DecisionTree::Builder builder(n);
  // (mass, lowest outcome, builder handle); lowest outcome is unique per live node.
  using Item = std::tuple<Mass, std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t i = 0; i < n; ++i) heap.emplace(mass[i], i, builder.leaf(i));
  while (heap.size() > 1) {
    const auto [m1, low1, h1] = heap.top();
    heap.pop();
    const auto [m2, low2, h2] = heap.top();
    heap.pop();
    const std::size_t merged = builder.internal(builder.candidates(h1), h1, h2);
    heap.emplace(m1 + m2, std::min(low1, low2), merged);
  }
  return builder.finish(std::get<2>(heap.top()), &d);
}

}  // namespace

double entropy(const Distribution& d) {
  double h = 0.0;
  for (double p : d.probs()) h -= p * std::log2(p);
  return h < 0.0 ? 0.0 : h;
}

double expected_depth(const DecisionTree& t, const Distribution& d) {
  check_alphabet(t, d);
  const auto depth = t.leaf_depths();
  double total = 0.0;
  for (std::size_t i = 0; i < depth.size(); ++i) total += d[i] * static_cast<double>(depth[i]);
  return total;
}

Rational expected_depth_exact(const DecisionTree& t, const Distribution& d) {
  check_alphabet(t, d);
  const auto& p = d.exact();
  const auto depth = t.leaf_depths();
  Rational total;
  for (std::size_t i = 0; i < depth.size(); ++i) total += p[i] * Rational(static_cast<std::int64_t>(depth[i]));
  return total;
}

DecisionTree huffman_tree(const Distribution& d) {
  if (d.is_exact()) return build_huffman(d, d.exact());
  return build_huffman(d, std::vector<double>(d.probs().begin(), d.probs().end()));
}

std::size_t shannon_code_length(double p) {
  if (!(p > 0.0) || p > 1.0 + kProbabilityTolerance) throw std::invalid_argument("probability must lie in (0, 1]");
  const double bits = -std::log2(p);
  const double nearest = std::round(bits);
  if (std::abs(bits - nearest) < 1e-12) return nearest <= 0.0 ? 0 : static_cast<std::size_t>(nearest);
  return bits <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(bits));
}

std::size_t shannon_code_length(const Rational& p) {
  if (p <= Rational(0) || p > Rational(1)) throw std::invalid_argument("probability must lie in (0, 1]");
  // Smallest L with 2^L · num >= den.
  std::size_t len = 0;
  __int128 scaled = p.num();
  while (scaled < p.den()) {
    scaled *= 2;
    ++len;
  }
  return len;
}

double shannon_length(const Distribution& d) {
  if (d.is_exact()) return shannon_length_exact(d).to_double();
  double total = 0.0;
  for (double p : d.probs()) total += p * static_cast<double>(shannon_code_length(p));
  return total;
}

Rational shannon_length_exact(const Distribution& d) {
  Rational total;
  for (const Rational& p : d.exact()) total += p * Rational(static_cast<std::int64_t>(shannon_code_length(p)));
  return total;
}

}  // namespace qtree
