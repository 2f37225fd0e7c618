#pragma once

#include <cstddef>

#include "qtree/decision_tree.hpp"
#include "qtree/distribution.hpp"
#include "qtree/rational.hpp"

namespace qtree {

/// Shannon entropy in bits.
double entropy(const Distribution& d);

/// Σ p(x)·depth(x) over the leaves. Throws std::invalid_argument on alphabet mismatch.
double expected_depth(const DecisionTree& t, const Distribution& d);
/// Exact-mode variant; throws std::logic_error if d is not exact.
Rational expected_depth_exact(const DecisionTree& t, const Distribution& d);

/// Optimal unconstrained prefix tree. Merges the two nodes with the smallest
/// (mass, lowest outcome) keys; the smaller key becomes the left child.
DecisionTree huffman_tree(const Distribution& d);

/// ⌈-log2 p⌉, snapping to the exact integer when p is a power of two up to rounding.
std::size_t shannon_code_length(double p);
/// Exact ⌈-log2 p⌉ for a rational 0 < p <= 1.
std::size_t shannon_code_length(const Rational& p);

/// Σ p·⌈-log2 p⌉ (exact lengths are used when d is in exact mode).
double shannon_length(const Distribution& d);
Rational shannon_length_exact(const Distribution& d);

}  // namespace qtree
