#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "qtree/decision_set.hpp"
#include "qtree/distribution.hpp"
#include "qtree/outcome_set.hpp"

namespace qtree {

inline constexpr std::size_t kNoChild = std::numeric_limits<std::size_t>::max();

/// One node of a DecisionTree. Internal nodes ask "is X in query?": the left
/// child receives candidates ∩ query, the right child candidates - query.
struct TreeNode {
  OutcomeSet candidates;
  OutcomeSet query;  // internal nodes only
  std::size_t left = kNoChild;
  std::size_t right = kNoChild;
  std::size_t outcome = 0;  // leaves only
  double mass = 0.0;        // candidate mass; 0 when built without a distribution

  bool is_leaf() const { return left == kNoChild; }
};

/// Binary decision tree over the alphabet 0..n-1, stored in preorder with the
/// root at index 0. Construction validates the structure: every internal node
/// splits its candidates into two nonempty children, leaves are singletons,
/// and the root holds the whole alphabet.
class DecisionTree {
 public:
  /// Appends nodes children-first; finish() takes the root handle.
  class Builder {
   public:
    explicit Builder(std::size_t alphabet_size) : n_(alphabet_size) {}
    std::size_t leaf(std::size_t outcome);
    std::size_t internal(OutcomeSet query, std::size_t left, std::size_t right);
    /// Joins two subtrees under a query from `a` that separates their
    /// candidates; children are ordered so the left one answers "yes".
    /// Throws std::invalid_argument when `a` cannot separate them.
    std::size_t join(const DecisionSet& a, std::size_t first, std::size_t second);
    OutcomeSet candidates(std::size_t handle) const { return raw_.at(handle).candidates; }
    DecisionTree finish(std::size_t root, const Distribution* d = nullptr) const;

   private:
    struct Raw {
      OutcomeSet candidates;
      OutcomeSet query;
      std::size_t left = kNoChild;
      std::size_t right = kNoChild;
      std::size_t outcome = 0;
    };
    std::size_t n_;
    std::vector<Raw> raw_;
  };

  std::size_t alphabet_size() const { return n_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  std::size_t leaf_count() const { return (nodes_.size() + 1) / 2; }

  /// Depth of each outcome's leaf, indexed by outcome.
  std::vector<std::size_t> leaf_depths() const;

 private:
  DecisionTree() = default;

  std::size_t n_ = 0;
  std::vector<TreeNode> nodes_;
};

struct NodeViolation {
  std::size_t node;
  OutcomeSet candidates;
  OutcomeSet left;
};

struct ValidationReport {
  bool feasible = true;
  std::vector<NodeViolation> violations;
};

/// Checks each internal node's split independently against the decision set.
/// Throws std::invalid_argument on alphabet mismatch.
ValidationReport validate_tree(const DecisionTree& t, const DecisionSet& a);

}  // namespace qtree
