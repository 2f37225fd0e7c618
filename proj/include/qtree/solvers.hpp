#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "qtree/decision_set.hpp"
#include "qtree/decision_tree.hpp"
#include "qtree/distribution.hpp"
#include "qtree/rational.hpp"

namespace qtree {

enum class SolveErrorKind {
  Unsolvable,          // no feasible tree exists
  TooLarge,            // alphabet beyond the solver's guard
  NoFeasibleSequence,  // greedy merge search exhausted
  BudgetExhausted,     // greedy merge search hit its exploration cap
  Stuck,               // a candidate set admits no realizable split
};

const char* to_string(SolveErrorKind kind);

class SolveError : public std::runtime_error {
 public:
  SolveError(SolveErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  SolveErrorKind kind() const { return kind_; }

 private:
  SolveErrorKind kind_;
};

struct SolveStats {
  std::uint64_t nodes_explored = 0;
  double wall_time = 0.0;  // seconds
  std::uint64_t backtracks = 0;
};

struct SolveResult {
  DecisionTree tree;
  double expected_len = 0.0;
  std::optional<Rational> exact_len;  // set when the distribution is exact
  SolveStats stats;
};

inline constexpr std::size_t kBruteForceGuard = 20;
inline constexpr std::size_t kUnconstrainedPartitionGuard = 24;
inline constexpr std::uint64_t kDefaultMergeBudget = 10'000'000;

/// Minimum expected depth over all feasible trees, by memoized search over
/// candidate subsets: cost(C) = p(C) + min over realizable splits of
/// cost(A) + cost(B). Exact distributions are solved in exact arithmetic.
SolveResult brute_force_optimal(const Distribution& d, const DecisionSet& a);

/// Whether two nodes with the given candidate sets may share a parent.
using MergeOracle = std::function<bool(OutcomeSet, OutcomeSet)>;

/// Optional pruning hook: true when a state holding `merged` next to `others`
/// provably admits no complete tree. Pruning such states leaves the result unchanged.
using DeadEndTest = std::function<bool(OutcomeSet merged, std::span<const OutcomeSet> others)>;

struct GreedyOptions {
  std::uint64_t budget = kDefaultMergeBudget;  // cap on explored merge states
  DeadEndTest dead_end;
};

/// Bottom-up merging with backtracking: at each level node pairs are tried in
/// ascending order of mass sum (ties by the pair's lowest outcomes), merging
/// the first mergeable pair and recursing; the first complete tree wins.
SolveResult greedy_huffman(const Distribution& d, const DecisionSet& a, const GreedyOptions& opts = {});
SolveResult greedy_huffman(const Distribution& d, const DecisionSet& a, const MergeOracle& can_merge,
                           const GreedyOptions& opts = {});

struct Partition {
  OutcomeSet first;   // holds min(candidates)
  OutcomeSet second;
  double imbalance = 0.0;  // |p(first) - p(second)|
};

/// Tolerance under which two imbalances count as tied.
inline constexpr double kImbalanceTieTolerance = 1e-12;

/// The realizable split of `c` minimizing |p(A) - p(B)|. Ties go to the split
/// whose first half has the lexicographically smallest member list.
/// Unconstrained sets use branch-and-bound (|c| <= 24); others enumerate.
Partition optimal_partition(OutcomeSet c, const Distribution& d, const DecisionSet& a);

using Partitioner = std::function<Partition(OutcomeSet, const Distribution&)>;

/// Top-down construction applying the optimal partition at every node.
SolveResult gbsc(const Distribution& d, const DecisionSet& a);
/// GBSC with a specialized partition search; `a` supplies the node queries.
SolveResult gbsc(const Distribution& d, const DecisionSet& a, const Partitioner& partition);

}  // namespace qtree
