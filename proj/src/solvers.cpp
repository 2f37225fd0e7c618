#include "qtree/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qtree/codes.hpp"

namespace qtree {

const char* to_string(SolveErrorKind kind) {
  switch (kind) {
    case SolveErrorKind::Unsolvable:
      return "unsolvable";
    case SolveErrorKind::TooLarge:
      return "too large";
    case SolveErrorKind::NoFeasibleSequence:
      return "no feasible merge sequence";
    case SolveErrorKind::BudgetExhausted:
      return "budget exhausted";
    case SolveErrorKind::Stuck:
      return "stuck";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SolveResult finish_result(DecisionTree tree, const Distribution& d, SolveStats stats, Clock::time_point start) {
  SolveResult r{std::move(tree), 0.0, std::nullopt, stats};
  r.expected_len = expected_depth(r.tree, d);
  if (d.is_exact()) r.exact_len = expected_depth_exact(r.tree, d);
  r.stats.wall_time = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------------------
// Brute force

template <typename Cost>
class SubsetSearch {
 public:
  SubsetSearch(const DecisionSet& a, std::vector<Cost> mass)
      : a_(a), mass_(std::move(mass)), size_(std::size_t{1} << mass_.size()), cost_(size_), best_(size_, 0),
        state_(size_, kUnknown) {}

  /// False when no feasible tree exists below `c`.
  bool solve(std::uint64_t c) {
    if (state_[c] != kUnknown) return state_[c] == kFeasible;
    ++explored_;
    if ((c & (c - 1)) == 0) {
      cost_[c] = Cost{};
      state_[c] = kFeasible;
      return true;
    }
    bool found = false;
    Cost best{};
    std::uint64_t best_first = 0;
    a_.for_each_split(OutcomeSet(c), [&](OutcomeSet first) {
      const std::uint64_t f = first.bits();
      const std::uint64_t s = c & ~f;
      if (!solve(f) || !solve(s)) return;
      Cost total = cost_[f] + cost_[s];
      if (!found || total < best) {
        best = total;
        best_first = f;
        found = true;
      }
    });
    if (!found) {
      state_[c] = kInfeasible;
      return false;
    }
    Cost here{};
    for (std::size_t i : OutcomeSet(c)) here = here + mass_[i];
    cost_[c] = here + best;
    best_[c] = best_first;
    state_[c] = kFeasible;
    return true;
  }

  std::uint64_t best_first(std::uint64_t c) const { return best_[c]; }
  std::uint64_t explored() const { return explored_; }

 private:
  static constexpr std::uint8_t kUnknown = 0;
  static constexpr std::uint8_t kFeasible = 1;
  static constexpr std::uint8_t kInfeasible = 2;

  const DecisionSet& a_;
  std::vector<Cost> mass_;
  std::size_t size_;
  std::vector<Cost> cost_;
  std::vector<std::uint64_t> best_;
  std::vector<std::uint8_t> state_;
  std::uint64_t explored_ = 0;
};

template <typename Cost>
SolveResult run_brute_force(const Distribution& d, const DecisionSet& a, std::vector<Cost> mass,
                            Clock::time_point start) {
  const std::size_t n = d.size();
  SubsetSearch<Cost> search(a, std::move(mass));
  const std::uint64_t all = OutcomeSet::full(n).bits();
  if (!search.solve(all)) {
    throw SolveError(SolveErrorKind::Unsolvable, "no feasible decision tree over " + a.describe());
  }
  DecisionTree::Builder builder(n);
  // Rebuild children-first with an explicit stack.
  std::unordered_map<std::uint64_t, std::size_t> handle;
  std::vector<std::pair<std::uint64_t, bool>> stack{{all, false}};
  while (!stack.empty()) {
    auto [c, expanded] = stack.back();
    stack.pop_back();
    if ((c & (c - 1)) == 0) {
      handle[c] = builder.leaf(OutcomeSet(c).min());
      continue;
    }
    const std::uint64_t f = search.best_first(c);
    if (expanded) {
      handle[c] = builder.join(a, handle.at(f), handle.at(c & ~f));
    } else {
      stack.push_back({c, true});
      stack.push_back({c & ~f, false});
      stack.push_back({f, false});
    }
  }
  SolveStats stats;
  stats.nodes_explored = search.explored();
  return finish_result(builder.finish(handle.at(all), &d), d, stats, start);
}

// ---------------------------------------------------------------------------
// Greedy merging

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class MergeSearch {
 public:
  struct Node {
    OutcomeSet candidates;
    double mass;
  };

  MergeSearch(const MergeOracle& can_merge, const GreedyOptions& opts)
      : can_merge_(can_merge), budget_(opts.budget), dead_end_(opts.dead_end) {}

  /// Nodes are kept sorted by lowest candidate.
  bool search(const std::vector<Node>& nodes) {
    if (++stats_.nodes_explored > budget_) {
      throw SolveError(SolveErrorKind::BudgetExhausted,
                       "greedy merge search exceeded budget of " + std::to_string(budget_) + " states");
    }
    if (nodes.size() == 1) return true;

    std::vector<std::uint64_t> key;
    key.reserve(nodes.size());
    for (const Node& node : nodes) key.push_back(node.candidates.bits());
    if (failed_.contains(key)) return false;

    struct Pair {
      double sum;
      std::uint32_t i;
      std::uint32_t j;
    };
    // Min-heap on (sum, i, j); i < j and nodes are sorted by lowest outcome, so
    // (i, j) order matches the lowest-outcome tie-break.
    auto after = [](const Pair& x, const Pair& y) {
      if (x.sum != y.sum) return x.sum > y.sum;
      if (x.i != y.i) return x.i > y.i;
      return x.j > y.j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(nodes.size() * (nodes.size() - 1) / 2);
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
      for (std::uint32_t j = i + 1; j < nodes.size(); ++j) pairs.push_back({nodes[i].mass + nodes[j].mass, i, j});
    }
    std::make_heap(pairs.begin(), pairs.end(), after);

    std::vector<Node> next;
    std::vector<OutcomeSet> others;
    while (!pairs.empty()) {
      std::pop_heap(pairs.begin(), pairs.end(), after);
      const Pair p = pairs.back();
      pairs.pop_back();
      const Node& x = nodes[p.i];
      const Node& y = nodes[p.j];
      if (!can_merge_(x.candidates, y.candidates)) continue;
      if (dead_end_) {
        others.clear();
        for (std::uint32_t k = 0; k < nodes.size(); ++k) {
          if (k != p.i && k != p.j) others.push_back(nodes[k].candidates);
        }
        if (dead_end_(x.candidates | y.candidates, others)) {
          ++stats_.backtracks;
          continue;
        }
      }

      next.clear();
      for (std::uint32_t k = 0; k < nodes.size(); ++k) {
        if (k == p.j) continue;
        if (k == p.i) {
          next.push_back({x.candidates | y.candidates, x.mass + y.mass});
        } else {
          next.push_back(nodes[k]);
        }
      }
      merges_.push_back({x.candidates, y.candidates});
      if (search(next)) return true;
      merges_.pop_back();
      ++stats_.backtracks;
    }
    failed_.insert(std::move(key));
    return false;
  }

  const std::vector<std::pair<OutcomeSet, OutcomeSet>>& merges() const { return merges_; }
  const SolveStats& stats() const { return stats_; }

 private:
  const MergeOracle& can_merge_;
  std::uint64_t budget_;
  const DeadEndTest& dead_end_;
  SolveStats stats_;
  std::vector<std::pair<OutcomeSet, OutcomeSet>> merges_;
  // States proven to have no completion; revisiting them cannot succeed.
  std::unordered_set<std::vector<std::uint64_t>, VectorHash> failed_;
};

// ---------------------------------------------------------------------------
// Partitions

bool better_partition(double imbalance, OutcomeSet first, double best, OutcomeSet best_first, bool have_best) {
  if (!have_best) return true;
  if (imbalance < best - kImbalanceTieTolerance) return true;
  if (imbalance > best + kImbalanceTieTolerance) return false;
  return lexicographically_less(first, best_first);
}

class BalancedSubsetSearch {
 public:
  BalancedSubsetSearch(OutcomeSet c, const Distribution& d) : total_(d.mass(c)) {
    for (std::size_t i : c) items_.push_back({d[i], i});
    // Heaviest first tightens the bound early; the lowest member is pinned to `first`.
    const std::size_t pinned = c.min();
    std::sort(items_.begin(), items_.end(), [&](const auto& x, const auto& y) {
      if ((x.second == pinned) != (y.second == pinned)) return x.second == pinned;
      if (x.first != y.first) return x.first > y.first;
      return x.second < y.second;
    });
    suffix_.assign(items_.size() + 1, 0.0);
    for (std::size_t k = items_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + items_[k].first;
    full_ = c;
  }

  Partition run() {
    descend(1, items_[0].first, 0.0, OutcomeSet{items_[0].second});
    return {best_first_, full_ - best_first_, best_};
  }

 private:
  void descend(std::size_t k, double first_mass, double second_mass, OutcomeSet first) {
    const double gap = std::abs(first_mass - second_mass);
    const double bound = std::max(0.0, gap - suffix_[k]);
    if (have_best_ && bound > best_ + kImbalanceTieTolerance) return;
    if (k == items_.size()) {
      if (first == full_) return;
      if (better_partition(gap, first, best_, best_first_, have_best_)) {
        best_ = gap;
        best_first_ = first;
        have_best_ = true;
      }
      return;
    }
    const auto& [mass, index] = items_[k];
    OutcomeSet with = first;
    with.insert(index);
    // Place onto the lighter side first.
    if (first_mass <= second_mass) {
      descend(k + 1, first_mass + mass, second_mass, with);
      descend(k + 1, first_mass, second_mass + mass, first);
    } else {
      descend(k + 1, first_mass, second_mass + mass, first);
      descend(k + 1, first_mass + mass, second_mass, with);
    }
  }

  double total_;
  OutcomeSet full_;
  std::vector<std::pair<double, std::size_t>> items_;
  std::vector<double> suffix_;
  bool have_best_ = false;
  double best_ = 0.0;
  OutcomeSet best_first_;
};

}  // namespace

SolveResult brute_force_optimal(const Distribution& d, const DecisionSet& a) {
  const auto start = Clock::now();
  const std::size_t n = d.size();
  if (n != a.alphabet_size()) throw std::invalid_argument("distribution and decision set sizes differ");
  if (n > kBruteForceGuard) {
    throw SolveError(SolveErrorKind::TooLarge, "brute force limited to " + std::to_string(kBruteForceGuard) +
                                                   " outcomes, got " + std::to_string(n));
  }
  if (d.is_exact()) return run_brute_force<Rational>(d, a, d.exact(), start);
  return run_brute_force<double>(d, a, std::vector<double>(d.probs().begin(), d.probs().end()), start);
}

SolveResult greedy_huffman(const Distribution& d, const DecisionSet& a, const GreedyOptions& opts) {
  const MergeOracle oracle = [&a](OutcomeSet x, OutcomeSet y) { return a.realizes(x | y, x); };
  return greedy_huffman(d, a, oracle, opts);
}

SolveResult greedy_huffman(const Distribution& d, const DecisionSet& a, const MergeOracle& can_merge,
                           const GreedyOptions& opts) {
  const auto start = Clock::now();
  const std::size_t n = d.size();
  if (n != a.alphabet_size()) throw std::invalid_argument("distribution and decision set sizes differ");

  std::vector<MergeSearch::Node> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({OutcomeSet{i}, d[i]});
  MergeSearch search(can_merge, opts);
  if (!search.search(nodes)) {
    throw SolveError(SolveErrorKind::NoFeasibleSequence, "no feasible merge sequence over " + a.describe());
  }

  DecisionTree::Builder builder(n);
  std::unordered_map<std::uint64_t, std::size_t> handle;
  for (std::size_t i = 0; i < n; ++i) handle[OutcomeSet{i}.bits()] = builder.leaf(i);
  for (const auto& [x, y] : search.merges()) {
    handle[(x | y).bits()] = builder.join(a, handle.at(x.bits()), handle.at(y.bits()));
  }
  return finish_result(builder.finish(handle.at(OutcomeSet::full(n).bits()), &d), d, search.stats(), start);
}

Partition optimal_partition(OutcomeSet c, const Distribution& d, const DecisionSet& a) {
  if (c.size() < 2) throw std::invalid_argument("optimal_partition needs at least two candidates");
  if (a.kind() == DecisionSetKind::Unconstrained) {
    if (c.size() > kUnconstrainedPartitionGuard) {
      throw SolveError(SolveErrorKind::TooLarge, "unconstrained partition search limited to " +
                                                     std::to_string(kUnconstrainedPartitionGuard) + " candidates");
    }
    return BalancedSubsetSearch(c, d).run();
  }
  const double total = d.mass(c);
  bool have = false;
  double best = 0.0;
  OutcomeSet best_first;
  a.for_each_split(c, [&](OutcomeSet first) {
    const double imbalance = std::abs(2.0 * d.mass(first) - total);
    if (better_partition(imbalance, first, best, best_first, have)) {
      best = imbalance;
      best_first = first;
      have = true;
    }
  });
  if (!have) throw SolveError(SolveErrorKind::Stuck, "no realizable split of " + c.to_string() + " in " + a.describe());
  return {best_first, c - best_first, best};
}

SolveResult gbsc(const Distribution& d, const DecisionSet& a) {
  return gbsc(d, a, [&a](OutcomeSet c, const Distribution& dist) { return optimal_partition(c, dist, a); });
}

SolveResult gbsc(const Distribution& d, const DecisionSet& a, const Partitioner& partition) {
  const auto start = Clock::now();
  const std::size_t n = d.size();
  if (n != a.alphabet_size()) throw std::invalid_argument("distribution and decision set sizes differ");
  DecisionTree::Builder builder(n);
  SolveStats stats;
  std::function<std::size_t(OutcomeSet)> build = [&](OutcomeSet c) -> std::size_t {
    if (c.size() == 1) return builder.leaf(c.min());
    ++stats.nodes_explored;
    const Partition p = partition(c, d);
    const std::size_t first = build(p.first);
    const std::size_t second = build(p.second);
    return builder.join(a, first, second);
  };
  const std::size_t root = build(d.support());
  return finish_result(builder.finish(root, &d), d, stats, start);
}

}  // namespace qtree
