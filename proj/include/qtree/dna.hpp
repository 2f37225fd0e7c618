#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtree/distribution.hpp"
#include "qtree/outcome_set.hpp"
#include "qtree/solvers.hpp"

namespace qtree::dna {

// Exon positions are 1-based; outcome index i sits at position i + 1.

/// The query "is the exon inside positions lo..hi?".
struct IntervalQuery {
  std::size_t lo = 1;
  std::size_t hi = 1;

  OutcomeSet outcomes() const { return OutcomeSet::range(lo - 1, hi); }
  friend bool operator==(const IntervalQuery&, const IntervalQuery&) = default;
};

/// S = [min S, max S] ∩ Z.
bool is_continuous(OutcomeSet s);

/// Whether nodes with disjoint nonempty candidates a and b can share a parent
/// under interval queries: one side must occupy a gap-free stretch of a ∪ b
/// (which covers the case where one side lies entirely beyond the other).
/// Throws std::invalid_argument for empty or overlapping sets.
bool can_merge(OutcomeSet a, OutcomeSet b);

/// True when some x < y < x' < y' (or the mirror) interleaves the two sets.
/// No interval question can separate crossing sets, so a merge state holding
/// two crossing nodes never completes.
bool crosses(OutcomeSet a, OutcomeSet b);

struct IntervalPartition {
  Partition partition;
  IntervalQuery query;
};

/// The interval split of c with the smallest mass imbalance; ties prefer the
/// shortest interval, then the smallest lo. Uses prefix sums over c's sorted
/// members, O(|c| log |c|).
IntervalPartition interval_partition(OutcomeSet c, const Distribution& d);

SolveResult dna_brute_force(const Distribution& d);
SolveResult dna_greedy_huffman(const Distribution& d, const GreedyOptions& opts = {});
SolveResult dna_gbsc(const Distribution& d);

struct ComparisonConfig {
  std::size_t n = 6;
  std::size_t instances = 10000;
  std::uint64_t seed = 42;
  bool brute_force = true;
  std::size_t threads = 1;
  GreedyOptions greedy;
};

struct ComparisonRow {
  std::uint64_t instance_id = 0;
  std::size_t n = 0;
  std::optional<double> l_brute;
  std::optional<double> l_greedy;  // empty when the merge search failed
  double l_gbsc = 0.0;
  std::optional<double> gap;       // (L_greedy - L_brute) / L_brute
  std::uint64_t t_huffman_ns = 0;
  std::uint64_t t_gbsc_ns = 0;
};

/// Instance i uses random_distribution(n, seed ^ i).
std::vector<ComparisonRow> run_comparison(const ComparisonConfig& cfg);

/// Gaps at or below this count as reaching the optimum.
inline constexpr double kZeroGapTolerance = 1e-9;

struct ComparisonSummary {
  std::size_t instances = 0;
  std::size_t greedy_failures = 0;
  std::size_t with_gap = 0;
  double zero_gap_fraction = 0.0;
  double median_gap = 0.0;
  double p90_gap = 0.0;
  double max_gap = 0.0;
  double mean_gap = 0.0;
  double mean_l_brute = 0.0;
  double mean_l_greedy = 0.0;
  double mean_l_gbsc = 0.0;
  double mean_t_huffman_ns = 0.0;
  double mean_t_gbsc_ns = 0.0;
};

ComparisonSummary summarize(std::span<const ComparisonRow> rows);

/// Columns: instance_id,n,L_brute,L_huffman_greedy,L_gbsc,gap,t_huffman_ns,t_gbsc_ns.
/// Without timings the two time columns are left empty, making output reproducible.
void write_comparison_csv(std::ostream& os, std::span<const ComparisonRow> rows, bool include_timings = true);

struct RuntimePoint {
  std::size_t n = 0;
  double mean_t_huffman_ns = 0.0;
  double mean_t_gbsc_ns = 0.0;
  double mean_l_greedy = 0.0;
  double mean_l_gbsc = 0.0;
  std::size_t greedy_failures = 0;
};

/// Single-threaded timing sweep; the same instance seeds are reused at every length.
std::vector<RuntimePoint> run_runtime_sweep(std::span<const std::size_t> lengths, std::size_t seeds,
                                            std::uint64_t master_seed, const GreedyOptions& greedy = {});

void write_runtime_csv(std::ostream& os, std::span<const RuntimePoint> points);

/// Coefficient of determination of the least-squares line through (x, y).
double linear_fit_r2(std::span<const double> x, std::span<const double> y);

}  // namespace qtree::dna
