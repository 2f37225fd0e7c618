#include "qtree/dna.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "parallel.hpp"
#include "qtree/random.hpp"

namespace qtree::dna {

namespace {

bool gap_free_within(OutcomeSet whole, OutcomeSet part) {
  return (whole & OutcomeSet::range(part.min(), part.max() + 1)) == part;
}

std::uint64_t elapsed_ns(std::chrono::steady_clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
}

double quantile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - static_cast<double>(lo));
}

}  // namespace

bool is_continuous(OutcomeSet s) {
  if (s.empty()) return false;
  return s == OutcomeSet::range(s.min(), s.max() + 1);
}

bool can_merge(OutcomeSet a, OutcomeSet b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("can_merge needs nonempty candidate sets");
  if (!a.disjoint(b)) throw std::invalid_argument("can_merge candidate sets overlap");
  const OutcomeSet both = a | b;
  return gap_free_within(both, a) || gap_free_within(both, b);
}

bool crosses(OutcomeSet a, OutcomeSet b) {
  if (a.empty() || b.empty()) return false;
  const OutcomeSet span_a = OutcomeSet::range(a.min(), a.max() + 1);
  const OutcomeSet span_b = OutcomeSet::range(b.min(), b.max() + 1);
  return !(b & span_a).empty() && !(a & span_b).empty();
}

IntervalPartition interval_partition(OutcomeSet c, const Distribution& d) {
  if (c.size() < 2) throw std::invalid_argument("interval_partition needs at least two candidates");
  const std::vector<std::size_t> m = c.to_vector();
  const std::size_t k = m.size();
  std::vector<double> prefix(k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] + d[m[i]];
  const double total = prefix[k];

  struct Best {
    double imbalance;
    std::size_t length;
    std::size_t lo;
    std::size_t i;
    std::size_t j;
  };
  std::optional<Best> best;
  auto consider = [&](std::size_t i, std::size_t j) {
    if (i == 0 && j == k - 1) return;
    const Best cand{std::abs(2.0 * (prefix[j + 1] - prefix[i]) - total), m[j] - m[i], m[i] + 1, i, j};
    if (!best || cand.imbalance < best->imbalance - kImbalanceTieTolerance ||
        (cand.imbalance <= best->imbalance + kImbalanceTieTolerance &&
         (cand.length < best->length || (cand.length == best->length && cand.lo < best->lo)))) {
      best = cand;
    }
  };
  // For a run starting at member i the run mass grows with j, so only the two
  // ends bracketing half the total can be optimal.
  for (std::size_t i = 0; i < k; ++i) {
    const double target = prefix[i] + total / 2.0;
    const auto it = std::lower_bound(prefix.begin() + static_cast<std::ptrdiff_t>(i) + 1, prefix.end(), target);
    const auto above = static_cast<std::size_t>(it - prefix.begin());  // run i..above-1
    if (above <= k) consider(i, above - 1);
    if (above >= i + 2) consider(i, above - 2);
  }

  const OutcomeSet run = OutcomeSet::range(m[best->i], m[best->j] + 1) & c;
  Partition p;
  p.first = best->i == 0 ? run : c - run;
  p.second = c - p.first;
  p.imbalance = best->imbalance;
  return {p, IntervalQuery{m[best->i] + 1, m[best->j] + 1}};
}

SolveResult dna_brute_force(const Distribution& d) { return brute_force_optimal(d, DecisionSet::interval(d.size())); }

SolveResult dna_greedy_huffman(const Distribution& d, const GreedyOptions& opts) {
  GreedyOptions with_pruning = opts;
  if (!with_pruning.dead_end) {
    with_pruning.dead_end = [](OutcomeSet merged, std::span<const OutcomeSet> others) {
      return std::any_of(others.begin(), others.end(), [&](OutcomeSet o) { return crosses(merged, o); });
    };
  }
  return greedy_huffman(d, DecisionSet::interval(d.size()), MergeOracle(can_merge), with_pruning);
}

SolveResult dna_gbsc(const Distribution& d) {
  return gbsc(d, DecisionSet::interval(d.size()),
              [](OutcomeSet c, const Distribution& dist) { return interval_partition(c, dist).partition; });
}

std::vector<ComparisonRow> run_comparison(const ComparisonConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("DNA length must be at least 1");
  if (cfg.brute_force && cfg.n > kBruteForceGuard) {
    throw std::invalid_argument("brute force comparison limited to n <= " + std::to_string(kBruteForceGuard));
  }
  std::vector<ComparisonRow> rows(cfg.instances);
  detail::parallel_for(cfg.instances, cfg.threads, [&](std::size_t i) {
    const Distribution d = random_distribution(cfg.n, cfg.seed ^ static_cast<std::uint64_t>(i));
    ComparisonRow& row = rows[i];
    row.instance_id = i;
    row.n = cfg.n;
    if (cfg.brute_force) row.l_brute = dna_brute_force(d).expected_len;

    auto start = std::chrono::steady_clock::now();
    try {
      row.l_greedy = dna_greedy_huffman(d, cfg.greedy).expected_len;
    } catch (const SolveError&) {
      row.l_greedy.reset();
    }
    row.t_huffman_ns = elapsed_ns(start);

    start = std::chrono::steady_clock::now();
    row.l_gbsc = dna_gbsc(d).expected_len;
    row.t_gbsc_ns = elapsed_ns(start);

    if (row.l_brute && row.l_greedy) {
      row.gap = *row.l_brute > 0.0 ? (*row.l_greedy - *row.l_brute) / *row.l_brute : 0.0;
    }
  });
  return rows;
}

ComparisonSummary summarize(std::span<const ComparisonRow> rows) {
  ComparisonSummary s;
  s.instances = rows.size();
  if (rows.empty()) return s;
  std::vector<double> gaps;
  std::size_t zero = 0;
  std::size_t brute_count = 0;
  std::size_t greedy_count = 0;
  for (const ComparisonRow& r : rows) {
    if (!r.l_greedy) {
      ++s.greedy_failures;
    } else {
      s.mean_l_greedy += *r.l_greedy;
      ++greedy_count;
    }
    if (r.l_brute) {
      s.mean_l_brute += *r.l_brute;
      ++brute_count;
    }
    s.mean_l_gbsc += r.l_gbsc;
    s.mean_t_huffman_ns += static_cast<double>(r.t_huffman_ns);
    s.mean_t_gbsc_ns += static_cast<double>(r.t_gbsc_ns);
    if (r.gap) {
      gaps.push_back(*r.gap);
      if (*r.gap <= kZeroGapTolerance) ++zero;
    }
  }
  const auto count = static_cast<double>(rows.size());
  s.mean_l_gbsc /= count;
  s.mean_t_huffman_ns /= count;
  s.mean_t_gbsc_ns /= count;
  if (brute_count > 0) s.mean_l_brute /= static_cast<double>(brute_count);
  if (greedy_count > 0) s.mean_l_greedy /= static_cast<double>(greedy_count);
  s.with_gap = gaps.size();
  if (!gaps.empty()) {
    s.zero_gap_fraction = static_cast<double>(zero) / static_cast<double>(gaps.size());
    s.median_gap = quantile(gaps, 0.5);
    s.p90_gap = quantile(gaps, 0.9);
    s.max_gap = *std::max_element(gaps.begin(), gaps.end());
    double sum = 0.0;
    for (double g : gaps) sum += g;
    s.mean_gap = sum / static_cast<double>(gaps.size());
  }
  return s;
}

void write_comparison_csv(std::ostream& os, std::span<const ComparisonRow> rows, bool include_timings) {
  auto opt = [&](const std::optional<double>& v) {
    if (v) os << *v;
  };
  const auto old_precision = os.precision(17);
  os << "instance_id,n,L_brute,L_huffman_greedy,L_gbsc,gap,t_huffman_ns,t_gbsc_ns\n";
  for (const ComparisonRow& r : rows) {
    os << r.instance_id << ',' << r.n << ',';
    opt(r.l_brute);
    os << ',';
    opt(r.l_greedy);
    os << ',' << r.l_gbsc << ',';
    opt(r.gap);
    os << ',';
    if (include_timings) os << r.t_huffman_ns;
    os << ',';
    if (include_timings) os << r.t_gbsc_ns;
    os << '\n';
  }
  os.precision(old_precision);
}

std::vector<RuntimePoint> run_runtime_sweep(std::span<const std::size_t> lengths, std::size_t seeds,
                                            std::uint64_t master_seed, const GreedyOptions& greedy) {
  std::vector<RuntimePoint> points;
  for (std::size_t n : lengths) {
    RuntimePoint pt;
    pt.n = n;
    std::size_t greedy_ok = 0;
    for (std::size_t s = 0; s < seeds; ++s) {
      const Distribution d = random_distribution(n, master_seed ^ static_cast<std::uint64_t>(s));
      auto start = std::chrono::steady_clock::now();
      try {
        pt.mean_l_greedy += dna_greedy_huffman(d, greedy).expected_len;
        ++greedy_ok;
      } catch (const SolveError&) {
        ++pt.greedy_failures;
      }
      pt.mean_t_huffman_ns += static_cast<double>(elapsed_ns(start));
      start = std::chrono::steady_clock::now();
      pt.mean_l_gbsc += dna_gbsc(d).expected_len;
      pt.mean_t_gbsc_ns += static_cast<double>(elapsed_ns(start));
    }
    const auto count = static_cast<double>(std::max<std::size_t>(seeds, 1));
    pt.mean_t_huffman_ns /= count;
    pt.mean_t_gbsc_ns /= count;
    pt.mean_l_gbsc /= count;
    if (greedy_ok > 0) pt.mean_l_greedy /= static_cast<double>(greedy_ok);
    points.push_back(pt);
  }
  return points;
}

void write_runtime_csv(std::ostream& os, std::span<const RuntimePoint> points) {
  os << "n,mean_t_huffman_ns,mean_t_gbsc_ns,mean_L_huffman_greedy,mean_L_gbsc,greedy_failures\n";
  for (const RuntimePoint& p : points) {
    os << p.n << ',' << p.mean_t_huffman_ns << ',' << p.mean_t_gbsc_ns << ',' << p.mean_l_greedy << ','
       << p.mean_l_gbsc << ',' << p.greedy_failures << '\n';
  }
}

double linear_fit_r2(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear fit needs two or more paired points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear fit needs distinct x values");
  if (syy == 0.0) return 1.0;
  return (sxy * sxy) / (sxx * syy);
}

}  // namespace qtree::dna
