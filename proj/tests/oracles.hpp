#pragma once

// Reference implementations used only by the tests. Each one is written from
// the problem statement with plain loops and shares no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using Mask = std::uint64_t;

inline std::vector<Mask> unconstrained_sets(std::size_t n) {
  std::vector<Mask> out;
  for (Mask s = 0; s < (Mask{1} << n); ++s) out.push_back(s);
  return out;
}

// Positions 1..n; outcome i is position i + 1.
inline std::vector<Mask> interval_sets(std::size_t n) {
  std::vector<Mask> out;
  for (std::size_t lo = 1; lo <= n; ++lo) {
    for (std::size_t hi = lo; hi <= n; ++hi) {
      Mask s = 0;
      for (std::size_t pos = lo; pos <= hi; ++pos) s |= Mask{1} << (pos - 1);
      out.push_back(s);
    }
  }
  return out;
}

inline bool realizable(Mask c, Mask part, const std::vector<Mask>& sets) {
  for (Mask s : sets) {
    const Mask in = c & s;
    if (in == part || in == (c & ~part)) return true;
  }
  return false;
}

inline double mass(Mask s, const std::vector<double>& p) {
  double m = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if ((s >> i) & 1U) m += p[i];
  }
  return m;
}

inline std::size_t lowest(Mask s) {
  std::size_t i = 0;
  while (((s >> i) & 1U) == 0) ++i;
  return i;
}

inline std::size_t popcount(Mask s) {
  std::size_t k = 0;
  for (; s; s &= s - 1) ++k;
  return k;
}

// Every feasible tree over c, as leaf-depth vectors indexed by outcome.
// Splits are unordered: the half holding the lowest outcome comes first.
inline std::vector<std::vector<int>> all_trees(Mask c, std::size_t n, const std::vector<Mask>& sets) {
  if (popcount(c) == 1) return {std::vector<int>(n, 0)};
  std::vector<std::vector<int>> out;
  const Mask low = Mask{1} << lowest(c);
  for (Mask a = 1; a < (Mask{1} << n); ++a) {
    if ((a & ~c) != 0 || (a & low) == 0 || a == c) continue;
    if (!realizable(c, a, sets)) continue;
    const auto left = all_trees(a, n, sets);
    const auto right = all_trees(c & ~a, n, sets);
    for (const auto& l : left) {
      for (const auto& r : right) {
        std::vector<int> depths(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
          if ((a >> i) & 1U) depths[i] = l[i] + 1;
          if (((c & ~a) >> i) & 1U) depths[i] = r[i] + 1;
        }
        out.push_back(std::move(depths));
      }
    }
  }
  return out;
}

// Minimum expected depth over the enumerated trees; nullopt when none exists.
inline std::optional<double> min_by_enumeration(const std::vector<double>& p, const std::vector<Mask>& sets) {
  const std::size_t n = p.size();
  std::optional<double> best;
  for (const auto& depths : all_trees((Mask{1} << n) - 1, n, sets)) {
    double len = 0;
    for (std::size_t i = 0; i < n; ++i) len += p[i] * depths[i];
    if (!best || len < *best) best = len;
  }
  return best;
}

// Same minimum by plain recursion over splits, without memoization.
inline double min_by_recursion(Mask c, const std::vector<double>& p, const std::vector<Mask>& sets) {
  if (popcount(c) == 1) return 0;
  double best = std::numeric_limits<double>::infinity();
  const Mask low = Mask{1} << lowest(c);
  for (Mask a = (c - 1) & c; a != 0; a = (a - 1) & c) {
    if ((a & low) == 0 || !realizable(c, a, sets)) continue;
    best = std::min(best, min_by_recursion(a, p, sets) + min_by_recursion(c & ~a, p, sets));
  }
  return mass(c, p) + best;
}

// A and B (disjoint, over positions 1..8 as bits 0..7) may share a parent iff
// some interval I cuts A ∪ B into exactly A and B.
inline bool mergeable_by_interval(Mask a, Mask b, std::size_t n) {
  const Mask u = a | b;
  for (Mask s : interval_sets(n)) {
    if ((u & s) == a || (u & s) == b) return true;
  }
  return false;
}

struct IntervalChoice {
  Mask first = 0;  // holds the lowest candidate
  double imbalance = 0;
};

// Best interval split of c: smallest imbalance, then the shortest span of the
// interval-side members, then the smallest starting position.
inline IntervalChoice best_interval_split(Mask c, const std::vector<double>& p) {
  const double total = mass(c, p);
  std::optional<IntervalChoice> best;
  std::size_t best_span = 0, best_lo = 0;
  for (std::size_t lo = 1; lo <= p.size(); ++lo) {
    for (std::size_t hi = lo; hi <= p.size(); ++hi) {
      Mask s = 0;
      for (std::size_t pos = lo; pos <= hi; ++pos) s |= Mask{1} << (pos - 1);
      const Mask in = c & s;
      if (in == 0 || in == c) continue;
      // Trim the interval to the members it captures.
      std::size_t first = 64, last = 0;
      for (std::size_t i = 0; i < 64; ++i) {
        if ((in >> i) & 1U) {
          first = std::min(first, i);
          last = i;
        }
      }
      const double imbalance = std::abs(2 * mass(in, p) - total);
      const std::size_t span = last - first;
      const bool better = !best || imbalance < best->imbalance - 1e-12 ||
                          (imbalance <= best->imbalance + 1e-12 &&
                           (span < best_span || (span == best_span && first + 1 < best_lo)));
      if (better) {
        const Mask low = Mask{1} << lowest(c);
        best = IntervalChoice{(in & low) ? in : (c & ~in), imbalance};
        best_span = span;
        best_lo = first + 1;
      }
    }
  }
  return *best;
}

// ---- Battleship ----------------------------------------------------------------

struct Layout {
  std::vector<bool> cells;
};

inline std::vector<Layout> all_layouts(std::size_t rows, std::size_t cols, const std::vector<std::size_t>& ships) {
  std::vector<std::vector<std::vector<std::size_t>>> options;
  for (std::size_t len : ships) {
    std::vector<std::vector<std::size_t>> opts;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c + len <= cols; ++c) {
        std::vector<std::size_t> cells;
        for (std::size_t k = 0; k < len; ++k) cells.push_back(r * cols + c + k);
        opts.push_back(cells);
      }
    }
    if (len > 1) {
      for (std::size_t r = 0; r + len <= rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          std::vector<std::size_t> cells;
          for (std::size_t k = 0; k < len; ++k) cells.push_back((r + k) * cols + c);
          opts.push_back(cells);
        }
      }
    }
    options.push_back(opts);
  }
  std::vector<Layout> out;
  std::vector<std::size_t> pick(ships.size(), 0);
  while (true) {
    std::vector<bool> cells(rows * cols, false);
    bool ok = true;
    for (std::size_t s = 0; s < ships.size() && ok; ++s) {
      for (std::size_t cell : options[s][pick[s]]) {
        if (cells[cell]) ok = false;
        cells[cell] = true;
      }
    }
    if (ok) out.push_back({cells});
    std::size_t s = 0;
    while (s < ships.size() && ++pick[s] == options[s].size()) pick[s++] = 0;
    if (s == ships.size()) break;
  }
  return out;
}

struct RefStep {
  std::size_t cell;
  bool hit;
  std::size_t layouts;
};

// Plays by re-filtering the full layout list each turn: ask the unasked cell
// whose hit count is closest to half the surviving layouts (lowest index on
// ties), stop once every survivor shows the same occupancy.
inline std::vector<RefStep> play(const std::vector<Layout>& layouts, const std::vector<bool>& target) {
  std::vector<Layout> alive = layouts;
  std::vector<bool> asked(target.size(), false);
  std::vector<RefStep> steps;
  auto settled = [&] {
    return std::all_of(alive.begin(), alive.end(), [&](const Layout& l) { return l.cells == alive.front().cells; });
  };
  while (!settled()) {
    std::size_t best = target.size();
    long long best_score = 0;
    for (std::size_t cell = 0; cell < target.size(); ++cell) {
      if (asked[cell]) continue;
      long long count = 0;
      for (const auto& l : alive) count += l.cells[cell] ? 1 : 0;
      const long long total = static_cast<long long>(alive.size());
      if (count == 0 || count == total) continue;
      const long long score = std::llabs(2 * count - total);
      if (best == target.size() || score < best_score) {
        best = cell;
        best_score = score;
      }
    }
    asked[best] = true;
    const bool hit = target[best];
    std::erase_if(alive, [&](const Layout& l) { return l.cells[best] != hit; });
    steps.push_back({best, hit, alive.size()});
  }
  return steps;
}

}  // namespace oracle
