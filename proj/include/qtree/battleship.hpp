#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qtree::battleship {

inline constexpr std::size_t kMaxCells = 100;

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct BoardConfig {
  std::size_t rows = 10;
  std::size_t cols = 10;
  std::vector<std::size_t> ships{5, 4, 3};

  std::size_t cells() const { return rows * cols; }
  std::size_t ship_cells() const;
  void validate() const;  // throws std::invalid_argument
};

/// Row-major occupancy grid of up to 100 cells; bit i set iff a ship covers cell i.
class Board {
 public:
  constexpr Board() = default;

  bool test(std::size_t cell) const { return ((words_[cell >> 6] >> (cell & 63)) & 1U) != 0; }
  void set(std::size_t cell) { words_[cell >> 6] |= std::uint64_t{1} << (cell & 63); }
  std::size_t popcount() const {
    return static_cast<std::size_t>(std::popcount(words_[0]) + std::popcount(words_[1]));
  }
  bool overlaps(const Board& o) const { return ((words_[0] & o.words_[0]) | (words_[1] & o.words_[1])) != 0; }
  Board& operator|=(const Board& o) {
    words_[0] |= o.words_[0];
    words_[1] |= o.words_[1];
    return *this;
  }
  const std::array<std::uint64_t, 2>& words() const { return words_; }
  std::string to_string(std::size_t rows, std::size_t cols) const;

  friend bool operator==(const Board&, const Board&) = default;
  friend auto operator<=>(const Board& a, const Board& b) {
    if (a.words_[1] != b.words_[1]) return a.words_[1] <=> b.words_[1];
    return a.words_[0] <=> b.words_[0];
  }

 private:
  std::array<std::uint64_t, 2> words_{0, 0};
};

/// Hypothesis space: the distinct occupancy grids, each carrying the number of
/// ship layouts (placement tuples) that produce it. Layouts that differ only
/// in which ship covers which cells cannot be told apart by any query.
class BoardSet {
 public:
  /// Canonicalizes: sorts, merges identical grids, and records multiplicities.
  BoardSet(BoardConfig config, std::vector<Board> layouts);

  const BoardConfig& config() const { return config_; }
  std::size_t size() const { return boards_.size(); }
  bool empty() const { return boards_.empty(); }
  std::uint64_t layout_count() const { return layouts_; }
  const Board& board(std::size_t i) const { return boards_[i]; }
  std::uint32_t multiplicity(std::size_t i) const { return multiplicity_[i]; }
  const std::vector<Board>& boards() const { return boards_; }
  std::optional<std::size_t> index_of(const Board& b) const;

 private:
  BoardConfig config_;
  std::vector<Board> boards_;
  std::vector<std::uint32_t> multiplicity_;
  std::uint64_t layouts_ = 0;
};

/// Every placement of the configured ships (horizontal or vertical, fully on
/// the board, no overlaps; touching allowed). Throws std::invalid_argument for
/// impossible configurations.
BoardSet enumerate_boards(const BoardConfig& config);

/// Per-cell count of layouts occupying the cell, over `total` layouts.
struct HitMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  double probability(std::size_t cell) const { return static_cast<double>(counts[cell]) / static_cast<double>(total); }
  double probability(Cell c) const { return probability(c.row * cols + c.col); }
  std::vector<double> probabilities() const;
};

/// Layout-weighted hit probabilities. Throws std::invalid_argument on an empty set.
HitMatrix hit_probability(const BoardSet& s);

/// The unasked cell whose hit probability is closest to 1/2, among cells with
/// 0 < P < 1; ties go to the lowest row-major index. Compares |2·count - total|
/// exactly. Throws std::domain_error when no informative cell remains.
Cell select_query(const HitMatrix& p, const std::vector<bool>& asked);
/// Same rule on a floating-point probability matrix in row-major order.
Cell select_query(std::span<const double> p, std::size_t cols, const std::vector<bool>& asked);

struct GameStep {
  Cell query;
  bool hit = false;
  std::uint64_t remaining_layouts = 0;
  std::size_t remaining_boards = 0;
  double entropy_bits = 0.0;  // log2(remaining_layouts); 0 once one grid remains
};

struct GameTranscript {
  std::size_t target_index = 0;
  std::uint64_t initial_layouts = 0;
  std::size_t initial_boards = 0;
  double initial_entropy = 0.0;
  std::vector<GameStep> steps;

  std::size_t total_queries() const { return steps.size(); }
};

/// Plays games against a fixed hypothesis space. Precomputes one bit index per
/// cell over the boards so early, large hypothesis sets are filtered and
/// counted a word at a time; small sets fall back to a linear scan.
/// Thread-safe for concurrent play().
class Engine {
 public:
  explicit Engine(const BoardSet& boards);

  const BoardSet& boards() const { return boards_; }
  const HitMatrix& initial_hits() const { return initial_; }
  /// Throws std::invalid_argument if the target is not in the hypothesis space.
  GameTranscript play(const Board& target) const;

 private:
  const BoardSet& boards_;
  std::size_t cells_;
  std::size_t words_;  // per cell bitmap
  struct Group {
    std::uint32_t weight;
    std::size_t first_word;
    std::size_t last_word;  // exclusive
  };
  std::vector<Group> groups_;
  std::vector<std::uint32_t> slot_board_;
  std::vector<std::uint64_t> valid_;
  std::vector<std::uint64_t> cell_bits_;  // cells_ x words_
  HitMatrix initial_;
};

GameTranscript play_game(const Board& target, const BoardSet& initial);

inline constexpr std::size_t kHistogramBinWidth = 2;

struct HistogramBin {
  std::size_t lo = 0;  // inclusive
  std::size_t hi = 0;  // exclusive
  std::size_t count = 0;
};

struct ExperimentStats {
  std::size_t games = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  std::size_t min = 0;
  std::size_t max = 0;
  std::size_t theoretical_floor = 0;  // ceil(log2 layouts)
  std::vector<HistogramBin> histogram;
  std::vector<GameTranscript> transcripts;
};

/// Draws num_targets boards uniformly from the distinct grids with a generator
/// seeded by master_seed.
std::vector<std::size_t> sample_targets(std::size_t board_count, std::size_t num_targets, std::uint64_t master_seed);

/// Plays one game per sampled target; results are independent of `threads`.
ExperimentStats run_experiment(const Engine& engine, std::size_t num_targets, std::uint64_t master_seed,
                               std::size_t threads = 1);

ExperimentStats summarize_games(std::vector<GameTranscript> transcripts, std::uint64_t layouts);

}  // namespace qtree::battleship
