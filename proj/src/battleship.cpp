#include "qtree/battleship.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "parallel.hpp"
#include "qtree/random.hpp"

namespace qtree::battleship {

namespace {

constexpr std::uint32_t kPadding = std::numeric_limits<std::uint32_t>::max();

double entropy_of(std::uint64_t layouts, std::size_t boards) {
  return boards > 1 ? std::log2(static_cast<double>(layouts)) : 0.0;
}

std::vector<Board> placements(const BoardConfig& cfg, std::size_t length) {
  std::vector<Board> out;
  for (int vertical = 0; vertical < 2; ++vertical) {
    const std::size_t max_row = vertical ? cfg.rows - length + 1 : cfg.rows;
    const std::size_t max_col = vertical ? cfg.cols : cfg.cols - length + 1;
    if ((vertical && length > cfg.rows) || (!vertical && length > cfg.cols)) continue;
    for (std::size_t r = 0; r < max_row; ++r) {
      for (std::size_t c = 0; c < max_col; ++c) {
        Board b;
        for (std::size_t k = 0; k < length; ++k) b.set((r + (vertical ? k : 0)) * cfg.cols + c + (vertical ? 0 : k));
        out.push_back(b);
      }
    }
    // A single cell reads the same either way.
    if (length == 1) break;
  }
  return out;
}

void place(const std::vector<std::vector<Board>>& options, std::size_t ship, const Board& acc,
           std::vector<Board>& out) {
  if (ship == options.size()) {
    out.push_back(acc);
    return;
  }
  for (const Board& p : options[ship]) {
    if (acc.overlaps(p)) continue;
    Board next = acc;
    next |= p;
    place(options, ship + 1, next, out);
  }
}

}  // namespace

std::size_t BoardConfig::ship_cells() const { return std::accumulate(ships.begin(), ships.end(), std::size_t{0}); }

void BoardConfig::validate() const {
  if (rows == 0 || cols == 0 || rows * cols > kMaxCells) {
    throw std::invalid_argument("board must have between 1 and " + std::to_string(kMaxCells) + " cells");
  }
  for (std::size_t len : ships) {
    if (len == 0) throw std::invalid_argument("ship length must be positive");
    if (len > rows && len > cols) {
      throw std::invalid_argument("impossible configuration: ship of length " + std::to_string(len) +
                                  " does not fit a " + std::to_string(rows) + "x" + std::to_string(cols) + " board");
    }
  }
  if (ship_cells() > cells()) throw std::invalid_argument("impossible configuration: ships cover more than the board");
}

std::string Board::to_string(std::size_t rows, std::size_t cols) const {
  std::string out;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out += test(r * cols + c) ? '#' : '.';
    out += '\n';
  }
  return out;
}

BoardSet::BoardSet(BoardConfig config, std::vector<Board> layouts) : config_(std::move(config)) {
  config_.validate();
  layouts_ = layouts.size();
  std::sort(layouts.begin(), layouts.end());
  for (std::size_t i = 0; i < layouts.size();) {
    std::size_t j = i;
    while (j < layouts.size() && layouts[j] == layouts[i]) ++j;
    boards_.push_back(layouts[i]);
    multiplicity_.push_back(static_cast<std::uint32_t>(j - i));
    i = j;
  }
}

std::optional<std::size_t> BoardSet::index_of(const Board& b) const {
  auto it = std::lower_bound(boards_.begin(), boards_.end(), b);
  if (it == boards_.end() || *it != b) return std::nullopt;
  return static_cast<std::size_t>(it - boards_.begin());
}

BoardSet enumerate_boards(const BoardConfig& config) {
  config.validate();
  std::vector<std::vector<Board>> options;
  for (std::size_t len : config.ships) options.push_back(placements(config, len));
  std::vector<Board> layouts;
  place(options, 0, Board{}, layouts);
  if (layouts.empty()) throw std::invalid_argument("impossible configuration: ships cannot be placed without overlap");
  return BoardSet(config, std::move(layouts));
}

std::vector<double> HitMatrix::probabilities() const {
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) p[i] = probability(i);
  return p;
}

HitMatrix hit_probability(const BoardSet& s) {
  if (s.empty()) throw std::invalid_argument("hit probability of an empty board set");
  HitMatrix m{s.config().rows, s.config().cols, std::vector<std::uint64_t>(s.config().cells(), 0), 0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::uint32_t w = s.multiplicity(i);
    m.total += w;
    for (int k = 0; k < 2; ++k) {
      for (std::uint64_t bits = s.board(i).words()[k]; bits != 0; bits &= bits - 1) {
        m.counts[64 * k + std::countr_zero(bits)] += w;
      }
    }
  }
  return m;
}

Cell select_query(const HitMatrix& p, const std::vector<bool>& asked) {
  std::optional<std::size_t> best;
  std::uint64_t best_score = 0;
  for (std::size_t cell = 0; cell < p.counts.size(); ++cell) {
    if (cell < asked.size() && asked[cell]) continue;
    const std::uint64_t count = p.counts[cell];
    if (count == 0 || count == p.total) continue;
    const std::uint64_t twice = 2 * count;
    const std::uint64_t score = twice > p.total ? twice - p.total : p.total - twice;
    if (!best || score < best_score) {
      best = cell;
      best_score = score;
    }
  }
  if (!best) throw std::domain_error("board already determined: no informative cell remains");
  return {*best / p.cols, *best % p.cols};
}

Cell select_query(std::span<const double> p, std::size_t cols, const std::vector<bool>& asked) {
  std::optional<std::size_t> best;
  double best_score = 0.0;
  for (std::size_t cell = 0; cell < p.size(); ++cell) {
    if (cell < asked.size() && asked[cell]) continue;
    if (p[cell] <= 0.0 || p[cell] >= 1.0) continue;
    const double score = std::abs(p[cell] - 0.5);
    if (!best || score < best_score) {
      best = cell;
      best_score = score;
    }
  }
  if (!best) throw std::domain_error("board already determined: no informative cell remains");
  return {*best / cols, *best % cols};
}

Engine::Engine(const BoardSet& boards)
    : boards_(boards), cells_(boards.config().cells()), initial_(hit_probability(boards)) {
  // Group boards by multiplicity, each group padded to whole words, so weighted
  // counts reduce to one popcount per word.
  std::vector<std::uint32_t> weights;
  for (std::size_t i = 0; i < boards.size(); ++i) weights.push_back(boards.multiplicity(i));
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
  for (std::uint32_t w : weights) {
    Group g{w, slot_board_.size() / 64, 0};
    for (std::size_t i = 0; i < boards.size(); ++i) {
      if (boards.multiplicity(i) == w) slot_board_.push_back(static_cast<std::uint32_t>(i));
    }
    while (slot_board_.size() % 64 != 0) slot_board_.push_back(kPadding);
    g.last_word = slot_board_.size() / 64;
    groups_.push_back(g);
  }
  words_ = slot_board_.size() / 64;
  valid_.assign(words_, 0);
  cell_bits_.assign(cells_ * words_, 0);
  for (std::size_t slot = 0; slot < slot_board_.size(); ++slot) {
    if (slot_board_[slot] == kPadding) continue;
    const std::uint64_t bit = std::uint64_t{1} << (slot & 63);
    valid_[slot >> 6] |= bit;
    const Board& b = boards.board(slot_board_[slot]);
    for (int k = 0; k < 2; ++k) {
      for (std::uint64_t bits = b.words()[k]; bits != 0; bits &= bits - 1) {
        const std::size_t cell = 64 * static_cast<std::size_t>(k) + static_cast<std::size_t>(std::countr_zero(bits));
        cell_bits_[cell * words_ + (slot >> 6)] |= bit;
      }
    }
  }
}

GameTranscript Engine::play(const Board& target) const {
  const auto target_index = boards_.index_of(target);
  if (!target_index) throw std::invalid_argument("target board is not in the hypothesis space");

  GameTranscript t;
  t.target_index = *target_index;
  t.initial_layouts = boards_.layout_count();
  t.initial_boards = boards_.size();
  t.initial_entropy = entropy_of(t.initial_layouts, t.initial_boards);

  HitMatrix hits = initial_;
  std::size_t remaining = boards_.size();
  std::vector<bool> asked(cells_, false);

  // Bitmap phase while a word-parallel pass beats scanning the survivors.
  const std::size_t list_threshold = cells_ * words_ / 12;
  std::vector<std::uint64_t> alive;
  bool bitmap = remaining > list_threshold;
  if (bitmap) alive = valid_;
  std::vector<std::uint32_t> list;
  if (!bitmap) {
    list.resize(boards_.size());
    std::iota(list.begin(), list.end(), 0U);
  }

  while (remaining > 1) {
    const Cell q = select_query(hits, asked);
    const std::size_t cell = q.row * boards_.config().cols + q.col;
    asked[cell] = true;
    const bool hit = target.test(cell);

    if (bitmap) {
      const std::uint64_t* cb = &cell_bits_[cell * words_];
      remaining = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        alive[w] &= hit ? cb[w] : ~cb[w];
        remaining += static_cast<std::size_t>(std::popcount(alive[w]));
      }
      if (remaining > list_threshold) {
        hits.total = 0;
        for (const Group& g : groups_) {
          std::uint64_t n = 0;
          for (std::size_t w = g.first_word; w < g.last_word; ++w) n += static_cast<std::uint64_t>(std::popcount(alive[w]));
          hits.total += n * g.weight;
        }
        for (std::size_t c = 0; c < cells_; ++c) {
          const std::uint64_t* bits = &cell_bits_[c * words_];
          std::uint64_t count = 0;
          for (const Group& g : groups_) {
            std::uint64_t n = 0;
            for (std::size_t w = g.first_word; w < g.last_word; ++w) {
              n += static_cast<std::uint64_t>(std::popcount(alive[w] & bits[w]));
            }
            count += n * g.weight;
          }
          hits.counts[c] = count;
        }
      } else {
        bitmap = false;
        list.clear();
        for (std::size_t w = 0; w < words_; ++w) {
          for (std::uint64_t bits = alive[w]; bits != 0; bits &= bits - 1) {
            list.push_back(slot_board_[64 * w + static_cast<std::size_t>(std::countr_zero(bits))]);
          }
        }
      }
    } else {
      std::erase_if(list, [&](std::uint32_t i) { return boards_.board(i).test(cell) != hit; });
      remaining = list.size();
    }

    if (!bitmap) {
      std::fill(hits.counts.begin(), hits.counts.end(), 0);
      hits.total = 0;
      for (std::uint32_t i : list) {
        const std::uint32_t w = boards_.multiplicity(i);
        hits.total += w;
        for (int k = 0; k < 2; ++k) {
          for (std::uint64_t bits = boards_.board(i).words()[k]; bits != 0; bits &= bits - 1) {
            hits.counts[64 * static_cast<std::size_t>(k) + static_cast<std::size_t>(std::countr_zero(bits))] += w;
          }
        }
      }
    }

    t.steps.push_back({q, hit, hits.total, remaining, entropy_of(hits.total, remaining)});
  }
  return t;
}

GameTranscript play_game(const Board& target, const BoardSet& initial) { return Engine(initial).play(target); }

std::vector<std::size_t> sample_targets(std::size_t board_count, std::size_t num_targets, std::uint64_t master_seed) {
  if (board_count == 0) throw std::invalid_argument("cannot sample from an empty board set");
  std::mt19937_64 rng(master_seed);
  std::vector<std::size_t> targets(num_targets);
  for (std::size_t& t : targets) t = static_cast<std::size_t>(uniform_below(rng, board_count));
  return targets;
}

ExperimentStats run_experiment(const Engine& engine, std::size_t num_targets, std::uint64_t master_seed,
                               std::size_t threads) {
  if (num_targets == 0) throw std::invalid_argument("experiment needs at least one target");
  const auto targets = sample_targets(engine.boards().size(), num_targets, master_seed);
  std::vector<GameTranscript> transcripts(num_targets);
  detail::parallel_for(num_targets, threads,
                       [&](std::size_t g) { transcripts[g] = engine.play(engine.boards().board(targets[g])); });
  return summarize_games(std::move(transcripts), engine.boards().layout_count());
}

ExperimentStats summarize_games(std::vector<GameTranscript> transcripts, std::uint64_t layouts) {
  ExperimentStats s;
  s.games = transcripts.size();
  s.theoretical_floor = layouts > 1 ? static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(layouts)))) : 0;
  if (transcripts.empty()) return s;
  double sum = 0.0;
  s.min = std::numeric_limits<std::size_t>::max();
  for (const auto& t : transcripts) {
    sum += static_cast<double>(t.total_queries());
    s.min = std::min(s.min, t.total_queries());
    s.max = std::max(s.max, t.total_queries());
  }
  s.mean = sum / static_cast<double>(s.games);
  if (s.games > 1) {
    double sq = 0.0;
    for (const auto& t : transcripts) sq += std::pow(static_cast<double>(t.total_queries()) - s.mean, 2);
    s.stddev = std::sqrt(sq / static_cast<double>(s.games - 1));
  }
  for (std::size_t lo = 0; lo <= s.max; lo += kHistogramBinWidth) s.histogram.push_back({lo, lo + kHistogramBinWidth, 0});
  for (const auto& t : transcripts) ++s.histogram[t.total_queries() / kHistogramBinWidth].count;
  s.transcripts = std::move(transcripts);
  return s;
}

}  // namespace qtree::battleship
