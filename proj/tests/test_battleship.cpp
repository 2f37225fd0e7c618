#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "qtree/battleship.hpp"

using namespace qtree::battleship;

namespace {

BoardConfig config(std::size_t rows, std::size_t cols, std::vector<std::size_t> ships) {
  BoardConfig c;
  c.rows = rows;
  c.cols = cols;
  c.ships = std::move(ships);
  return c;
}

std::vector<bool> cells_of(const Board& b, std::size_t cells) {
  std::vector<bool> out(cells);
  for (std::size_t i = 0; i < cells; ++i) out[i] = b.test(i);
  return out;
}

// Every target in the space plays the same game as the re-filtering reference.
void check_against_reference(const BoardConfig& cfg, std::size_t stride = 1) {
  const auto boards = enumerate_boards(cfg);
  const auto layouts = oracle::all_layouts(cfg.rows, cfg.cols, cfg.ships);
  REQUIRE(boards.layout_count() == layouts.size());
  const Engine engine(boards);
  for (std::size_t i = 0; i < boards.size(); i += stride) {
    const auto t = engine.play(boards.board(i));
    const auto ref = oracle::play(layouts, cells_of(boards.board(i), cfg.cells()));
    REQUIRE(t.total_queries() == ref.size());
    for (std::size_t s = 0; s < ref.size(); ++s) {
      CHECK(t.steps[s].query.row * cfg.cols + t.steps[s].query.col == ref[s].cell);
      CHECK(t.steps[s].hit == ref[s].hit);
      CHECK(t.steps[s].remaining_layouts == ref[s].layouts);
    }
    CHECK(t.steps.empty() ? t.initial_entropy == 0.0 : t.steps.back().entropy_bits == 0.0);
    CHECK(t.steps.empty() ? true : t.steps.back().remaining_boards == 1);
  }
}

}  // namespace

TEST_SUITE("battleship") {
  TEST_CASE("board bits") {
    Board b;
    b.set(0);
    b.set(99);
    CHECK(b.test(0));
    CHECK(b.test(99));
    CHECK_FALSE(b.test(50));
    CHECK(b.popcount() == 2);
    Board c;
    c.set(99);
    CHECK(b.overlaps(c));
    CHECK(c < b);
    CHECK(c.to_string(10, 10).substr(99) == ".........#\n");
  }

  TEST_CASE("placement counts") {
    CHECK(enumerate_boards(config(4, 4, {2})).layout_count() == 24);
    CHECK(enumerate_boards(config(2, 2, {2})).layout_count() == 4);
    CHECK(enumerate_boards(config(3, 3, {1})).layout_count() == 9);
    // Two length-2 ships: ordered placements, half as many distinct grids at most.
    const auto two = enumerate_boards(config(3, 3, {2, 2}));
    CHECK(two.layout_count() == oracle::all_layouts(3, 3, {2, 2}).size());
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < two.size(); ++i) total += two.multiplicity(i);
    CHECK(total == two.layout_count());
    CHECK(two.size() < two.layout_count());
  }

  TEST_CASE("impossible configurations") {
    CHECK_THROWS_AS(enumerate_boards(config(3, 3, {4})), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_boards(config(2, 2, {2, 2, 2})), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_boards(config(11, 10, {2})), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_boards(config(3, 3, {0})), std::invalid_argument);
    // Fits by cell count but not geometrically.
    CHECK_THROWS_AS(enumerate_boards(config(1, 3, {2, 1, 1, 1})), std::invalid_argument);
  }

  TEST_CASE("hit probabilities") {
    const auto boards = enumerate_boards(config(1, 3, {2}));
    const auto h = hit_probability(boards);
    CHECK(h.total == 2);
    CHECK(h.counts == std::vector<std::uint64_t>{1, 2, 1});
    CHECK(h.probability(Cell{0, 1}) == 1.0);
    CHECK_THROWS_AS(hit_probability(BoardSet(config(1, 3, {2}), {})), std::invalid_argument);
  }

  TEST_CASE("query selection") {
    HitMatrix m{1, 2, {3, 6}, 10};
    CHECK(select_query(m, {false, false}) == Cell{0, 1});
    CHECK(select_query(m, {false, true}) == Cell{0, 0});
    CHECK_THROWS_AS(select_query(m, {true, true}), std::domain_error);
    const std::vector<double> p{0.3, 0.6};
    CHECK(select_query(p, 2, {false, false}) == Cell{0, 1});
    // Ties go to the lowest row-major index.
    HitMatrix tie{2, 2, {4, 6, 6, 4}, 10};
    CHECK(select_query(tie, std::vector<bool>(4, false)) == Cell{0, 0});
    HitMatrix settled{1, 3, {0, 5, 5}, 5};
    CHECK_THROWS_AS(select_query(settled, std::vector<bool>(3, false)), std::domain_error);
  }

  TEST_CASE("engine matches the re-filtering reference on a 4x4 board with one length-2 ship") {
    check_against_reference(config(4, 4, {2}));
  }

  TEST_CASE("engine matches the reference with repeated grids") {
    check_against_reference(config(3, 4, {2, 2}));
    check_against_reference(config(4, 4, {3, 2}));
    check_against_reference(config(2, 2, {2}));
  }

  TEST_CASE("engine matches the reference across the switch to linear scans") {
    check_against_reference(config(10, 10, {2}));
    check_against_reference(config(6, 6, {2, 2}), 17);
    check_against_reference(config(5, 5, {3, 2, 1}), 97);
  }

  TEST_CASE("2x2 board, one length-2 ship") {
    const auto boards = enumerate_boards(config(2, 2, {2}));
    const Engine engine(boards);
    for (std::size_t i = 0; i < boards.size(); ++i) {
      const auto t = engine.play(boards.board(i));
      CHECK(t.total_queries() >= 1);
      CHECK(t.total_queries() <= 4);
      CHECK(t.initial_entropy == doctest::Approx(2.0));
      for (const auto& s : t.steps) CHECK(boards.board(i).test(s.query.row * 2 + s.query.col) == s.hit);
    }
    Board outside;
    outside.set(0);
    CHECK_THROWS_AS(engine.play(outside), std::invalid_argument);
  }

  TEST_CASE("single-layout space needs no queries") {
    const auto boards = enumerate_boards(config(1, 2, {2}));
    const auto t = play_game(boards.board(0), boards);
    CHECK(t.total_queries() == 0);
    CHECK(t.initial_entropy == 0.0);
  }

  TEST_CASE("experiments are seeded and thread-independent") {
    const auto boards = enumerate_boards(config(5, 5, {3, 2}));
    const Engine engine(boards);
    const auto a = run_experiment(engine, 60, 7, 1);
    const auto b = run_experiment(engine, 60, 7, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.stddev == b.stddev);
    for (std::size_t i = 0; i < a.transcripts.size(); ++i) CHECK(a.transcripts[i].target_index == b.transcripts[i].target_index);
    const auto c = run_experiment(engine, 60, 8, 1);
    CHECK(c.transcripts[0].target_index != a.transcripts[0].target_index);
    CHECK(sample_targets(boards.size(), 60, 7) == sample_targets(boards.size(), 60, 7));
  }

  TEST_CASE("summary statistics") {
    std::vector<GameTranscript> games(3);
    games[0].steps.resize(2);
    games[1].steps.resize(4);
    games[2].steps.resize(9);
    const auto s = summarize_games(games, 1850736);
    CHECK(s.games == 3);
    CHECK(s.mean == doctest::Approx(5.0));
    CHECK(s.stddev == doctest::Approx(std::sqrt(13.0)));  // sample variance (9 + 1 + 16) / 2
    CHECK(s.min == 2);
    CHECK(s.max == 9);
    CHECK(s.theoretical_floor == 21);
    REQUIRE(s.histogram.size() == 5);
    CHECK(s.histogram[1].lo == 2);
    CHECK(s.histogram[1].count == 1);
    CHECK(s.histogram[2].count == 1);
    CHECK(s.histogram[4].count == 1);
  }
}
