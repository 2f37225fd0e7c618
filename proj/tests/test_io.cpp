#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "qtree/codes.hpp"
#include "qtree/io.hpp"
#include "qtree/svg.hpp"

using namespace qtree;

TEST_SUITE("io") {
  TEST_CASE("distribution files") {
    std::istringstream exact("# example\n0.1\n\n0.2\n  3/10 \n0.4\n");
    const auto d = io::parse_distribution(exact);
    CHECK(d.size() == 4);
    CHECK(d.is_exact());
    CHECK(d.exact()[2] == Rational(3, 10));

    std::istringstream thirds("0.3333333333\n0.3333333333\n0.3333333334\n");
    CHECK(io::parse_distribution(thirds).is_exact());

    std::istringstream approx("0.33333333333\n0.33333333333\n0.33333333333\n");
    const auto f = io::parse_distribution(approx);
    CHECK_FALSE(f.is_exact());
    CHECK(f.size() == 3);
  }

  TEST_CASE("distribution parse errors carry line numbers") {
    std::istringstream bad("# header\n0.5\nabc\n");
    try {
      io::parse_distribution(bad);
      FAIL("expected a parse error");
    } catch (const io::ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::istringstream zero("0.5\n0\n0.5\n");
    CHECK_THROWS_AS(io::parse_distribution(zero), io::ParseError);
    std::istringstream sum("0.5\n0.6\n");
    CHECK_THROWS_AS(io::parse_distribution(sum), io::ParseError);
    std::istringstream empty("# nothing\n\n");
    CHECK_THROWS_AS(io::parse_distribution(empty), io::ParseError);
    CHECK_THROWS_AS(io::read_distribution("/nonexistent/file.txt"), std::runtime_error);
  }

  TEST_CASE("tree JSON round trip") {
    const Distribution d(std::vector<Rational>{{8, 23}, {6, 23}, {4, 23}, {2, 23}, {2, 23}, {1, 23}});
    const auto t = huffman_tree(d);
    const std::string text = io::tree_to_json(t);
    const auto j = nlohmann::json::parse(text);
    CHECK(j.contains("query"));
    CHECK(j["left"].is_object());
    const auto back = io::tree_from_json(text, 6);
    REQUIRE(back.nodes().size() == t.nodes().size());
    for (std::size_t i = 0; i < t.nodes().size(); ++i) {
      CHECK(back.nodes()[i].candidates == t.nodes()[i].candidates);
      CHECK(back.nodes()[i].query == t.nodes()[i].query);
    }
    CHECK(io::tree_to_json(io::tree_from_json(R"({"outcome":0})", 1)) == R"({"outcome":0})");
  }

  TEST_CASE("malformed tree JSON") {
    CHECK_THROWS_AS(io::tree_from_json("{", 2), io::ParseError);
    CHECK_THROWS_AS(io::tree_from_json(R"({"outcome":5})", 2), io::ParseError);
    CHECK_THROWS_AS(io::tree_from_json(R"({"query":[0],"left":{"outcome":0}})", 2), io::ParseError);
    CHECK_THROWS_AS(io::tree_from_json(R"({"query":[1],"left":{"outcome":0},"right":{"outcome":1}})", 2),
                    std::invalid_argument);
  }

  TEST_CASE("solve result JSON") {
    const auto r = gbsc(Distribution(std::vector<Rational>{{1, 2}, {1, 4}, {1, 4}}), DecisionSet::unconstrained(3));
    const auto j = nlohmann::json::parse(io::result_to_json(r));
    CHECK(j["expected_len"].get<double>() == doctest::Approx(1.5));
    CHECK(j["exact_len"] == "3/2");
    CHECK(j["stats"].contains("nodes_explored"));
    CHECK(j["stats"].contains("wall_time"));
    CHECK(j["stats"].contains("backtracks"));
    CHECK(j["tree"].contains("query"));
  }

  TEST_CASE("battleship writers") {
    battleship::GameTranscript t;
    t.initial_entropy = 2.0;
    t.initial_layouts = 4;
    t.initial_boards = 4;
    t.steps.push_back({{0, 1}, false, 2, 2, 1.0});
    t.steps.push_back({{1, 0}, true, 1, 1, 0.0});
    const std::vector<battleship::GameTranscript> games{t, t};

    std::ostringstream trace;
    io::write_entropy_trace_csv(trace, games);
    CHECK(trace.str() ==
          "game_id,t,entropy_bits\n0,0,2.000000\n0,1,1.000000\n0,2,0.000000\n1,0,2.000000\n1,1,1.000000\n1,2,0.000000\n");

    std::ostringstream jsonl;
    io::write_transcripts_jsonl(jsonl, games, 2);
    std::istringstream lines(jsonl.str());
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
      const auto j = nlohmann::json::parse(line);
      CHECK(j["game_id"] == count);
      CHECK(j["queries"] == 2);
      CHECK(j["steps"][1]["cell"] == 2);
      CHECK(j["steps"][1]["hit"] == true);
      ++count;
    }
    CHECK(count == 2);

    std::ostringstream hist;
    io::write_histogram_csv(hist, std::vector<battleship::HistogramBin>{{0, 2, 1}, {2, 4, 3}});
    CHECK(hist.str() == "bin_lo,bin_hi,count\n0,2,1\n2,4,3\n");
  }

  TEST_CASE("svg output") {
    svg::Series s;
    s.points = {{0, 3}, {1, 2}, {2, 0}};
    const std::string line = svg::line_plot({"A <title>", "x", "y"}, std::vector<svg::Series>{s});
    CHECK(line.rfind("<svg", 0) == 0);
    CHECK(line.find("<polyline") != std::string::npos);
    CHECK(line.find("A &lt;title&gt;") != std::string::npos);
    CHECK(line.find("</svg>") != std::string::npos);
    const std::string bars = svg::histogram({"h", "x", "y"}, std::vector<svg::Bar>{{0, 2, 3}, {2, 4, 0}, {4, 6, 1}}, 3);
    std::size_t rects = 0;
    for (std::size_t pos = 0; (pos = bars.find("<rect x=", pos)) != std::string::npos; ++pos) ++rects;
    CHECK(rects == 2);
    CHECK(bars.find("stroke-dasharray") != std::string::npos);
  }
}
