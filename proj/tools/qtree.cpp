#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtree/battleship.hpp"
#include "qtree/codes.hpp"
#include "qtree/decision_set.hpp"
#include "qtree/dna.hpp"
#include "qtree/io.hpp"
#include "qtree/solvers.hpp"
#include "qtree/svg.hpp"

namespace fs = std::filesystem;
namespace bs = qtree::battleship;
using nlohmann::json;

namespace {

struct Global {
  std::uint64_t seed = 42;
  std::string out;
  std::string format;  // empty: human-readable report
  std::size_t threads = std::max(1U, std::thread::hardware_concurrency());
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) throw IoError("cannot write " + path.string());
}

template <typename F>
std::string render(F&& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

// Refuses to emit a tree that its decision set cannot realize.
std::string checked_tree_json(const qtree::DecisionTree& t, const qtree::DecisionSet& a) {
  if (!qtree::validate_tree(t, a).feasible) throw std::logic_error("refusing to emit an infeasible tree");
  return qtree::io::tree_to_json(t);
}

std::string checked_result_json(const qtree::SolveResult& r, const qtree::DecisionSet& a) {
  if (!qtree::validate_tree(r.tree, a).feasible) throw std::logic_error("refusing to emit an infeasible tree");
  return qtree::io::result_to_json(r);
}

std::string fmt(double x, int digits = 4) { return qtree::io::format_number(x, digits); }

std::string wine_set_label(std::size_t bottles, qtree::OutcomeSet s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t x : s) {
    out += (first ? "" : ",") + qtree::wine_pair_label(bottles, x);
    first = false;
  }
  return out + "}";
}

// ---- wine -------------------------------------------------------------------

int cmd_wine(const Global& g) {
  using qtree::Rational;
  const qtree::Distribution d1(std::vector<Rational>{{8, 23}, {6, 23}, {4, 23}, {2, 23}, {2, 23}, {1, 23}});
  const auto a1 = qtree::DecisionSet::unconstrained(6);
  const auto huff1 = qtree::huffman_tree(d1);
  const auto opt1 = qtree::brute_force_optimal(d1, a1);

  const qtree::Distribution d2(
      std::vector<Rational>{Rational::parse("0.1"), Rational::parse("0.1"), Rational::parse("0.15"),
                            Rational::parse("0.15"), Rational::parse("0.3"), Rational::parse("0.2")});
  const auto a2 = qtree::DecisionSet::wine_pairs(4);
  const auto huff2 = qtree::huffman_tree(d2);
  const Rational huff2_len = qtree::expected_depth_exact(huff2, d2);
  const auto report = qtree::validate_tree(huff2, a2);
  const bool root_infeasible =
      std::any_of(report.violations.begin(), report.violations.end(), [](const auto& v) { return v.node == 0; });
  const auto opt2 = qtree::brute_force_optimal(d2, a2);

  if (!g.out.empty()) {
    const fs::path dir(g.out);
    write_file(dir / "wine_example1_tree.json", checked_tree_json(opt1.tree, a1));
    write_file(dir / "wine_example2_tree.json", checked_tree_json(opt2.tree, a2));
  }

  if (g.format == "json") {
    json j;
    j["example1"] = {{"huffman", qtree::expected_depth_exact(huff1, d1).to_string()},
                     {"optimum", opt1.exact_len->to_string()},
                     {"optimum_value", opt1.expected_len}};
    json violations = json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"node", v.node},
                            {"candidates", wine_set_label(4, v.candidates)},
                            {"left", wine_set_label(4, v.left)}});
    }
    j["example2"] = {{"huffman", huff2_len.to_string()},
                     {"huffman_feasible", report.feasible},
                     {"infeasible_at_root", root_infeasible},
                     {"violations", violations},
                     {"optimum", opt2.exact_len->to_string()},
                     {"optimum_value", opt2.expected_len},
                     {"tree", json::parse(checked_tree_json(opt2.tree, a2))}};
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  if (g.format == "csv") {
    std::cout << "example,quantity,exact,value\n";
    std::cout << "1,huffman," << qtree::expected_depth_exact(huff1, d1) << ',' << fmt(qtree::expected_depth(huff1, d1), 6)
              << '\n';
    std::cout << "1,optimum," << *opt1.exact_len << ',' << fmt(opt1.expected_len, 6) << '\n';
    std::cout << "2,huffman_infeasible," << huff2_len << ',' << fmt(huff2_len.to_double(), 6) << '\n';
    std::cout << "2,optimum," << *opt2.exact_len << ',' << fmt(opt2.expected_len, 6) << '\n';
    return 0;
  }
  if (!g.format.empty()) throw CLI::ValidationError("--format", "wine supports csv or json");

  std::cout << "Example 1: one bad bottle among six, p = (8,6,4,2,2,1)/23, any mixture allowed\n";
  std::cout << "  Huffman expected tastings  " << qtree::expected_depth_exact(huff1, d1) << " = "
            << fmt(qtree::expected_depth(huff1, d1)) << '\n';
  std::cout << "  brute-force optimum        " << *opt1.exact_len << " = " << fmt(opt1.expected_len) << '\n';
  std::cout << "\nExample 2: two bad bottles among four, p(12,13,14,23,24,34) = (0.1,0.1,0.15,0.15,0.3,0.2)\n";
  std::cout << "  Huffman expected length    " << huff2_len << " = " << fmt(huff2_len.to_double()) << "  ("
            << (report.feasible ? "feasible" : "INFEASIBLE") << ")\n";
  for (const auto& v : report.violations) {
    std::cout << "    node " << v.node << (v.node == 0 ? " (root)" : "") << ": no mixture separates "
              << wine_set_label(4, v.left) << " from " << wine_set_label(4, v.candidates - v.left) << '\n';
  }
  std::cout << "  feasible optimum           " << *opt2.exact_len << " = " << fmt(opt2.expected_len)
            << (*opt2.exact_len > huff2_len ? "" : "  (ties among Huffman trees leave a feasible one)") << '\n';
  std::cout << "  optimal tasting plan       " << checked_tree_json(opt2.tree, a2) << '\n';
  return 0;
}

// ---- codes ------------------------------------------------------------------

int cmd_codes(const Global& g, const std::string& file) {
  const auto d = qtree::io::read_distribution(file);
  const auto a = qtree::DecisionSet::unconstrained(d.size());
  const double h = qtree::entropy(d);
  const auto huff = qtree::huffman_tree(d);
  const double l_huff = qtree::expected_depth(huff, d);
  const auto gb = qtree::gbsc(d, a);
  const double l_shannon = qtree::shannon_length(d);
  constexpr double tol = qtree::kProbabilityTolerance;
  const bool chain = h <= l_huff + tol && l_huff <= gb.expected_len + tol && gb.expected_len <= l_shannon + tol;
  const bool upper = gb.expected_len < h + 1;

  std::optional<qtree::Rational> exact_huff;
  std::optional<qtree::Rational> exact_shannon;
  if (d.is_exact()) {
    exact_huff = qtree::expected_depth_exact(huff, d);
    exact_shannon = qtree::shannon_length_exact(d);
  }

  if (!g.out.empty()) {
    const fs::path dir(g.out);
    write_file(dir / "huffman_tree.json", checked_tree_json(huff, a));
    write_file(dir / "gbsc_result.json", checked_result_json(gb, a));
  }

  if (g.format == "json") {
    json j{{"n", d.size()},
           {"exact", d.is_exact()},
           {"entropy", h},
           {"huffman", l_huff},
           {"gbsc", gb.expected_len},
           {"shannon", l_shannon},
           {"chain_holds", chain},
           {"gbsc_below_entropy_plus_one", upper}};
    if (exact_huff) {
      j["huffman_exact"] = exact_huff->to_string();
      j["gbsc_exact"] = gb.exact_len->to_string();
      j["shannon_exact"] = exact_shannon->to_string();
    }
    std::cout << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    std::cout << "n,entropy,huffman,gbsc,shannon,chain_holds,gbsc_below_entropy_plus_one\n";
    std::cout << d.size() << ',' << fmt(h, 6) << ',' << fmt(l_huff, 6) << ',' << fmt(gb.expected_len, 6) << ','
              << fmt(l_shannon, 6) << ',' << (chain ? "true" : "false") << ',' << (upper ? "true" : "false") << '\n';
  } else if (g.format.empty()) {
    auto exact = [&](const std::optional<qtree::Rational>& r) { return r ? "  (" + r->to_string() + ")" : ""; };
    std::cout << "symbols  " << d.size() << (d.is_exact() ? "  (exact)" : "") << '\n';
    std::cout << "entropy  " << fmt(h) << '\n';
    std::cout << "Huffman  " << fmt(l_huff) << exact(exact_huff) << '\n';
    std::cout << "GBSC     " << fmt(gb.expected_len) << exact(gb.exact_len) << '\n';
    std::cout << "Shannon  " << fmt(l_shannon) << exact(exact_shannon) << '\n';
    std::cout << "H <= Huffman <= GBSC <= Shannon  " << (chain ? "holds" : "VIOLATED") << '\n';
    std::cout << "GBSC < H + 1                     " << (upper ? "holds" : "VIOLATED") << '\n';
  } else {
    throw CLI::ValidationError("--format", "codes supports csv or json");
  }
  return chain && upper ? 0 : 2;
}

// ---- solve ------------------------------------------------------------------

int cmd_solve(const Global& g, const std::string& file, const std::string& set, const std::string& algo,
              std::uint64_t budget) {
  const auto d = qtree::io::read_distribution(file);
  std::optional<qtree::DecisionSet> a;
  if (set == "unconstrained") {
    a = qtree::DecisionSet::unconstrained(d.size());
  } else if (set == "interval") {
    a = qtree::DecisionSet::interval(d.size());
  } else if (set.rfind("wine:", 0) == 0) {
    a = qtree::DecisionSet::wine_pairs(std::stoul(set.substr(5)));
  } else {
    throw CLI::ValidationError("--set", "expected unconstrained, interval or wine:B");
  }
  if (a->alphabet_size() != d.size()) {
    throw CLI::ValidationError("--set", "decision set has " + std::to_string(a->alphabet_size()) +
                                            " outcomes but the distribution has " + std::to_string(d.size()));
  }
  qtree::SolveResult r = [&] {
    if (algo == "brute") return qtree::brute_force_optimal(d, *a);
    if (algo == "gbsc") return qtree::gbsc(d, *a);
    qtree::GreedyOptions opts;
    opts.budget = budget;
    if (set == "interval") return qtree::dna::dna_greedy_huffman(d, opts);
    return qtree::greedy_huffman(d, *a, opts);
  }();
  const std::string text = checked_result_json(r, *a);
  if (!g.out.empty()) write_file(fs::path(g.out) / ("solve_" + algo + ".json"), text + "\n");
  std::cout << text << '\n';
  return 0;
}

// ---- dna-compare ------------------------------------------------------------

struct DnaArgs {
  std::size_t n = 6;
  std::size_t instances = 10000;
  bool no_brute = false;
  bool deterministic = false;
  std::vector<std::size_t> sweep;
  std::size_t sweep_seeds = 100;
  std::uint64_t budget = qtree::kDefaultMergeBudget;
};

std::string gap_histogram_svg(std::span<const qtree::dna::ComparisonRow> rows) {
  constexpr double width = 0.02;
  double max_gap = 0;
  for (const auto& r : rows) max_gap = std::max(max_gap, r.gap.value_or(0));
  std::vector<qtree::svg::Bar> bars;
  const auto nbins = static_cast<std::size_t>(std::floor(max_gap / width)) + 1;
  for (std::size_t i = 0; i < nbins; ++i) bars.push_back({i * width, (i + 1) * width, 0});
  for (const auto& r : rows) {
    if (r.gap) bars[std::min(nbins - 1, static_cast<std::size_t>(*r.gap / width))].value += 1;
  }
  return qtree::svg::histogram({"Greedy Huffman gap to optimum", "relative gap", "instances"}, bars);
}

int cmd_dna(const Global& g, const DnaArgs& args) {
  if (!args.sweep.empty()) {
    qtree::GreedyOptions opts;
    opts.budget = args.budget;
    const auto points = qtree::dna::run_runtime_sweep(args.sweep, args.sweep_seeds, g.seed, opts);
    const std::string csv = render([&](std::ostream& os) { qtree::dna::write_runtime_csv(os, points); });
    std::vector<double> x, y;
    for (const auto& p : points) {
      x.push_back(static_cast<double>(p.n));
      y.push_back(p.mean_t_gbsc_ns);
    }
    const double r2 = qtree::dna::linear_fit_r2(x, y);
    if (!g.out.empty()) {
      const fs::path path = fs::path(g.out).extension() == ".csv" ? fs::path(g.out) : fs::path(g.out) / "dna_runtime.csv";
      write_file(path, csv);
    }
    if (g.format == "csv" || (g.format.empty() && g.out.empty())) std::cout << csv;
    std::cerr << "GBSC linear fit R^2 = " << fmt(r2) << '\n';
    return 0;
  }

  qtree::dna::ComparisonConfig cfg;
  cfg.n = args.n;
  cfg.instances = args.instances;
  cfg.seed = g.seed;
  cfg.brute_force = !args.no_brute;
  cfg.threads = g.threads;
  cfg.greedy.budget = args.budget;
  const auto rows = qtree::dna::run_comparison(cfg);
  const auto s = qtree::dna::summarize(rows);
  const std::string csv =
      render([&](std::ostream& os) { qtree::dna::write_comparison_csv(os, rows, !args.deterministic); });

  if (!g.out.empty()) {
    const fs::path out(g.out);
    const fs::path csv_path = out.extension() == ".csv" ? out : out / "dna_compare.csv";
    write_file(csv_path, csv);
    if (cfg.brute_force) {
      write_file(csv_path.parent_path() / (csv_path.stem().string() + "_gaps.svg"), gap_histogram_svg(rows));
    }
  }

  json summary{{"instances", s.instances},
               {"n", cfg.n},
               {"seed", cfg.seed},
               {"greedy_failures", s.greedy_failures},
               {"mean_l_greedy", s.mean_l_greedy},
               {"mean_l_gbsc", s.mean_l_gbsc}};
  if (cfg.brute_force) {
    summary["zero_gap_fraction"] = s.zero_gap_fraction;
    summary["median_gap"] = s.median_gap;
    summary["p90_gap"] = s.p90_gap;
    summary["max_gap"] = s.max_gap;
    summary["mean_gap"] = s.mean_gap;
    summary["mean_l_brute"] = s.mean_l_brute;
  }
  if (!args.deterministic) {
    summary["mean_t_huffman_ns"] = s.mean_t_huffman_ns;
    summary["mean_t_gbsc_ns"] = s.mean_t_gbsc_ns;
  }

  if (g.format == "json") {
    std::cout << summary.dump(2) << '\n';
  } else if (g.format == "csv") {
    std::cout << csv;
  } else if (g.format == "svg") {
    if (!cfg.brute_force) throw CLI::ValidationError("--format", "the gap plot needs the brute-force column");
    std::cout << gap_histogram_svg(rows);
  } else {
    std::cout << "DNA interval detection, n=" << cfg.n << ", " << s.instances << " instances, seed " << cfg.seed
              << '\n';
    if (cfg.brute_force) {
      std::cout << "  zero-gap fraction  " << fmt(s.zero_gap_fraction) << '\n';
      std::cout << "  gap median / p90 / max  " << fmt(s.median_gap) << " / " << fmt(s.p90_gap) << " / "
                << fmt(s.max_gap) << '\n';
      std::cout << "  mean L brute force " << fmt(s.mean_l_brute) << '\n';
    }
    std::cout << "  mean L greedy      " << fmt(s.mean_l_greedy) << "  (" << s.greedy_failures << " failures)\n";
    std::cout << "  mean L GBSC        " << fmt(s.mean_l_gbsc) << '\n';
    if (!args.deterministic) {
      std::cout << "  mean time greedy / GBSC  " << fmt(s.mean_t_huffman_ns, 0) << " ns / " << fmt(s.mean_t_gbsc_ns, 0)
                << " ns\n";
    }
  }
  return 0;
}

// ---- battleship -------------------------------------------------------------

struct BoardArgs {
  std::vector<std::size_t> ships{5, 4, 3};
  std::size_t rows = 10;
  std::size_t cols = 10;
};

bs::BoardSet make_boards(const BoardArgs& b) {
  bs::BoardConfig cfg;
  cfg.rows = b.rows;
  cfg.cols = b.cols;
  cfg.ships = b.ships;
  return bs::enumerate_boards(cfg);
}

std::string entropy_svg(std::span<const bs::GameTranscript> games, std::uint64_t layouts) {
  std::vector<qtree::svg::Series> series;
  for (const auto& t : games) {
    qtree::svg::Series s;
    s.points.emplace_back(0, t.initial_entropy);
    for (std::size_t i = 0; i < t.steps.size(); ++i) s.points.emplace_back(i + 1, t.steps[i].entropy_bits);
    s.opacity = games.size() > 50 ? 0.08 : 0.5;
    series.push_back(std::move(s));
  }
  // One bit per query at best: log2 n down to 0 in ceil(log2 n) queries.
  const double h0 = layouts > 1 ? std::log2(static_cast<double>(layouts)) : 0.0;
  qtree::svg::Series ref;
  ref.points = {{0, h0}, {std::ceil(h0), 0}};
  ref.color = "#d62728";
  ref.opacity = 1;
  ref.dashed = true;
  series.push_back(ref);
  return qtree::svg::line_plot({"Entropy of the remaining boards", "queries", "bits"}, series);
}

std::string histogram_svg(const bs::ExperimentStats& s) {
  std::vector<qtree::svg::Bar> bars;
  for (const auto& b : s.histogram) {
    bars.push_back({static_cast<double>(b.lo), static_cast<double>(b.hi), static_cast<double>(b.count)});
  }
  return qtree::svg::histogram({"Queries per game", "queries", "games"}, bars, s.mean);
}

int cmd_bench(const Global& g, const BoardArgs& b, std::size_t games) {
  const auto boards = make_boards(b);
  const bs::Engine engine(boards);
  const auto stats = bs::run_experiment(engine, games, g.seed, g.threads);

  const std::string stats_csv = render([&](std::ostream& os) { qtree::io::write_stats_csv(os, stats, boards); });
  if (!g.out.empty()) {
    const fs::path out(g.out);
    fs::path dir = out;
    std::string prefix;
    fs::path stats_path = out / "stats.csv";
    if (out.extension() == ".csv") {
      dir = out.parent_path();
      prefix = out.stem().string() + "_";
      stats_path = out;
    }
    write_file(stats_path, stats_csv);
    write_file(dir / (prefix + "histogram.csv"),
               render([&](std::ostream& os) { qtree::io::write_histogram_csv(os, stats.histogram); }));
    write_file(dir / (prefix + "entropy_trace.csv"),
               render([&](std::ostream& os) { qtree::io::write_entropy_trace_csv(os, stats.transcripts); }));
    write_file(dir / (prefix + "transcripts.jsonl"), render([&](std::ostream& os) {
                 qtree::io::write_transcripts_jsonl(os, stats.transcripts, b.cols);
               }));
    write_file(dir / (prefix + "histogram.svg"), histogram_svg(stats));
    write_file(dir / (prefix + "entropy_trace.svg"), entropy_svg(stats.transcripts, boards.layout_count()));
  }

  if (g.format == "csv") {
    std::cout << stats_csv;
  } else if (g.format == "json") {
    json hist = json::array();
    for (const auto& h : stats.histogram) hist.push_back({{"lo", h.lo}, {"hi", h.hi}, {"count", h.count}});
    std::cout << json{{"games", stats.games},
                      {"seed", g.seed},
                      {"layouts", boards.layout_count()},
                      {"distinct_boards", boards.size()},
                      {"mean", stats.mean},
                      {"stddev", stats.stddev},
                      {"min", stats.min},
                      {"max", stats.max},
                      {"theoretical_floor", stats.theoretical_floor},
                      {"histogram", hist}}
                     .dump(2)
              << '\n';
  } else if (g.format == "svg") {
    std::cout << entropy_svg(stats.transcripts, boards.layout_count());
  } else {
    std::cout << "layouts (placement tuples)  " << boards.layout_count() << '\n';
    std::cout << "distinct boards             " << boards.size() << '\n';
    std::cout << "initial entropy             " << fmt(std::log2(static_cast<double>(boards.layout_count()))) << " bits\n";
    std::cout << "games                       " << stats.games << " (seed " << g.seed << ")\n";
    std::cout << "mean queries                " << fmt(stats.mean, 3) << '\n';
    std::cout << "standard deviation          " << fmt(stats.stddev, 3) << '\n';
    std::cout << "min / max                   " << stats.min << " / " << stats.max << '\n';
    std::cout << "theoretical floor           " << stats.theoretical_floor << '\n';
  }
  return 0;
}

int cmd_play(const Global& g, const BoardArgs& b, std::uint64_t target_seed) {
  const auto boards = make_boards(b);
  const bs::Engine engine(boards);
  const std::size_t target = bs::sample_targets(boards.size(), 1, target_seed).front();
  const auto t = engine.play(boards.board(target));
  const std::vector<bs::GameTranscript> one{t};

  if (!g.out.empty()) {
    const fs::path dir(g.out);
    write_file(dir / "transcript.jsonl",
               render([&](std::ostream& os) { qtree::io::write_transcripts_jsonl(os, one, b.cols); }));
    write_file(dir / "entropy_trace.csv",
               render([&](std::ostream& os) { qtree::io::write_entropy_trace_csv(os, one); }));
    write_file(dir / "entropy_trace.svg", entropy_svg(one, boards.layout_count()));
  }

  if (g.format == "json") {
    qtree::io::write_transcripts_jsonl(std::cout, one, b.cols);
  } else if (g.format == "csv") {
    qtree::io::write_entropy_trace_csv(std::cout, one);
  } else if (g.format == "svg") {
    std::cout << entropy_svg(one, boards.layout_count());
  } else {
    std::cout << "target board " << target << " (seed " << target_seed << ")\n"
              << boards.board(target).to_string(b.rows, b.cols) << '\n';
    std::cout << "  t  cell  answer  layouts  boards  entropy\n";
    std::cout << "  0                " << t.initial_layouts << "  " << t.initial_boards << "  "
              << fmt(t.initial_entropy) << '\n';
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const auto& s = t.steps[i];
      char cell[16];
      std::snprintf(cell, sizeof cell, "%c%zu", static_cast<char>('A' + s.query.row), s.query.col + 1);
      std::cout << "  " << i + 1 << "  " << cell << "  " << (s.hit ? "hit " : "miss") << "  " << s.remaining_layouts
                << "  " << s.remaining_boards << "  " << fmt(s.entropy_bits) << '\n';
    }
    std::cout << "queries: " << t.total_queries() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision trees under constrained queries: worked examples, DNA interval detection, Battleship."};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Master seed for every random draw")->capture_default_str();
  app.add_option("--out", g.out, "Output directory (battleship bench also accepts a stats .csv path)");
  app.add_option("--format", g.format, "Stdout format; default is a readable report")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  auto* wine = app.add_subcommand("wine", "Bad-wine worked examples");

  std::string codes_file;
  auto* codes = app.add_subcommand("codes", "Entropy, Huffman, GBSC and Shannon lengths of a distribution file");
  codes->add_option("FILE", codes_file, "One probability per line")->required();

  std::string solve_file, solve_set = "unconstrained", solve_algo = "brute";
  std::uint64_t budget = qtree::kDefaultMergeBudget;
  auto* solve = app.add_subcommand("solve", "Build a decision tree for a distribution file");
  solve->add_option("FILE", solve_file)->required();
  solve->add_option("--set", solve_set, "unconstrained | interval | wine:B")->capture_default_str();
  solve->add_option("--algo", solve_algo)->check(CLI::IsMember({"brute", "greedy", "gbsc"}))->capture_default_str();
  solve->add_option("--budget", budget, "Merge-state cap for the greedy search")->capture_default_str();

  DnaArgs dna;
  auto* dna_cmd = app.add_subcommand("dna-compare", "Greedy Huffman vs brute force vs GBSC on interval queries");
  dna_cmd->add_option("--n", dna.n, "Sequence length")->check(CLI::Range(1, 64))->capture_default_str();
  dna_cmd->add_option("--instances", dna.instances)->capture_default_str();
  dna_cmd->add_flag("--no-brute", dna.no_brute, "Skip the brute-force column");
  dna_cmd->add_flag("--deterministic", dna.deterministic, "Leave timing columns empty");
  dna_cmd->add_option("--sweep", dna.sweep, "Runtime sweep over these lengths instead")->delimiter(',');
  dna_cmd->add_option("--sweep-seeds", dna.sweep_seeds, "Instances per sweep length")->capture_default_str();
  dna_cmd->add_option("--budget", dna.budget, "Merge-state cap for the greedy search")->capture_default_str();

  BoardArgs board;
  std::size_t games = 1000;
  std::uint64_t target_seed = 0;
  auto* battle = app.add_subcommand("battleship", "One-player Battleship");
  battle->require_subcommand(1);
  auto add_board = [&](CLI::App* c) {
    c->add_option("--ships", board.ships, "Ship lengths")->delimiter(',')->capture_default_str();
    c->add_option("--rows", board.rows)->capture_default_str();
    c->add_option("--cols", board.cols)->capture_default_str();
  };
  auto* bench = battle->add_subcommand("bench", "Play seeded games and report query statistics");
  bench->add_option("--games", games)->check(CLI::PositiveNumber)->capture_default_str();
  add_board(bench);
  auto* play = battle->add_subcommand("play", "Play one game against a seeded target");
  play->add_option("--target-seed", target_seed)->required();
  add_board(play);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*wine) return cmd_wine(g);
    if (*codes) return cmd_codes(g, codes_file);
    if (*solve) return cmd_solve(g, solve_file, solve_set, solve_algo, budget);
    if (*dna_cmd) return cmd_dna(g, dna);
    if (*bench) return cmd_bench(g, board, games);
    if (*play) return cmd_play(g, board, target_seed);
  } catch (const qtree::SolveError& e) {
    std::cerr << "error (" << qtree::to_string(e.kind()) << "): " << e.what() << '\n';
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
