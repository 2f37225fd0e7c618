#include "qtree/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>


namespace qtree::io {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double parse_double(const std::string& text, std::size_t line) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double num = std::stod(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument("trailing characters");
      const std::string den_text = text.substr(slash + 1);
      const double den = std::stod(den_text, &used);
      if (used != den_text.size() || den == 0.0) throw std::invalid_argument("bad denominator");
      return num / den;
    }
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "not a probability: '" + text + "'");
  }
}

json node_json(const DecisionTree& t, std::size_t i) {
  const TreeNode& n = t.nodes()[i];
  if (n.is_leaf()) return json{{"outcome", n.outcome}};
  json query = json::array();
  for (std::size_t x : n.query) query.push_back(x);
  return json{{"query", query}, {"left", node_json(t, n.left)}, {"right", node_json(t, n.right)}};
}

std::size_t build_node(const json& j, DecisionTree::Builder& b, std::size_t n) {
  if (!j.is_object()) throw ParseError(0, "tree node must be an object");
  if (j.contains("outcome")) {
    const auto x = j.at("outcome").get<std::size_t>();
    if (x >= n) throw ParseError(0, "outcome " + std::to_string(x) + " outside alphabet");
    return b.leaf(x);
  }
  if (!j.contains("query") || !j.contains("left") || !j.contains("right")) {
    throw ParseError(0, "internal node needs query, left and right");
  }
  OutcomeSet q;
  for (const auto& x : j.at("query")) {
    const auto v = x.get<std::size_t>();
    if (v >= n) throw ParseError(0, "query outcome " + std::to_string(v) + " outside alphabet");
    q.insert(v);
  }
  const std::size_t left = build_node(j.at("left"), b, n);
  const std::size_t right = build_node(j.at("right"), b, n);
  return b.internal(q, left, right);
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& detail, const std::string& source)
    : std::runtime_error((source.empty() ? "" : source + ": ") + (line > 0 ? "line " + std::to_string(line) + ": " : "") +
                         detail),
      line_(line),
      detail_(detail) {}

Distribution parse_distribution(std::istream& in) {
  std::vector<double> probs;
  std::vector<Rational> exact;
  bool all_exact = true;
  std::string raw;
  std::size_t line = 0;
  std::size_t last_line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    last_line = line;
    const double p = parse_double(text, line);
    if (!(p > 0.0)) throw ParseError(line, "probabilities must be positive, got '" + text + "'");
    probs.push_back(p);
    if (all_exact) {
      try {
        exact.push_back(Rational::parse(text));
      } catch (const std::exception&) {
        all_exact = false;
      }
    }
  }
  if (probs.empty()) throw ParseError(0, "distribution file has no entries");
  if (all_exact) {
    try {
      Rational sum;
      for (const Rational& r : exact) sum += r;
      if (sum == Rational(1)) return Distribution(std::move(exact));
    } catch (const std::overflow_error&) {
    }
  }
  try {
    return Distribution(std::move(probs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(last_line, e.what());
  }
}

Distribution read_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return parse_distribution(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path);
  }
}

std::string tree_to_json(const DecisionTree& t, int indent) { return node_json(t, 0).dump(indent); }

DecisionTree tree_from_json(const std::string& text, std::size_t alphabet_size) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  DecisionTree::Builder b(alphabet_size);
  try {
    const std::size_t root = build_node(j, b, alphabet_size);
    return b.finish(root);
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed tree: ") + e.what());
  }
}

std::string result_to_json(const SolveResult& r, int indent) {
  json j;
  j["expected_len"] = r.expected_len;
  if (r.exact_len) j["exact_len"] = r.exact_len->to_string();
  j["stats"] = {{"nodes_explored", r.stats.nodes_explored},
                {"wall_time", r.stats.wall_time},
                {"backtracks", r.stats.backtracks}};
  j["tree"] = node_json(r.tree, 0);
  return j.dump(indent);
}

std::string format_number(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

void write_transcripts_jsonl(std::ostream& os, std::span<const bs::GameTranscript> games, std::size_t cols) {
  for (std::size_t g = 0; g < games.size(); ++g) {
    const auto& t = games[g];
    json steps = json::array();
    for (const auto& s : t.steps) {
      steps.push_back({{"row", s.query.row},
                       {"col", s.query.col},
                       {"cell", s.query.row * cols + s.query.col},
                       {"hit", s.hit},
                       {"remaining_layouts", s.remaining_layouts},
                       {"remaining_boards", s.remaining_boards},
                       {"entropy_bits", s.entropy_bits}});
    }
    const json line{{"game_id", g},
                    {"target_index", t.target_index},
                    {"initial_layouts", t.initial_layouts},
                    {"initial_boards", t.initial_boards},
                    {"initial_entropy", t.initial_entropy},
                    {"queries", t.total_queries()},
                    {"steps", steps}};
    os << line.dump() << '\n';
  }
}

void write_entropy_trace_csv(std::ostream& os, std::span<const bs::GameTranscript> games) {
  os << "game_id,t,entropy_bits\n";
  for (std::size_t g = 0; g < games.size(); ++g) {
    os << g << ",0," << format_number(games[g].initial_entropy) << '\n';
    for (std::size_t i = 0; i < games[g].steps.size(); ++i) {
      os << g << ',' << i + 1 << ',' << format_number(games[g].steps[i].entropy_bits) << '\n';
    }
  }
}

void write_stats_csv(std::ostream& os, const bs::ExperimentStats& s, const bs::BoardSet& boards) {
  os << "games,mean,stddev,min,max,theoretical_floor,layouts,distinct_boards\n";
  os << s.games << ',' << format_number(s.mean) << ',' << format_number(s.stddev) << ',' << s.min << ',' << s.max
     << ',' << s.theoretical_floor << ',' << boards.layout_count() << ',' << boards.size() << '\n';
}

void write_histogram_csv(std::ostream& os, std::span<const bs::HistogramBin> bins) {
  os << "bin_lo,bin_hi,count\n";
  for (const auto& b : bins) os << b.lo << ',' << b.hi << ',' << b.count << '\n';
}

}  // namespace qtree::io
