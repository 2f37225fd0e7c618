#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

#include "qtree/battleship.hpp"
#include "qtree/decision_tree.hpp"
#include "qtree/distribution.hpp"
#include "qtree/solvers.hpp"

namespace qtree::io {

/// Malformed input; the message carries the offending line when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& detail, const std::string& source = "");
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// One probability per line, as a decimal or "a/b". Lines starting with '#'
/// and blank lines are skipped. The result is in exact mode when every entry
/// converts to a rational and the entries sum to exactly 1.
Distribution parse_distribution(std::istream& in);
Distribution read_distribution(const std::string& path);

/// Leaf: {"outcome": i}. Internal: {"query": [...], "left": ..., "right": ...}.
std::string tree_to_json(const DecisionTree& t, int indent = -1);
DecisionTree tree_from_json(const std::string& text, std::size_t alphabet_size);

/// {"expected_len", "exact_len" (when known), "stats", "tree"}.
std::string result_to_json(const SolveResult& r, int indent = -1);

/// Fixed-precision decimal used for every floating-point CSV field.
std::string format_number(double x, int digits = 6);

namespace bs = qtree::battleship;

/// One JSON object per line per game.
void write_transcripts_jsonl(std::ostream& os, std::span<const bs::GameTranscript> games, std::size_t cols);
/// Columns game_id,t,entropy_bits; t = 0 is the state before the first query.
void write_entropy_trace_csv(std::ostream& os, std::span<const bs::GameTranscript> games);
void write_stats_csv(std::ostream& os, const bs::ExperimentStats& s, const bs::BoardSet& boards);
void write_histogram_csv(std::ostream& os, std::span<const bs::HistogramBin> bins);

}  // namespace qtree::io
