#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qtree/outcome_set.hpp"

namespace qtree {

enum class DecisionSetKind { Unconstrained, Interval, WinePairs, Explicit };

/// A split of a candidate set into two nonempty halves. `first` always holds
/// the lowest-indexed candidate.
struct Split {
  OutcomeSet first;
  OutcomeSet second;
  friend bool operator==(const Split&, const Split&) = default;
};

/// The family of yes/no questions "is X in S?" that may be asked.
///
/// Asking S is the same question as asking its complement, so a split (A, B)
/// of a candidate set C is realizable when some member S has C ∩ S = A or
/// C ∩ S = B.
class DecisionSet {
 public:
  /// Every subset of the alphabet.
  static DecisionSet unconstrained(std::size_t n);
  /// Every integer interval [a, b] of positions; outcome i sits at position i + 1.
  static DecisionSet interval(std::size_t n);
  /// Two of `bottles` bottles are bad. Outcomes are the unordered pairs {i, j}
  /// in lexicographic order ({1,2}, {1,3}, ..., {k-1,k}); tasting a mix of the
  /// bottles in T asks whether the bad pair meets T.
  static DecisionSet wine_pairs(std::size_t bottles);
  static DecisionSet explicit_sets(std::size_t n, std::vector<OutcomeSet> sets);

  DecisionSetKind kind() const { return kind_; }
  std::size_t alphabet_size() const { return n_; }
  /// Bottle count for WinePairs, 0 otherwise.
  std::size_t bottles() const { return bottles_; }
  /// The listed members for WinePairs and Explicit; empty for the structured kinds.
  const std::vector<OutcomeSet>& members() const { return members_; }
  std::string describe() const;

  bool realizes(OutcomeSet candidates, OutcomeSet part) const;

  /// A member S (or, for Unconstrained, the part itself) whose intersection with
  /// `candidates` is `part` or its complement within `candidates`.
  std::optional<OutcomeSet> find_query(OutcomeSet candidates, OutcomeSet part) const;

  /// Calls f(first) once per distinct realizable split of `candidates`, where
  /// first ∋ min(candidates) and the other half is candidates - first.
  template <typename F>
  void for_each_split(OutcomeSet candidates, F&& f) const;

  std::vector<Split> splits(OutcomeSet candidates) const;

 private:
  DecisionSet(DecisionSetKind kind, std::size_t n) : kind_(kind), n_(n) {}
  void check_candidates(OutcomeSet candidates) const;

  DecisionSetKind kind_;
  std::size_t n_;
  std::size_t bottles_ = 0;
  std::vector<OutcomeSet> members_;
};

/// Label of a wine-pair outcome, e.g. "34" for bottles 3 and 4 (1-based).
std::string wine_pair_label(std::size_t bottles, std::size_t outcome);
/// Outcome index of the pair of 0-based bottles i and j.
std::size_t wine_pair_index(std::size_t bottles, std::size_t i, std::size_t j);

/// Number of distinct bipartitions of the whole alphabet realizable by the set.
/// Exhaustive; guarded to alphabets of at most 24 symbols.
std::uint64_t count_realizable_bipartitions(const DecisionSet& a);

/// True iff for every proper nonempty S, S or its complement is realizable.
/// Guarded to alphabets of at most 24 symbols (throws std::length_error).
bool is_decision_complete(const DecisionSet& a);

inline constexpr std::size_t kCompletenessGuard = 24;

template <typename F>
void DecisionSet::for_each_split(OutcomeSet candidates, F&& f) const {
  check_candidates(candidates);
  if (candidates.size() < 2) return;
  const std::uint64_t c = candidates.bits();
  const std::uint64_t low = c & (~c + 1);
  switch (kind_) {
    case DecisionSetKind::Unconstrained: {
      const std::uint64_t rest = c & ~low;
      // Proper submasks of rest, including the empty one.
      std::uint64_t sub = 0;
      do {
        f(OutcomeSet(low | sub));
        sub = (sub - rest) & rest;
      } while (sub != rest);
      break;
    }
    case DecisionSetKind::Interval: {
      // Candidates met by an interval form a contiguous run in sorted member order.
      // Prefixes come first; a run not touching the first member yields its complement;
      // suffix runs duplicate a prefix split and are skipped.
      const std::vector<std::size_t> m = candidates.to_vector();
      const std::size_t k = m.size();
      std::uint64_t prefix = 0;
      for (std::size_t j = 0; j + 1 < k; ++j) {
        prefix |= std::uint64_t{1} << m[j];
        f(OutcomeSet(prefix));
      }
      for (std::size_t i = 1; i + 1 < k; ++i) {
        std::uint64_t run = 0;
        for (std::size_t j = i; j + 1 < k; ++j) {
          run |= std::uint64_t{1} << m[j];
          f(OutcomeSet(c & ~run));
        }
      }
      break;
    }
    case DecisionSetKind::WinePairs:
    case DecisionSetKind::Explicit: {
      std::unordered_set<std::uint64_t> seen;
      for (OutcomeSet s : members_) {
        std::uint64_t part = c & s.bits();
        if (part == 0 || part == c) continue;
        if ((part & low) == 0) part = c & ~part;
        if (seen.insert(part).second) f(OutcomeSet(part));
      }
      break;
    }
  }
}

}  // namespace qtree
