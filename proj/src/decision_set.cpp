#include "qtree/decision_set.hpp"

#include <stdexcept>

namespace qtree {

namespace {

void check_alphabet(std::size_t n) {
  if (n == 0 || n > OutcomeSet::kMaxAlphabet) {
    throw std::invalid_argument("decision set alphabet must have 1.." + std::to_string(OutcomeSet::kMaxAlphabet) +
                                " outcomes, got " + std::to_string(n));
  }
}

/// Members of `candidates` strictly between its lowest and highest member of `part`.
bool contiguous_within(std::uint64_t candidates, std::uint64_t part) {
  const OutcomeSet p(part);
  const std::uint64_t span = OutcomeSet::range(p.min(), p.max() + 1).bits();
  return (candidates & span) == part;
}

}  // namespace

DecisionSet DecisionSet::unconstrained(std::size_t n) {
  check_alphabet(n);
  return DecisionSet(DecisionSetKind::Unconstrained, n);
}

DecisionSet DecisionSet::interval(std::size_t n) {
  check_alphabet(n);
  return DecisionSet(DecisionSetKind::Interval, n);
}

DecisionSet DecisionSet::wine_pairs(std::size_t bottles) {
  if (bottles < 2) throw std::invalid_argument("wine pairs need at least 2 bottles");
  const std::size_t n = bottles * (bottles - 1) / 2;
  check_alphabet(n);
  DecisionSet a(DecisionSetKind::WinePairs, n);
  a.bottles_ = bottles;
  // T ranges over nonempty proper subsets of the bottles.
  for (std::uint64_t t = 1; t + 1 < (std::uint64_t{1} << bottles); ++t) {
    OutcomeSet s;
    for (std::size_t i = 0; i < bottles; ++i) {
      for (std::size_t j = i + 1; j < bottles; ++j) {
        if (((t >> i) & 1U) != 0 || ((t >> j) & 1U) != 0) s.insert(wine_pair_index(bottles, i, j));
      }
    }
    a.members_.push_back(s);
  }
  return a;
}

DecisionSet DecisionSet::explicit_sets(std::size_t n, std::vector<OutcomeSet> sets) {
  check_alphabet(n);
  const OutcomeSet all = OutcomeSet::full(n);
  for (OutcomeSet s : sets) {
    if (!s.is_subset_of(all)) throw std::invalid_argument("decision set member " + s.to_string() + " outside alphabet");
  }
  DecisionSet a(DecisionSetKind::Explicit, n);
  a.members_ = std::move(sets);
  return a;
}

std::string DecisionSet::describe() const {
  switch (kind_) {
    case DecisionSetKind::Unconstrained:
      return "unconstrained(" + std::to_string(n_) + ")";
    case DecisionSetKind::Interval:
      return "interval(" + std::to_string(n_) + ")";
    case DecisionSetKind::WinePairs:
      return "wine-pairs(" + std::to_string(bottles_) + ")";
    case DecisionSetKind::Explicit:
      return "explicit(" + std::to_string(n_) + ", " + std::to_string(members_.size()) + " sets)";
  }
  return "?";
}

void DecisionSet::check_candidates(OutcomeSet candidates) const {
  if (!candidates.is_subset_of(OutcomeSet::full(n_))) {
    throw std::out_of_range("candidate set " + candidates.to_string() + " outside alphabet of size " +
                            std::to_string(n_));
  }
}

bool DecisionSet::realizes(OutcomeSet candidates, OutcomeSet part) const {
  return find_query(candidates, part).has_value();
}

std::optional<OutcomeSet> DecisionSet::find_query(OutcomeSet candidates, OutcomeSet part) const {
  check_candidates(candidates);
  if (part.empty() || !part.is_subset_of(candidates) || part == candidates) return std::nullopt;
  const OutcomeSet rest = candidates - part;
  switch (kind_) {
    case DecisionSetKind::Unconstrained:
      return part;
    case DecisionSetKind::Interval:
      if (contiguous_within(candidates.bits(), part.bits())) return OutcomeSet::range(part.min(), part.max() + 1);
      if (contiguous_within(candidates.bits(), rest.bits())) return OutcomeSet::range(rest.min(), rest.max() + 1);
      return std::nullopt;
    case DecisionSetKind::WinePairs:
    case DecisionSetKind::Explicit:
      for (OutcomeSet s : members_) {
        const OutcomeSet hit = candidates & s;
        if (hit == part || hit == rest) return s;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Split> DecisionSet::splits(OutcomeSet candidates) const {
  std::vector<Split> out;
  for_each_split(candidates, [&](OutcomeSet first) { out.push_back({first, candidates - first}); });
  return out;
}

std::size_t wine_pair_index(std::size_t bottles, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  if (i == j || j >= bottles) throw std::out_of_range("invalid wine pair");
  // Pairs before row i: (bottles-1) + (bottles-2) + ... over i rows.
  return i * (2 * bottles - i - 1) / 2 + (j - i - 1);
}

std::string wine_pair_label(std::size_t bottles, std::size_t outcome) {
  for (std::size_t i = 0; i < bottles; ++i) {
    for (std::size_t j = i + 1; j < bottles; ++j) {
      if (wine_pair_index(bottles, i, j) == outcome) return std::to_string(i + 1) + std::to_string(j + 1);
    }
  }
  throw std::out_of_range("invalid wine pair outcome");
}

std::uint64_t count_realizable_bipartitions(const DecisionSet& a) {
  const std::size_t n = a.alphabet_size();
  if (n > kCompletenessGuard) {
    throw std::length_error("exhaustive completeness check limited to " + std::to_string(kCompletenessGuard) +
                            " outcomes");
  }
  std::uint64_t count = 0;
  a.for_each_split(OutcomeSet::full(n), [&](OutcomeSet) { ++count; });
  return count;
}

bool is_decision_complete(const DecisionSet& a) {
  const std::size_t n = a.alphabet_size();
  if (n > kCompletenessGuard) {
    throw std::length_error("exhaustive completeness check limited to " + std::to_string(kCompletenessGuard) +
                            " outcomes");
  }
  if (a.kind() == DecisionSetKind::Unconstrained) return true;
  const std::uint64_t needed = (std::uint64_t{1} << (n - 1)) - 1;
  return count_realizable_bipartitions(a) == needed;
}

}  // namespace qtree
