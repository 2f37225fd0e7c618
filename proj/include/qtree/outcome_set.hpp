#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtree {

/// Sorted, duplicate-free set of outcome indices drawn from an alphabet of at
/// most 64 symbols. Iteration visits members in ascending order.
class OutcomeSet {
 public:
  static constexpr std::size_t kMaxAlphabet = 64;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = std::size_t;

    iterator() = default;
    explicit iterator(std::uint64_t rest) : rest_(rest) {}
    std::size_t operator*() const { return static_cast<std::size_t>(std::countr_zero(rest_)); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator&, const iterator&) = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr OutcomeSet() = default;
  constexpr explicit OutcomeSet(std::uint64_t bits) : bits_(bits) {}
  OutcomeSet(std::initializer_list<std::size_t> members) {
    for (std::size_t m : members) insert(m);
  }
  static OutcomeSet from_members(const std::vector<std::size_t>& members) {
    OutcomeSet s;
    for (std::size_t m : members) s.insert(m);
    return s;
  }
  /// Members lo..hi-1.
  static OutcomeSet range(std::size_t lo, std::size_t hi) {
    if (hi > kMaxAlphabet || lo > hi) throw std::out_of_range("OutcomeSet::range out of bounds");
    if (lo == hi) return OutcomeSet();
    const std::uint64_t upto = hi == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << hi) - 1;
    return OutcomeSet(upto & ~((std::uint64_t{1} << lo) - 1));
  }
  static OutcomeSet full(std::size_t n) { return range(0, n); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t i) const { return i < kMaxAlphabet && ((bits_ >> i) & 1U) != 0; }
  std::size_t min() const {
    if (empty()) throw std::logic_error("min() of empty OutcomeSet");
    return static_cast<std::size_t>(std::countr_zero(bits_));
  }
  std::size_t max() const {
    if (empty()) throw std::logic_error("max() of empty OutcomeSet");
    return 63 - static_cast<std::size_t>(std::countl_zero(bits_));
  }
  void insert(std::size_t i) {
    if (i >= kMaxAlphabet) throw std::out_of_range("outcome index exceeds 64-symbol alphabet limit");
    bits_ |= std::uint64_t{1} << i;
  }
  constexpr bool is_subset_of(OutcomeSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(OutcomeSet other) const { return (bits_ & other.bits_) == 0; }

  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }
  std::vector<std::size_t> to_vector() const { return {begin(), end()}; }
  std::string to_string() const;

  friend constexpr OutcomeSet operator|(OutcomeSet a, OutcomeSet b) { return OutcomeSet(a.bits_ | b.bits_); }
  friend constexpr OutcomeSet operator&(OutcomeSet a, OutcomeSet b) { return OutcomeSet(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr OutcomeSet operator-(OutcomeSet a, OutcomeSet b) { return OutcomeSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(OutcomeSet a, OutcomeSet b) = default;

  /// Lexicographic order on the ascending member lists ({0,1,2} < {0,3}).
  friend bool lexicographically_less(OutcomeSet a, OutcomeSet b) {
    const std::uint64_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return false;
    // Both lists agree below the lowest differing member x. If x is in a, a is
    // smaller unless b has nothing left past x; if x is in b, a is smaller only
    // when a has nothing left past x.
    const std::uint64_t x = diff & (~diff + 1);
    const std::uint64_t above = ~((x << 1) - 1);
    if ((a.bits_ & x) != 0) return (b.bits_ & above) != 0;
    return (a.bits_ & above) == 0;
  }

 private:
  std::uint64_t bits_ = 0;
};

std::ostream& operator<<(std::ostream& os, OutcomeSet s);

}  // namespace qtree
