#include <doctest.h>

#include "properties.hpp"

namespace {

void require_clean(const props::Tally& t) {
  INFO("first failure: " << t.first_failure);
  CHECK(t.checked > 0);
  CHECK(t.violations == 0);
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("leaf depth bound for unconstrained GBSC") { require_clean(props::depth_bound(1000, 42)); }
  TEST_CASE("entropy, Huffman, GBSC, Shannon ordering") { require_clean(props::dominance_chain(1000, 42)); }
  TEST_CASE("can_merge equals the interval oracle over 1..8") {
    const auto t = props::can_merge_oracle();
    CHECK(t.checked == 6050);  // 3^8 - 2 * 2^8 + 1 ordered pairs of disjoint nonempty sets
    require_clean(t);
  }
  TEST_CASE("interval_partition equals exhaustive enumeration") { require_clean(props::interval_partition_oracle(1000, 42)); }
  TEST_CASE("brute force equals exhaustive tree enumeration") { require_clean(props::brute_force_oracle(200, 42)); }
  TEST_CASE("battleship 4x4 transcripts equal the re-filtering reference") {
    const auto t = props::battleship_small();
    CHECK(t.checked == 24);
    require_clean(t);
  }

  TEST_CASE("brute force equals Huffman on unconstrained sets") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto d = qtree::random_distribution(2 + seed % 9, seed);
      const double bf = qtree::brute_force_optimal(d, qtree::DecisionSet::unconstrained(d.size())).expected_len;
      CHECK(bf == doctest::Approx(qtree::expected_depth(qtree::huffman_tree(d), d)).epsilon(1e-12));
    }
  }

  TEST_CASE("validate_tree accepts every structurally valid tree when unconstrained") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto d = qtree::random_distribution(2 + seed % 12, seed);
      const auto a = qtree::DecisionSet::unconstrained(d.size());
      CHECK(qtree::validate_tree(qtree::huffman_tree(d), a).feasible);
      CHECK(qtree::validate_tree(qtree::dna::dna_gbsc(d).tree, a).feasible);
    }
  }

  TEST_CASE("sets with fewer realizable bipartitions than 2^(n-1) - 1 are not complete") {
    for (std::size_t n = 2; n <= 8; ++n) {
      for (const auto& a : {qtree::DecisionSet::interval(n), qtree::DecisionSet::unconstrained(n)}) {
        if (qtree::count_realizable_bipartitions(a) < (std::uint64_t{1} << (n - 1)) - 1) {
          CHECK_FALSE(qtree::is_decision_complete(a));
        }
      }
    }
    CHECK_FALSE(qtree::is_decision_complete(qtree::DecisionSet::wine_pairs(4)));
  }

  TEST_CASE("greedy Huffman on a decision-complete set returns the Huffman optimum") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const std::size_t n = 2 + seed % 2;  // intervals over <= 3 outcomes are complete
      const auto d = qtree::random_distribution(n, seed);
      const auto a = qtree::DecisionSet::interval(n);
      REQUIRE(qtree::is_decision_complete(a));
      CHECK(qtree::greedy_huffman(d, a).expected_len ==
            doctest::Approx(qtree::expected_depth(qtree::huffman_tree(d), d)).epsilon(1e-12));
    }
  }
}
