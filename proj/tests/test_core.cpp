#include <doctest.h>

#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "qtree/decision_set.hpp"
#include "qtree/decision_tree.hpp"
#include "qtree/distribution.hpp"
#include "qtree/outcome_set.hpp"
#include "qtree/rational.hpp"

using namespace qtree;

TEST_SUITE("core") {
  TEST_CASE("rational arithmetic stays in lowest terms") {
    const Rational a(6, 8);
    CHECK(a.num() == 3);
    CHECK(a.den() == 4);
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(54, 23).to_string() == "54/23");
    CHECK(Rational(4).to_string() == "4");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  }

  TEST_CASE("rational parse") {
    CHECK(Rational::parse("0.15") == Rational(3, 20));
    CHECK(Rational::parse("8/23") == Rational(8, 23));
    CHECK(Rational::parse("1") == Rational(1));
    CHECK(Rational::parse(".5") == Rational(1, 2));
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
  }

  TEST_CASE("rational overflow is reported") {
    const Rational big(std::int64_t{1} << 62);
    CHECK_THROWS_AS(big * big, std::overflow_error);
  }

  TEST_CASE("outcome set basics") {
    OutcomeSet s{3, 0, 5};
    CHECK(s.size() == 3);
    CHECK(s.min() == 0);
    CHECK(s.max() == 5);
    CHECK(s.to_vector() == std::vector<std::size_t>{0, 3, 5});
    CHECK(s.to_string() == "{0,3,5}");
    CHECK((s - OutcomeSet{3}) == OutcomeSet{0, 5});
    CHECK(OutcomeSet::range(2, 5) == OutcomeSet{2, 3, 4});
    CHECK(OutcomeSet::full(64).size() == 64);
    CHECK_THROWS_AS(OutcomeSet{64}, std::out_of_range);
    CHECK_THROWS_AS(OutcomeSet().min(), std::logic_error);
  }

  TEST_CASE("lexicographic order matches sorted member lists") {
    for (std::uint64_t a = 0; a < 64; ++a) {
      for (std::uint64_t b = 0; b < 64; ++b) {
        const auto va = OutcomeSet(a).to_vector();
        const auto vb = OutcomeSet(b).to_vector();
        CHECK(lexicographically_less(OutcomeSet(a), OutcomeSet(b)) == (va < vb));
      }
    }
  }

  TEST_CASE("distribution validation") {
    CHECK_NOTHROW(Distribution({0.25, 0.75}));
    CHECK_THROWS_AS(Distribution({0.5, 0.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution(std::vector<double>{}), std::invalid_argument);
    CHECK_NOTHROW(Distribution({0.5, 0.5 + 1e-10}));
    CHECK_THROWS_AS(Distribution({Rational(1, 3), Rational(1, 3)}), std::invalid_argument);
    const Distribution u = Distribution::uniform(4);
    CHECK(u.is_exact());
    CHECK(u.exact_mass(OutcomeSet{0, 1}) == Rational(1, 2));
    CHECK(u.mass(OutcomeSet{0, 1, 2}) == doctest::Approx(0.75));
    CHECK_THROWS_AS(Distribution({0.5, 0.5}).exact(), std::logic_error);
    CHECK_THROWS_AS(Distribution(std::vector<double>(65, 1.0 / 65)), std::invalid_argument);
  }

  TEST_CASE("interval set realizes exactly the interval cuts") {
    const auto a = DecisionSet::interval(5);
    const auto sets = oracle::interval_sets(5);
    for (std::uint64_t c = 1; c < 32; ++c) {
      for (std::uint64_t part = (c - 1) & c; part != 0; part = (part - 1) & c) {
        CHECK(a.realizes(OutcomeSet(c), OutcomeSet(part)) == oracle::realizable(c, part, sets));
      }
    }
  }

  TEST_CASE("find_query returns a separating member") {
    for (const auto& a : {DecisionSet::interval(6), DecisionSet::wine_pairs(4), DecisionSet::unconstrained(6)}) {
      for (std::uint64_t c = 1; c < 64; ++c) {
        for (std::uint64_t part = (c - 1) & c; part != 0; part = (part - 1) & c) {
          const auto q = a.find_query(OutcomeSet(c), OutcomeSet(part));
          CHECK(q.has_value() == a.realizes(OutcomeSet(c), OutcomeSet(part)));
          if (q) {
            const OutcomeSet in = *q & OutcomeSet(c);
            CHECK((in == OutcomeSet(part) || in == OutcomeSet(c) - OutcomeSet(part)));
            if (a.kind() == DecisionSetKind::Interval) CHECK((q->bits() >> q->min()) + 1 == (std::uint64_t{2} << (q->max() - q->min())));
          }
        }
      }
    }
  }

  TEST_CASE("split enumeration is complete and duplicate-free") {
    for (const auto& a : {DecisionSet::interval(6), DecisionSet::wine_pairs(4), DecisionSet::unconstrained(6),
                          DecisionSet::explicit_sets(6, {OutcomeSet{0, 1}, OutcomeSet{2, 3, 4, 5}, OutcomeSet{1}})}) {
      for (std::uint64_t c = 1; c < 64; ++c) {
        const OutcomeSet cs(c);
        std::set<std::uint64_t> seen;
        a.for_each_split(cs, [&](OutcomeSet first) {
          CHECK(first.contains(cs.min()));
          CHECK(first != cs);
          CHECK(a.realizes(cs, first));
          CHECK(seen.insert(first.bits()).second);
        });
        std::size_t expected = 0;
        for (std::uint64_t part = (c - 1) & c; part != 0; part = (part - 1) & c) {
          if ((part & (c & (~c + 1))) != 0 && a.realizes(cs, OutcomeSet(part))) ++expected;
        }
        CHECK(seen.size() == expected);
      }
    }
  }

  TEST_CASE("wine pairs follow the bottle model") {
    const auto a = DecisionSet::wine_pairs(4);
    CHECK(a.alphabet_size() == 6);
    CHECK(wine_pair_label(4, 0) == "12");
    CHECK(wine_pair_label(4, 5) == "34");
    CHECK(wine_pair_index(4, 1, 3) == 4);
    CHECK(a.members().size() == 14);
    // Tasting bottle 2 alone: bad iff the pair contains 2.
    CHECK(a.realizes(OutcomeSet::full(6), OutcomeSet{0, 3, 4}));
    // The Huffman root split {12,13,34} | {14,23,24}: every bottle appears on both sides.
    CHECK_FALSE(a.realizes(OutcomeSet::full(6), OutcomeSet{0, 1, 5}));
  }

  TEST_CASE("decision completeness") {
    CHECK(is_decision_complete(DecisionSet::unconstrained(5)));
    CHECK_FALSE(is_decision_complete(DecisionSet::wine_pairs(4)));
    CHECK_FALSE(is_decision_complete(DecisionSet::interval(4)));
    CHECK(is_decision_complete(DecisionSet::interval(3)));
    CHECK(count_realizable_bipartitions(DecisionSet::unconstrained(5)) == 15);
    // Fewer than 2^(n-1) - 1 members can never be complete.
    CHECK(count_realizable_bipartitions(DecisionSet::wine_pairs(4)) < 31);
    CHECK_THROWS_AS(is_decision_complete(DecisionSet::unconstrained(25)), std::length_error);
  }

  TEST_CASE("tree builder validates structure") {
    DecisionTree::Builder b(3);
    const auto l0 = b.leaf(0), l1 = b.leaf(1), l2 = b.leaf(2);
    const auto n01 = b.internal(OutcomeSet{0}, l0, l1);
    const auto root = b.internal(OutcomeSet{0, 1}, n01, l2);
    const auto t = b.finish(root, nullptr);
    CHECK(t.nodes().size() == 5);
    CHECK(t.leaf_depths() == std::vector<std::size_t>{2, 2, 1});
    CHECK(t.root().candidates == OutcomeSet::full(3));

    DecisionTree::Builder bad(3);
    const auto a0 = bad.leaf(0), a1 = bad.leaf(1);
    const auto r = bad.internal(OutcomeSet{0}, a0, a1);
    CHECK_THROWS_AS(bad.finish(r), std::invalid_argument);  // outcome 2 missing

    DecisionTree::Builder wrong(2);
    const auto w0 = wrong.leaf(0), w1 = wrong.leaf(1);
    const auto wr = wrong.internal(OutcomeSet{1}, w0, w1);  // query sends 1 left
    CHECK_THROWS_AS(wrong.finish(wr), std::invalid_argument);
    CHECK_THROWS_AS(wrong.leaf(2), std::out_of_range);
  }

  TEST_CASE("validate_tree reports infeasible nodes") {
    DecisionTree::Builder b(4);
    const auto l = b.internal(OutcomeSet{0}, b.leaf(0), b.leaf(2));
    const auto r = b.internal(OutcomeSet{1}, b.leaf(1), b.leaf(3));
    const auto t = b.finish(b.internal(OutcomeSet{0, 2}, l, r));
    CHECK(validate_tree(t, DecisionSet::unconstrained(4)).feasible);
    const auto report = validate_tree(t, DecisionSet::interval(4));
    CHECK_FALSE(report.feasible);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].node == 0);
    CHECK_THROWS_AS(validate_tree(t, DecisionSet::interval(5)), std::invalid_argument);
  }
}
