#include <gtest/gtest.h>

#include <set>

#include "exk/enumeration.hpp"
#include "exk/verify/oracles.hpp"

using namespace exk;

TEST(Count, Examples) {
  EXPECT_EQ(count_excursions(LevelNumbers{1}), 1);
  EXPECT_EQ(count_excursions(LevelNumbers{1, 5}), 1);
  EXPECT_EQ(count_excursions(LevelNumbers{1, 2, 1}), 2);
  EXPECT_EQ(count_excursions(LevelNumbers{1, 2, 2}), 3);
  EXPECT_EQ(count_excursions(LevelNumbers{1, 1, 2, 1}), 2);
  // binom(3,0) * binom(5,2) * binom(5,2)
  EXPECT_EQ(count_excursions(LevelNumbers{1, 3, 3, 3}), 100);
}

TEST(Count, MatchesBruteForceFilter) {
  for (long total = 1; total <= 7; ++total) {
    const auto pos = brute_force(static_cast<int>(2 * total));
    for (const auto& n : all_level_numbers(total))
      ASSERT_EQ(count_excursions(n), oracle::filter_by_levels(pos, n).size()) << n.str();
  }
}

TEST(Count, CatalanTotals) {
  for (long n = 1; n <= 12; ++n) {
    BigInt sum = 0;
    for (const auto& lv : all_level_numbers(n)) sum += count_excursions(lv);
    ASSERT_EQ(sum, oracle::catalan(n - 1)) << n;
  }
}

TEST(Count, LargeClassesAreExact) {
  std::vector<long> c{1};
  for (int i = 0; i < 30; ++i) c.push_back(40);
  // binom(79, 39)^29
  BigInt want = boost::multiprecision::pow(binomial(79, 39), 29);
  EXPECT_EQ(count_excursions(LevelNumbers(c)), want);
}

TEST(Decompositions, Examples) {
  EXPECT_EQ(decompositions(0, 3), (std::vector<std::vector<long>>{{0, 0, 0}}));
  EXPECT_EQ(decompositions(2, 2), (std::vector<std::vector<long>>{{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_EQ(decompositions(3, 3).size(), 10u);
  EXPECT_EQ(Decompositions::size(3, 3), 10);
}

TEST(Decompositions, SizesOrderAndSums) {
  for (long m = 0; m <= 7; ++m)
    for (long k = 1; k <= 5; ++k) {
      const auto all = decompositions(m, k);
      ASSERT_EQ(BigInt(all.size()), binomial(m + k - 1, k - 1));
      ASSERT_TRUE(std::is_sorted(all.begin(), all.end()));
      ASSERT_EQ(std::set<std::vector<long>>(all.begin(), all.end()).size(), all.size());
      for (const auto& s : all) ASSERT_EQ(std::accumulate(s.begin(), s.end(), 0L), m);
    }
}

TEST(Eta, Examples) {
  const LevelNumbers n{1, 2, 1};
  EXPECT_EQ(eta({{1, 0}}, n).str(), "0 1 2 3 2 1 2 1 0");
  EXPECT_EQ(eta({{0, 1}}, n).str(), "0 1 2 1 2 3 2 1 0");
  EXPECT_EQ(eta({}, LevelNumbers{1, 4}).str(), "0 1 2 1 2 1 2 1 2 1 0");
  EXPECT_THROW(eta({{1, 1}}, n), InvalidDecomposition);
  EXPECT_THROW(eta({{1}}, n), InvalidDecomposition);
  EXPECT_THROW(eta({}, n), InvalidDecomposition);
}

TEST(Eta, BijectionAndRoundTrip) {
  for (long total = 1; total <= 7; ++total) {
    const auto pos = brute_force(static_cast<int>(2 * total));
    for (const auto& n : all_level_numbers(total)) {
      std::set<Excursion> image;
      const auto all = all_decompositions(n);
      for (const auto& s : all) {
        const auto x = eta(s, n);
        ASSERT_EQ(level_numbers(x), n);
        ASSERT_EQ(decomposition_of(x), s);
        image.insert(x);
      }
      ASSERT_EQ(image.size(), all.size());
      const auto want = oracle::filter_by_levels(pos, n);
      ASSERT_EQ(image, std::set<Excursion>(want.begin(), want.end()));
    }
  }
}

TEST(Enumerate, Examples) {
  const auto xs = enumerate_excursions(LevelNumbers{1, 2, 1});
  ASSERT_EQ(xs.size(), 2u);
  // decompositions in lexicographic order: (0,1) then (1,0)
  EXPECT_EQ(xs[0].str(), "0 1 2 1 2 3 2 1 0");
  EXPECT_EQ(xs[1].str(), "0 1 2 3 2 1 2 1 0");
  EXPECT_EQ(enumerate_excursions(LevelNumbers{1, 3}).size(), 1u);
}

TEST(Enumerate, StreamsWholeClassWithCanonicalWitness) {
  for (long total = 1; total <= 8; ++total)
    for (const auto& n : all_level_numbers(total)) {
      ExcursionsWithLevels it(n);
      std::set<Excursion> seen;
      while (auto x = it.next()) {
        ASSERT_EQ(level_numbers(*x), n);
        ASSERT_TRUE(seen.insert(*x).second);
      }
      ASSERT_EQ(BigInt(seen.size()), count_excursions(n));
      ASSERT_TRUE(seen.count(canonical_excursion(n))) << n.str();
    }
}

TEST(Canonical, Examples) {
  EXPECT_EQ(canonical_excursion(LevelNumbers{1}).str(), "0 1 0");
  EXPECT_EQ(canonical_excursion(LevelNumbers{1, 1, 1}).str(), "0 1 2 3 2 1 0");
  EXPECT_EQ(canonical_excursion(LevelNumbers{1, 2}).str(), "0 1 2 1 2 1 0");
  // rise to 3, one extra bump at level 2, two extra at level 1
  EXPECT_EQ(canonical_excursion(LevelNumbers{1, 3, 2}).str(), "0 1 2 3 2 3 2 1 2 1 2 1 0");
}

TEST(BruteForce, CountsAndBounds) {
  EXPECT_EQ(brute_force(2).size(), 1u);
  EXPECT_EQ(brute_force(4).front().str(), "0 1 2 1 0");
  EXPECT_EQ(brute_force(8).size(), 5u);
  for (int t = 2; t <= 20; t += 2) ASSERT_EQ(BigInt(brute_force(t).size()), oracle::catalan(t / 2 - 1));
  EXPECT_THROW(brute_force(30), BoundExceeded);
  EXPECT_THROW(brute_force(7), BoundExceeded);
  EXPECT_THROW(brute_force(0), BoundExceeded);
  const auto words = oracle::all_positive_words(14);
  const auto bf = brute_force(14);
  EXPECT_EQ(std::set<Excursion>(words.begin(), words.end()), std::set<Excursion>(bf.begin(), bf.end()));
}

TEST(AllLevelNumbers, CompositionCounts) {
  // N_0 = 1 followed by a composition of n - 1
  EXPECT_EQ(all_level_numbers(1).size(), 1u);
  for (long n = 2; n <= 10; ++n) {
    const auto all = all_level_numbers(n);
    ASSERT_EQ(all.size(), 1u << (n - 2));
    for (const auto& lv : all) ASSERT_EQ(lv.total(), n);
  }
}
