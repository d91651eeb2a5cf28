#include <gtest/gtest.h>

#include <deque>
#include <random>
#include <set>

#include "exk/enumeration.hpp"
#include "exk/transforms.hpp"
#include "exk/verify/oracles.hpp"

using namespace exk;

namespace {

Excursion ex(const std::string& v) { return Excursion::parse_values(v); }

// All ops of one kind applicable to x.
std::vector<ShiftOp> applicable(const Excursion& x, ShiftKind kind) {
  std::vector<ShiftOp> ops;
  const int t = static_cast<int>(x.length());
  for (int a = 0; a <= t; ++a)
    for (int b = a; b <= t; ++b)
      for (int c = 0; c <= t; ++c) {
        ShiftOp op{a, b, c, x[static_cast<std::size_t>(a)], kind};
        if (!domain_violation(x, op)) ops.push_back(op);
      }
  return ops;
}

}  // namespace

TEST(Reverse, Examples) {
  EXPECT_EQ(reverse(ex("0 1 0")).str(), "0 1 0");
  const auto x = ex("0 1 2 3 2 1 2 1 0");
  EXPECT_EQ(reverse(x).str(), "0 1 2 1 2 3 2 1 0");
  EXPECT_EQ(level_numbers(reverse(x)), LevelNumbers({1, 2, 1}));
}

TEST(Negate, Examples) {
  EXPECT_EQ(negate(ex("0 1 0")).str(), "0 -1 0");
  EXPECT_EQ(negate(negate(ex("0 1 2 1 0"))), ex("0 1 2 1 0"));
  EXPECT_EQ(negate(ex("0 1 2 1 0")).height(), -2);
}

TEST(ReverseNegate, InvolutionsAndCommuteExhaustive) {
  for (const auto& x : oracle::all_excursions_up_to(12)) {
    ASSERT_EQ(reverse(reverse(x)), x);
    ASSERT_EQ(negate(negate(x)), x);
    ASSERT_EQ(reverse(negate(x)), negate(reverse(x)));
    ASSERT_EQ(level_numbers(negate(x)), level_numbers(x));
  }
}

TEST(Shift, BridgeExample) {
  const auto x = ex("0 1 2 3 2 1 2 1 0");
  const ShiftOp op{1, 5, 7, 1, ShiftKind::bridge};
  const auto r = shift(x, op);
  EXPECT_EQ(r.x.str(), "0 1 2 1 2 3 2 1 0");
  EXPECT_EQ(r.x, oracle::spliced_shift(x, op));
  EXPECT_EQ(shift(r.x, op.inverse()).x, x);
}

TEST(Shift, EndpointTargetsAreIdentity) {
  const auto x = ex("0 1 2 3 2 1 2 1 0");
  EXPECT_EQ(shift(x, {1, 5, 5, 1, ShiftKind::bridge}).x, x);
  EXPECT_EQ(shift(x, {1, 5, 1, 1, ShiftKind::bridge}).x, x);
  EXPECT_EQ(shift(x, {1, 5, 1, 1, ShiftKind::bridge}).phi, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Shift, DomainViolationsNamed) {
  const auto x = ex("0 1 2 3 2 1 2 1 0");
  auto why = [&](ShiftOp op) {
    try {
      shift(x, op);
    } catch (const OutOfDomain& e) {
      return e.condition();
    }
    return std::string("ok");
  };
  EXPECT_EQ(why({1, 5, 3, 1, ShiftKind::bridge}), "c inside (a, b)");
  EXPECT_EQ(why({1, 4, 7, 1, ShiftKind::bridge}), "x_b != h");
  EXPECT_EQ(why({0, 8, 8, 0, ShiftKind::bridge}), "h < 1");
  EXPECT_EQ(why({3, 3, 3, 3, ShiftKind::bridge}), "h > H(x) - 1");
  EXPECT_EQ(why({1, 7, 7, 1, ShiftKind::excursion}), "x not strictly above h on (a, b)");
  EXPECT_EQ(why({1, 5, 7, 1, ShiftKind::excursion}), "ok");
  EXPECT_THROW(shift(negate(x), {1, 5, 7, 1, ShiftKind::bridge}), OutOfDomain);
}

TEST(Shift, PreservesLevelsAndPhiExhaustive) {
  for (const auto& x : oracle::all_excursions_up_to(10)) {
    if (!x.positive()) continue;
    const auto inds = individuals(x);
    for (auto kind : {ShiftKind::bridge, ShiftKind::excursion})
      for (const auto& op : applicable(x, kind)) {
        const auto r = shift(x, op);
        ASSERT_EQ(level_numbers(r.x), level_numbers(x));
        ASSERT_EQ(r.x, oracle::spliced_shift(x, op));
        ASSERT_EQ(shift(r.x, op.inverse()).x, x);
        // phi is a bijection that keeps every rank inside its level block
        std::vector<int> seen(r.phi.size(), 0);
        const auto after = individuals(r.x);
        for (std::size_t i = 0; i < r.phi.size(); ++i) {
          ++seen[static_cast<std::size_t>(r.phi[i])];
          ASSERT_EQ(after[static_cast<std::size_t>(r.phi[i])].level, inds[i].level);
        }
        for (int s : seen) ASSERT_EQ(s, 1);
      }
  }
}

TEST(Shift, RandomInverseRoundTrips) {
  std::mt19937_64 g(7);
  std::vector<Excursion> pool;
  for (int t = 4; t <= 20; t += 2) {
    std::vector<Excursion> all;
    if (t <= 14) all = brute_force(t);
    else
      for (const auto& n : {LevelNumbers{1, 2, 3, 1}, LevelNumbers{1, 3, 3, 2}, LevelNumbers{1, 2, 2, 2, 2, 1}})
        if (2 * n.total() == t) all = enumerate_excursions(n);
    pool.insert(pool.end(), all.begin(), all.end());
  }
  int done = 0;
  while (done < 1000) {
    const auto& x = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(g)];
    const auto ops = applicable(x, ShiftKind::bridge);
    if (ops.empty()) continue;
    const auto& op = ops[std::uniform_int_distribution<std::size_t>(0, ops.size() - 1)(g)];
    ASSERT_EQ(shift(shift(x, op).x, op.inverse()).x, x);
    ++done;
  }
}

TEST(Compose, EmptyAndInversePairs) {
  const auto x = ex("0 1 2 3 2 1 2 1 0");
  EXPECT_EQ(compose(x, {}).x, x);
  const ShiftOp op{1, 5, 7, 1, ShiftKind::bridge};
  EXPECT_EQ(compose(x, {op, op.inverse()}).x, x);
  const std::vector<ShiftOp> seq{op, {1, 3, 7, 1, ShiftKind::excursion}};
  const auto y = compose(x, seq).x;
  EXPECT_EQ(compose(y, inverse(seq)).x, x);
}

TEST(Compose, ReportsFailingStage) {
  const auto x = ex("0 1 2 3 2 1 2 1 0");
  try {
    compose(x, {{1, 5, 7, 1, ShiftKind::bridge}, {1, 4, 7, 1, ShiftKind::bridge}});
    FAIL() << "expected OutOfDomain";
  } catch (const OutOfDomain& e) {
    EXPECT_EQ(e.stage(), 1);
  }
}

TEST(Compose, DisjointSiblingSwapsCommute) {
  // two level-1 individuals, each with a two-node child followed by a leaf child
  const auto x = ex("0 1 2 3 4 3 2 3 2 1 2 3 4 3 2 3 2 1 0");
  const ShiftOp s1{2, 6, 8, 2, ShiftKind::excursion};
  const ShiftOp s2{10, 14, 16, 2, ShiftKind::excursion};
  const auto a = compose(x, {s1, s2}).x;
  EXPECT_EQ(a, compose(x, {s2, s1}).x);
  EXPECT_EQ(a.str(), "0 1 2 3 2 3 4 3 2 1 2 3 2 3 4 3 2 1 0");
}

TEST(ShiftSequence, IdentityAndExample) {
  const auto x = ex("0 1 2 3 2 1 2 1 0");
  EXPECT_EQ(compose(x, shift_sequence(x, x)).x, x);
  const auto y = ex("0 1 2 1 2 3 2 1 0");
  const auto ops = shift_sequence(x, y);
  EXPECT_FALSE(ops.empty());
  EXPECT_EQ(compose(x, ops).x, y);
  for (const auto& op : ops) EXPECT_EQ(op.kind, ShiftKind::excursion);
}

TEST(ShiftSequence, Errors) {
  EXPECT_THROW(shift_sequence(ex("0 1 2 1 0"), ex("0 1 0")), LevelNumbersMismatch);
  EXPECT_THROW(shift_sequence(ex("0 -1 0"), ex("0 -1 0")), OutOfDomain);
}

TEST(ShiftSequence, AllPairsUpToTotalSix) {
  for (long total = 1; total <= 6; ++total)
    for (const auto& n : all_level_numbers(total)) {
      const auto xs = enumerate_excursions(n);
      for (const auto& x : xs)
        for (const auto& y : xs) {
          Excursion cur = x;
          for (const auto& op : shift_sequence(x, y)) {
            ASSERT_EQ(op.kind, ShiftKind::excursion);
            cur = shift(cur, op).x;
            ASSERT_EQ(level_numbers(cur), n);
          }
          ASSERT_EQ(cur, y) << x.str() << " -> " << y.str();
        }
    }
}

TEST(ShiftSequence, LargerClassesSampled) {
  std::mt19937_64 g(3);
  for (const auto& n : {LevelNumbers{1, 3, 4, 2}, LevelNumbers{1, 2, 3, 3, 1}, LevelNumbers{1, 4, 2, 3}}) {
    const auto xs = enumerate_excursions(n);
    std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
    for (int k = 0; k < 200; ++k) {
      const auto& x = xs[pick(g)];
      const auto& y = xs[pick(g)];
      ASSERT_EQ(compose(x, shift_sequence(x, y)).x, y);
    }
  }
}

TEST(Orbit, ExcursionShiftsReachTheWholeClass) {
  for (long total = 1; total <= 5; ++total)
    for (const auto& n : all_level_numbers(total)) {
      const auto xs = enumerate_excursions(n);
      std::set<Excursion> seen{xs.front()};
      std::deque<Excursion> queue{xs.front()};
      while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        for (const auto& op : applicable(x, ShiftKind::excursion)) {
          const auto y = shift(x, op).x;
          if (seen.insert(y).second) queue.push_back(y);
        }
      }
      ASSERT_EQ(seen, std::set<Excursion>(xs.begin(), xs.end())) << n.str();
    }
}

TEST(Orbit, NegativeBridgeShiftsReproducedByPositiveExcursionShifts) {
  for (const auto& x : oracle::all_excursions_up_to(10)) {
    if (x.positive()) continue;
    const auto px = negate(x);
    for (const auto& op : applicable(px, ShiftKind::bridge)) {
      // a bridge shift on -x, viewed back on the negative side
      const auto target = shift(px, op).x;
      ASSERT_EQ(compose(px, shift_sequence(px, target)).x, target);
    }
  }
}
