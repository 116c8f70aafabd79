#include <gtest/gtest.h>

#include <random>
#include <set>

#include "revlab/orders.hpp"
#include "revlab/states.hpp"

using namespace revlab;

namespace {

// Ordered Bell numbers via a(n) = sum_k C(n,k) a(n-k).
std::uint64_t fubini(std::size_t n) {
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    std::uint64_t c = 1;
    for (std::size_t k = 1; k <= m; ++k) {
      c = c * (m - k + 1) / k;
      a[m] += c * a[m - k];
    }
  }
  return a[n];
}

WorldSet brute_min(WorldSet cand, const RankedOrder& ord) {
  WorldSet out;
  const WorldSet in = cand & ord.domain();
  for (World w : in) {
    bool minimal = true;
    for (World v : in) minimal = minimal && ord.leq(w, v);
    if (minimal) out |= WorldSet::single(w);
  }
  return out;
}

}  // namespace

TEST(RankedOrder, ParseAndPrint) {
  const Signature sig = Signature::parse("z o t");
  const RankedOrder ord = RankedOrder::parse("[010 001 | 100]", sig);
  ASSERT_EQ(ord.level_count(), 2u);
  EXPECT_EQ(ord.levels()[0], WorldSet(0b110));
  EXPECT_EQ(ord.levels()[1], WorldSet(0b10000));
  EXPECT_EQ(ord.domain(), WorldSet(0b10110));
  EXPECT_EQ(ord.to_string(sig), "[001 010 | 100]");
  EXPECT_EQ(ord.level_of(4), 1);
  EXPECT_EQ(ord.level_of(0), -1);
  EXPECT_TRUE(ord.strict(1, 4));
  EXPECT_TRUE(ord.leq(1, 2) && ord.leq(2, 1));
  EXPECT_THROW(ord.leq(0, 1), OrderError);
  EXPECT_THROW(RankedOrder::parse("[01 | 01]", Signature::parse("a b")), OrderError);
  EXPECT_THROW(RankedOrder::parse("[]", Signature::parse("a b")), std::exception);
  EXPECT_THROW(RankedOrder(std::vector<WorldSet>{}), OrderError);
}

TEST(RankedOrder, EnumerationCountsAreOrderedBell) {
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto orders = enumerate_orders(WorldSet::full(k));
    EXPECT_EQ(orders.size(), fubini(k));
    std::set<RankedOrder> distinct(orders.begin(), orders.end());
    EXPECT_EQ(distinct.size(), orders.size());
    for (const auto& o : orders) EXPECT_EQ(o.domain(), WorldSet::full(k));
  }
  std::size_t streamed = 0;
  for_each_order(WorldSet(0b11111), [&](const RankedOrder&) { ++streamed; });
  EXPECT_EQ(streamed, fubini(5));
  EXPECT_THROW(enumerate_orders(WorldSet()), OrderError);
  EXPECT_THROW(enumerate_orders(WorldSet(0b11111)), OrderError);
}

TEST(RankedOrder, MinSetMatchesBruteForce) {
  for (const auto& ord : enumerate_orders(WorldSet(0b1011))) {
    for (std::uint64_t c = 0; c < 16; ++c) {
      EXPECT_EQ(min_set(WorldSet(c), ord), brute_min(WorldSet(c), ord));
    }
  }
}

TEST(RankedOrder, RestrictKeepsRelativeOrder) {
  for (const auto& ord : enumerate_orders(WorldSet(0b1111))) {
    for (std::uint64_t k = 1; k < 16; ++k) {
      const RankedOrder r = restrict(ord, WorldSet(k));
      EXPECT_EQ(r.domain(), WorldSet(k));
      for (World a : WorldSet(k)) {
        for (World b : WorldSet(k)) EXPECT_EQ(r.leq(a, b), ord.leq(a, b));
      }
    }
    EXPECT_THROW(restrict(ord, WorldSet(0b10000)), OrderError);
  }
}

TEST(RankedOrder, RandomOrdersAreWeakOrders) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const WorldSet dom(std::uniform_int_distribution<std::uint64_t>(1, 255)(rng));
    const RankedOrder ord = random_order(dom, rng);
    EXPECT_EQ(ord.domain(), dom);
    WorldSet seen;
    for (WorldSet level : ord.levels()) {
      EXPECT_FALSE(level.empty());
      EXPECT_FALSE(level.intersects(seen));
      seen |= level;
    }
  }
}

TEST(Trichotomy, SmallCases) {
  const RankedOrder ord(std::vector<WorldSet>{WorldSet(0b01), WorldSet(0b10)});
  EXPECT_TRUE(trichotomy_check(ord, WorldSet(0b01), WorldSet(0b10)));
  EXPECT_TRUE(trichotomy_check(ord, WorldSet(), WorldSet()));
  EXPECT_TRUE(trichotomy_check(ord, WorldSet(0b100), WorldSet(0b10)));
}
