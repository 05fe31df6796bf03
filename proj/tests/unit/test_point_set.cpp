#include <gtest/gtest.h>

#include "plk/error.hpp"
#include "plk/point_set.hpp"
#include "plk/sumset.hpp"
#include "support.hpp"

namespace plk {
namespace {

using test::cells_of;
using test::CellSet;

TEST(PointSet, BasicOperations) {
  PointSet2 s(70, 5);
  s.insert(0, 0);
  s.insert(69, 4);
  s.insert(64, 2);
  EXPECT_EQ(s.count(), 3);
  EXPECT_TRUE(s.contains(64, 2));
  s.erase(64, 2);
  EXPECT_FALSE(s.contains(64, 2));
  EXPECT_THROW(s.insert(70, 0), Error);
  EXPECT_THROW(s.contains(-1, 0), Error);
  s.fill(Box{60, 1, 68, 3});
  EXPECT_EQ(s.count(), 2 + 16);
  EXPECT_EQ(s.count_in(Box{62, 0, 100, 100}), 12 + 1);
  s.clear(Box{0, 0, 65, 5});
  EXPECT_EQ(s.count(), 6 + 1);
  EXPECT_EQ(s.bounding_box(), (Box{65, 1, 70, 5}));
}

TEST(PointSet, ComplementMasksTheTail) {
  PointSet2 s(67, 3);
  s.insert(5, 1);
  const PointSet2 c = s.complement();
  EXPECT_EQ(c.count(), 67 * 3 - 1);
  EXPECT_EQ((c | s).count(), 67 * 3);
  EXPECT_TRUE(s.is_subset_of(c.complement()));
}

TEST(PointSet, EqualityIsExtensional) {
  const PointSet2 a = PointSet2::from_points(Window(8, 8), {{1, 2}, {3, 4}});
  const PointSet2 b = PointSet2::from_points(Window(20, 5), {{3, 4}, {1, 2}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.resized(Window(4, 4)).count(), 1);
}

TEST(PointSet, BitCountMatchesNaive) {
  test::Rng rng(3);
  for (int it = 0; it < 200; ++it) {
    const Window w(test::uniform(rng, 1, 200), test::uniform(rng, 1, 6));
    const PointSet2 s = test::bernoulli_set(rng, w, 0.4);
    const std::int64_t x0 = test::uniform(rng, 0, w.W), x1 = test::uniform(rng, x0, w.W);
    std::int64_t naive = 0;
    for (std::int64_t x = x0; x < x1; ++x) naive += s.contains(x, 0);
    EXPECT_EQ(count_bits(s.row(0), x0, x1), naive);
    EXPECT_EQ(static_cast<std::int64_t>(cells_of(s).size()), s.count());
  }
}

TEST(Sumset, IdentityElement) {
  test::Rng rng(1);
  const Window w(40, 40);
  const PointSet2 b = test::random_points(rng, w, 40, 60);
  const PointSet2 origin = PointSet2::from_points(w, {{0, 0}});
  EXPECT_EQ(sumset(origin, b, w), b);
  EXPECT_EQ(iterated_sumset(b, 0, w), origin);
  EXPECT_EQ(iterated_sumset(b, 1, w), b);
}

TEST(Sumset, MatchesNaiveOracle) {
  test::Rng rng(2);
  for (int it = 0; it < 150; ++it) {
    const Window w(test::uniform(rng, 1, 140), test::uniform(rng, 1, 30));
    const PointSet2 a = test::bernoulli_set(rng, w, test::uniform(rng, 1, 9) / 20.0);
    const PointSet2 b = test::bernoulli_set(rng, w, test::uniform(rng, 0, 4) / 40.0);
    EXPECT_EQ(cells_of(sumset(a, b, w)), test::naive_sum(cells_of(a), cells_of(b), w));
  }
}

TEST(Sumset, IteratedMatchesNaiveOracle) {
  test::Rng rng(4);
  for (int it = 0; it < 60; ++it) {
    const Window w(test::uniform(rng, 4, 90), test::uniform(rng, 4, 40));
    const PointSet2 b = test::random_points(rng, w, 4, test::uniform(rng, 1, 5));
    const unsigned k = static_cast<unsigned>(test::uniform(rng, 0, 4));
    EXPECT_EQ(cells_of(iterated_sumset(b, k, w)), test::naive_iterate(cells_of(b), k, w));
  }
}

TEST(Sumset, CommutativeAndMonotone) {
  test::Rng rng(6);
  for (int it = 0; it < 100; ++it) {
    const Window w(64, 64);
    const PointSet2 a = test::random_points(rng, w, 20, 30), b = test::random_points(rng, w, 20, 10);
    const PointSet2 ab = sumset(a, b, w);
    EXPECT_EQ(ab, sumset(b, a, w));
    PointSet2 bigger = a;
    bigger.insert(test::uniform(rng, 0, 19), test::uniform(rng, 0, 19));
    EXPECT_TRUE(ab.is_subset_of(sumset(bigger, b, w)));
    // No clipping in a 64 window: |A+B| >= |A| + |B| - 1 (Cauchy-Davenport type bound in N^2).
    EXPECT_GE(ab.count(), a.count() + b.count() - 1);
  }
}

TEST(Sumset, ClippingNeverChangesPointsInsideTheWindow) {
  test::Rng rng(8);
  for (int it = 0; it < 50; ++it) {
    const PointSet2 a = test::random_points(rng, Window(64, 64), 30, 40);
    const PointSet2 b = test::random_points(rng, Window(64, 64), 30, 20);
    const Window small(test::uniform(rng, 1, 40), test::uniform(rng, 1, 40));
    EXPECT_EQ(sumset(a.resized(small), b.resized(small), small), sumset(a, b, Window(64, 64)).resized(small));
  }
}

TEST(Sumset, TruncatedDefinition) {
  // a = c, b ∋ (0,0), n = 1: (A+B) \ C is nonempty once B has a second point.
  const Window w(8, 8);
  const PointSet2 a = PointSet2::from_points(w, {{0, 0}, {1, 0}, {0, 1}});
  const PointSet2 b = PointSet2::from_points(w, {{0, 0}, {1, 1}});
  const PointSet2 t = truncated_sumset(a, b, a, 1, w);
  EXPECT_EQ(t, PointSet2::from_points(w, {{1, 1}, {2, 1}, {1, 2}}));

  test::Rng rng(10);
  for (int it = 0; it < 60; ++it) {
    const PointSet2 x = test::random_points(rng, Window(32, 32), 6, 6), y = test::random_points(rng, Window(32, 32), 4, 4);
    const PointSet2 c = test::random_points(rng, Window(32, 32), 8, 8);
    const unsigned n = static_cast<unsigned>(test::uniform(rng, 1, 3));
    const CellSet lhs = test::naive_sum(cells_of(x), test::naive_iterate(cells_of(y), n, Window(32, 32)), Window(32, 32));
    const CellSet sub = test::naive_sum(cells_of(c), test::naive_iterate(cells_of(y), n - 1, Window(32, 32)), Window(32, 32));
    CellSet want;
    for (const auto& p : lhs)
      if (!sub.count(p)) want.insert(p);
    EXPECT_EQ(cells_of(truncated_sumset(x, y, c, n, Window(32, 32))), want);
  }
}

TEST(Sumset, CyclicMatchesModularOracle) {
  test::Rng rng(12);
  for (int it = 0; it < 60; ++it) {
    const std::int64_t m = test::uniform(rng, 1, 9);
    const Window w(m, m);
    const PointSet2 a = test::bernoulli_set(rng, w, 0.3), b = test::bernoulli_set(rng, w, 0.3);
    CellSet want;
    for (const auto& [ax, ay] : cells_of(a))
      for (const auto& [bx, by] : cells_of(b)) want.insert({(ax + bx) % m, (ay + by) % m});
    EXPECT_EQ(cells_of(cyclic_sumset(a, b)), want);
  }
}

TEST(Sumset, OneDimensionalEmbedding) {
  const PointSet1 a = PointSet1::from_points(20, {0, 3, 7, 19});
  EXPECT_EQ(project_1d(embed_1d(a)), a);
  EXPECT_EQ(a.count_prefix(7), 3);
  EXPECT_THROW(project_1d(PointSet2::from_points(Window(4, 4), {{1, 1}})), Error);
}

TEST(Sumset, RowRuns) {
  const PointSet2 s = PointSet2::from_points(Window(130, 1), {{0, 0}, {1, 0}, {63, 0}, {64, 0}, {65, 0}, {129, 0}});
  const auto runs = row_runs(s, 0);
  ASSERT_EQ(runs.size(), 3u);
  EXPECT_EQ(runs[0].x0, 0);
  EXPECT_EQ(runs[0].len, 2);
  EXPECT_EQ(runs[1].x0, 63);
  EXPECT_EQ(runs[1].len, 3);
  EXPECT_EQ(runs[2].x0, 129);
}

}  // namespace
}  // namespace plk
