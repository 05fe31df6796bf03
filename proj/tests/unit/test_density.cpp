#include <gtest/gtest.h>

#include <functional>

#include "plk/density.hpp"
#include "plk/error.hpp"
#include "support.hpp"

namespace plk {
namespace {

bool canonical(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num() == r.get_num() && c.get_den() == r.get_den();
}

Rational naive_sigma_1d(const PointSet1& a) {
  std::optional<Rational> best;
  std::int64_t c = 0;
  for (std::int64_t n = 0; n < a.window_len(); ++n) {
    c += a.contains(n);
    const Rational r = rat(c, n + 1);
    if (!best || r < *best) best = r;
  }
  return *best;
}

Rational naive_sigma_2d(const PointSet2& a, std::int64_t N, std::int64_t M) {
  std::optional<Rational> best;
  for (std::int64_t n = 0; n <= N; ++n)
    for (std::int64_t m = 0; m <= M; ++m) {
      const Rational r = rat(a.count_in(Box{0, 0, n + 1, m + 1}), (n + 1) * (m + 1));
      if (!best || r < *best) best = r;
    }
  return *best;
}

// Min over antichains of at most L corners on the stride grid above R, by plain recursion.
Rational naive_tab(const PointSet2& a, std::int64_t R, std::int64_t L, std::int64_t stride) {
  std::vector<std::int64_t> xs, ys;
  for (std::int64_t v = stride; v <= a.width(); v += stride)
    if (v > R) xs.push_back(v);
  for (std::int64_t v = stride; v <= a.height(); v += stride)
    if (v > R) ys.push_back(v);
  std::optional<Rational> best;
  std::vector<Point> cur;
  std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t xi, std::int64_t ymax) {
    if (!cur.empty()) {
      const PointSet2 f = TableauRegion(cur).to_point_set(a.window());
      const Rational r = rat((a & f).count(), f.count());
      if (!best || r < *best) best = r;
    }
    if (static_cast<std::int64_t>(cur.size()) == L) return;
    for (std::size_t i = xi; i < xs.size(); ++i)
      for (auto y : ys)
        if (y < ymax) {
          cur.push_back({xs[i], y});
          go(i + 1, y);
          cur.pop_back();
        }
  };
  go(0, a.height() + 1);
  return *best;
}

TEST(Density, SchnirelmannOneDimensional) {
  EXPECT_EQ(schnirelmann_1d(PointSet1::from_points(10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9})), rat(1));
  EXPECT_EQ(schnirelmann_1d(PointSet1::from_points(10, {1, 2})), rat(0));
  // Evens on [0,10): the minimum 1/2 is attained at n = 1.
  EXPECT_EQ(schnirelmann_1d(PointSet1::from_points(10, {0, 2, 4, 6, 8})), rat(1, 2));
  test::Rng rng(1);
  for (int it = 0; it < 300; ++it) {
    PointSet1 a(test::uniform(rng, 1, 150));
    for (std::int64_t x = 0; x < a.window_len(); ++x)
      if (test::uniform(rng, 0, 2) > 0) a.insert(x);
    EXPECT_EQ(schnirelmann_1d(a), naive_sigma_1d(a));
  }
}

TEST(Density, SchnirelmannTwoDimensional) {
  test::Rng rng(2);
  for (int it = 0; it < 200; ++it) {
    const Window w(test::uniform(rng, 1, 20), test::uniform(rng, 1, 20));
    const PointSet2 a = test::bernoulli_set(rng, w, 0.7);
    const std::int64_t N = test::uniform(rng, 0, w.W - 1), M = test::uniform(rng, 0, w.H - 1);
    const Rational s = schnirelmann_2d(a, N, M);
    EXPECT_EQ(s, naive_sigma_2d(a, N, M));
    EXPECT_TRUE(canonical(s));
  }
  EXPECT_THROW(schnirelmann_2d(PointSet2(3, 3), 3, 0), Error);
}

TEST(Density, TabEstimateMatchesBruteForce) {
  test::Rng rng(3);
  for (int it = 0; it < 120; ++it) {
    const Window w(test::uniform(rng, 6, 24), test::uniform(rng, 6, 24));
    const PointSet2 a = test::bernoulli_set(rng, w, test::uniform(rng, 2, 8) / 10.0);
    const std::int64_t stride = test::uniform(rng, 1, 4), R = test::uniform(rng, 0, 5);
    const std::int64_t L = test::uniform(rng, 1, 3);
    if (R / stride * stride + stride > std::min(w.W, w.H)) continue;
    const TabEstimate est = tab_lower_estimate(a, R, L, stride);
    EXPECT_EQ(est.value, naive_tab(a, R, L, stride)) << "R=" << R << " L=" << L << " stride=" << stride;
    EXPECT_LE(static_cast<std::int64_t>(est.witness.size()), L);
    EXPECT_EQ(rat(count_in_region(a, est.witness), est.witness.measure()), est.value);
    EXPECT_TRUE(canonical(est.value));
  }
}

TEST(Density, TabEstimateFamilyInclusion) {
  test::Rng rng(4);
  for (int it = 0; it < 60; ++it) {
    const Window w(48, 48);
    const PointSet2 a = test::bernoulli_set(rng, w, 0.5);
    Rational prev = tab_lower_estimate(a, 8, 1, 4).value;
    for (std::int64_t L = 2; L <= 4; ++L) {
      const Rational cur = tab_lower_estimate(a, 8, L, 4).value;
      EXPECT_LE(cur, prev);
      prev = cur;
    }
  }
}

TEST(Density, TabEstimateFullAndGuard) {
  const PointSet2 full = PointSet2::full(Window(32, 32));
  EXPECT_EQ(tab_lower_estimate(full, 4, 3, 2).value, rat(1));
  EXPECT_THROW(tab_lower_estimate(full, 0, 4, 1, 1000), Error);
  EXPECT_THROW(tab_lower_estimate(full, 32, 1, 1), Error);
}

TEST(Density, PrefixDensityAlongTerms) {
  const PointSet2 a = PointSet2::from_points(Window(8, 8), {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  const FolnerSpec f = FolnerSpec::rect({{2, 2}, {4, 4}, {8, 8}});
  const DensityReport rep = prefix_density(a, f);
  ASSERT_EQ(rep.ratios.size(), 3u);
  EXPECT_EQ(rep.ratios[0], rat(1, 2));
  EXPECT_EQ(rep.ratios[1], rat(1, 4));
  EXPECT_EQ(rep.ratios[2], rat(1, 16));
  EXPECT_EQ(rep.min(), rat(1, 16));
  EXPECT_EQ(rep.argmax, 0u);
  EXPECT_EQ(rep.running_min[1], rat(1, 4));
  EXPECT_TRUE(canonical(rep.ratios[0]));
  EXPECT_NE(rep.to_csv().find("2,1,16"), std::string::npos);
}

TEST(Density, FolnerValidation) {
  EXPECT_THROW(FolnerSpec::rect({{4, 4}, {2, 2}}), Error);  // shrinking measure
  EXPECT_THROW(FolnerSpec::rect({{4, 4}}, 5), Error);       // below the floor
  EXPECT_THROW(FolnerSpec::tab(1, {{{2, 4}, {4, 2}}}), Error);
  const FolnerSpec t = FolnerSpec::tab(2, {{{7, 13}, {13, 7}}}, 1, 4);
  EXPECT_EQ(t.terms[0].corners(), (std::vector<Point>{{4, 12}, {12, 4}}));
}

TEST(Density, PeriodicSets) {
  PeriodicSet1 a;
  a.period = 6;
  a.residues = {1, 3, 3, 5};
  a.transient = 4;
  a.transient_points = {0, 2};
  EXPECT_EQ(a.density(), rat(1, 2));
  EXPECT_TRUE(a.contains(0));
  EXPECT_FALSE(a.contains(1));
  EXPECT_TRUE(a.contains(7));
  EXPECT_EQ(a.truncate(12).points(), (std::vector<std::int64_t>{0, 2, 5, 7, 9, 11}));
}

TEST(Density, ProductOfEvensAndMultiplesOfThree) {
  PeriodicSet1 evens, threes;
  evens.period = 2;
  evens.residues = {0};
  threes.period = 3;
  threes.residues = {0};
  // Stride 6 aligns every candidate with both periods, so the estimate is exact.
  const ProductReport rep = product_density_check(evens, threes, 2, 60, 240, 6);
  EXPECT_EQ(rep.expected, rat(1, 6));
  EXPECT_EQ(rep.estimate, rat(1, 6));
  // An unaligned stride sees boundary effects bounded by 1/R.
  const ProductReport off = product_density_check(evens, threes, 2, 60, 240, 7);
  EXPECT_LE(off.gap, rat(1, 60));
}

}  // namespace
}  // namespace plk
