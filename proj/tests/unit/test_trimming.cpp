#include <gtest/gtest.h>

#include "plk/error.hpp"
#include "plk/io.hpp"
#include "plk/trimming.hpp"
#include "support.hpp"

namespace plk {
namespace {

struct Sums {
  Rational mu, mu_f;
};

// Σ mu and Σ mu*f over the cells of lo < y <= hi column by column, straight from the fields.
Sums sums_between(const WeightedTableau& wt, const CellField& f, const Profile& lo, const Profile& hi) {
  Sums s{0, 0};
  for (std::size_t x = 0; x < hi.size(); ++x)
    for (std::int64_t y = x < lo.size() ? lo[x] : 0; y < hi[x]; ++y) {
      s.mu += wt.mu[x][y];
      s.mu_f += wt.mu[x][y] * f[x][y];
    }
  return s;
}

WeightedTableau random_weighted(test::Rng& rng, std::int64_t width, std::int64_t max_h, bool counting) {
  WeightedTableau wt;
  wt.shape = Tableau::from_profile(test::random_profile(rng, width, max_h));
  const Profile& p = wt.shape.profile();
  wt.mu.resize(p.size());
  wt.rho.resize(p.size());
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::int64_t y = 0; y < p[x]; ++y) {
      wt.mu[x].push_back(counting ? rat(1) : rat(test::uniform(rng, 1, 5), test::uniform(rng, 1, 3)));
      wt.rho[x].push_back(test::random_rational(rng, 6));
    }
  return wt;
}

Rational naive_alpha(const WeightedTableau& wt) {
  std::optional<Rational> best;
  for (const auto& s : test::naive_subprofiles(wt.shape.profile())) {
    const Sums t = sums_between(wt, wt.rho, {}, s);
    if (t.mu == 0) continue;
    const Rational a = t.mu_f / t.mu;
    if (!best || a < *best) best = a;
  }
  return *best;
}

// Valid S: proper subtableau with A(rho, I \ S) > alpha.
bool valid_s(const WeightedTableau& wt, const Rational& alpha, const Profile& s) {
  const Profile& I = wt.shape.profile();
  if (s == I) return false;
  const Sums t = sums_between(wt, wt.rho, s, I);
  return t.mu_f > alpha * t.mu;
}

bool contains(const Profile& big, const Profile& small) {
  for (std::size_t x = 0; x < big.size(); ++x)
    if ((x < small.size() ? small[x] : 0) > big[x]) return false;
  return true;
}

TEST(Trimming, MaxAlphaMatchesBothOracles) {
  test::Rng rng(1);
  for (int it = 0; it < 200; ++it) {
    const auto wt = random_weighted(rng, test::uniform(rng, 1, 5), 4, it % 2 == 0);
    const Rational want = naive_alpha(wt);
    const AlphaResult dp = max_alpha(wt);
    EXPECT_EQ(dp.alpha, want);
    EXPECT_EQ(max_alpha_exhaustive(wt).alpha, want);
    ASSERT_FALSE(dp.witness.empty());
    const Sums w = sums_between(wt, wt.rho, {}, dp.witness.profile());
    EXPECT_EQ(w.mu_f / w.mu, want);
  }
}

TEST(Trimming, ConstantValuesGiveThatValue) {
  const Tableau shape = Tableau::from_profile({4, 3, 1});
  CellField rho;
  for (auto h : shape.profile()) rho.push_back(std::vector<Rational>(static_cast<std::size_t>(h), rat(2, 5)));
  const auto wt = make_weighted(shape, rho);
  EXPECT_EQ(max_alpha(wt).alpha, rat(2, 5));
  const TrimOutput out = trim(wt);
  EXPECT_EQ(out.rho_prime, rho);
}

TEST(Trimming, SmallWorkedExample) {
  const auto wt = make_weighted(Tableau::from_profile({2, 2, 2}),
                                {{rat(1, 3), rat(1)}, {rat(1, 3), rat(1, 2)}, {rat(1, 3), rat(0)}});
  EXPECT_EQ(max_alpha(wt).alpha, rat(1, 3));
  const TrimOutput out = trim(wt);
  EXPECT_EQ(out.rho_prime, (CellField{{rat(1, 3), rat(2, 3)}, {rat(1, 3), rat(1, 3)}, {rat(1, 3), rat(0)}}));
}

TEST(Trimming, OutputSatisfiesTheThreeConditions) {
  test::Rng rng(2);
  for (int it = 0; it < 150; ++it) {
    const auto wt = random_weighted(rng, test::uniform(rng, 1, 5), 4, it % 3 != 0);
    const Rational alpha = naive_alpha(wt);
    const TrimOutput out = trim(wt, alpha);
    const Profile& I = wt.shape.profile();
    for (std::size_t x = 0; x < I.size(); ++x)
      for (std::int64_t y = 0; y < I[x]; ++y) {
        EXPECT_LE(out.rho_prime[x][y], wt.rho[x][y]);
        EXPECT_GE(out.rho_prime[x][y], 0);
      }
    const Sums all = sums_between(wt, out.rho_prime, {}, I);
    EXPECT_EQ(all.mu_f, alpha * all.mu);
    for (const auto& s : test::naive_subprofiles(I)) {
      if (s == I) continue;
      const Sums rest = sums_between(wt, out.rho_prime, s, I);
      EXPECT_LE(rest.mu_f, alpha * rest.mu);
    }
    EXPECT_TRUE(verify_trim(wt, alpha, out, VerifyMode::Exhaustive));
    EXPECT_TRUE(verify_trim(wt, alpha, out, VerifyMode::Dp));
  }
}

TEST(Trimming, LargeShapesUseTheDpRoutes) {
  test::Rng rng(3);
  TrimOptions opt;
  opt.enumerate_cells = 0;
  opt.verify_cells = 0;
  for (int it = 0; it < 20; ++it) {
    const auto wt = random_weighted(rng, test::uniform(rng, 8, 14), 12, it % 2 == 0);
    const Rational alpha = max_alpha(wt).alpha;
    const TrimOutput out = trim(wt, alpha, opt);
    EXPECT_TRUE(check_trim(wt, alpha, out.rho_prime, VerifyMode::Dp).ok());
  }
}

TEST(Trimming, CheckRejectsBrokenOutputs) {
  test::Rng rng(4);
  for (int it = 0; it < 40; ++it) {
    const auto wt = random_weighted(rng, 3, 3, true);
    const Rational alpha = max_alpha(wt).alpha;
    CellField bad = trim(wt, alpha).rho_prime;
    bad[0][0] += rat(1, 7);  // breaks the average, and possibly rho' <= rho
    EXPECT_FALSE(check_trim(wt, alpha, bad, VerifyMode::Exhaustive).ok());
  }
}

TEST(Trimming, SMaxSearches) {
  test::Rng rng(5);
  for (int it = 0; it < 200; ++it) {
    const auto wt = random_weighted(rng, test::uniform(rng, 1, 5), 4, it % 2 == 0);
    const Rational alpha = naive_alpha(wt) + rat(test::uniform(rng, 0, 3), 10);
    std::vector<Profile> valid;
    for (const auto& s : test::naive_subprofiles(wt.shape.profile()))
      if (valid_s(wt, alpha, s)) valid.push_back(s);
    const auto dp = find_s_max_dp(wt, alpha);
    const auto en = find_s_max_enumerate(wt, alpha);
    ASSERT_EQ(dp.has_value(), !valid.empty());
    ASSERT_EQ(en.has_value(), !valid.empty());
    if (valid.empty()) continue;
    const Profile dpp = [&] {
      Profile p = dp->profile();
      p.resize(wt.shape.profile().size(), 0);
      return p;
    }();
    EXPECT_TRUE(valid_s(wt, alpha, dpp));
    for (const auto& v : valid)  // no valid strict superset
      EXPECT_FALSE(v != dpp && contains(v, dpp));
    Rational best = 0;
    for (const auto& v : valid) best = std::max(best, sums_between(wt, wt.rho, {}, v).mu);
    Profile enp = en->profile();
    enp.resize(wt.shape.profile().size(), 0);
    EXPECT_TRUE(valid_s(wt, alpha, enp));
    EXPECT_EQ(wt.measure(enp), best);
  }
}

TEST(Trimming, ValidationErrors) {
  EXPECT_THROW(make_weighted(Tableau::from_profile({1}), {{rat(3, 2)}}), Error);
  EXPECT_THROW(make_weighted(Tableau::from_profile({2}), {{rat(1, 2)}}), Error);
  WeightedTableau wt = make_weighted(Tableau::from_profile({1}), {{rat(1, 2)}});
  wt.mu[0][0] = 0;
  EXPECT_THROW(wt.validate(), Error);
}

}  // namespace
}  // namespace plk
