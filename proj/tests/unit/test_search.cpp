#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "plk/campaign.hpp"
#include "plk/error.hpp"
#include "plk/io.hpp"
#include "plk/search.hpp"
#include "support.hpp"

namespace plk {
namespace {

using test::CellSet;

Rational naive_box_sigma(const CellSet& s, std::int64_t n, std::int64_t m) {
  std::optional<Rational> best;
  for (std::int64_t a = 0; a <= n; ++a)
    for (std::int64_t b = 0; b <= m; ++b) {
      std::int64_t c = 0;
      for (const auto& [x, y] : s) c += x <= a && y <= b;
      const Rational r = rat(c, (a + 1) * (b + 1));
      if (!best || r < *best) best = r;
    }
  return *best;
}

CellSet cells(const std::vector<Point>& pts) {
  CellSet s;
  for (const auto& p : pts) s.insert({p.x, p.y});
  return s;
}

bool naive_box_holds(const CellSet& a, const CellSet& b, std::int64_t n, std::int64_t m, unsigned k, unsigned kp) {
  const Window w(n + 1, m + 1);
  const Rational s_sum = naive_box_sigma(test::naive_sum(a, test::naive_iterate(b, kp, w), w), n, m);
  const Rational s_a = naive_box_sigma(a, n, m), s_kb = naive_box_sigma(test::naive_iterate(b, k, w), n, m);
  return pow(s_sum, k) >= pow(s_a, k - kp) * pow(s_kb, kp);
}

TEST(BoxSearch, InstanceOrderCoversEveryPairOnce) {
  std::set<std::pair<CellSet, CellSet>> seen;
  for (std::uint64_t i = 0; i < 128; ++i) {
    const auto [a, b] = box_instance(1, 1, i);
    EXPECT_TRUE(cells(b).count({0, 0}));
    seen.insert({cells(a), cells(b)});
  }
  EXPECT_EQ(seen.size(), 128u);  // 2^4 choices of A times 2^3 of B
}

TEST(BoxSearch, ExhaustiveSmallBoxesAgreeWithTheNaiveOracle) {
  for (const auto& [n, m] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {2, 1}, {1, 2}}) {
    BoxSearchOptions opt;
    opt.n = n;
    opt.m = m;
    const SearchReport r = search_box_sigma(opt);
    const std::uint64_t c = static_cast<std::uint64_t>((n + 1) * (m + 1));
    EXPECT_EQ(r.expected_total, 1ull << (2 * c - 1));
    EXPECT_EQ(r.instances, r.expected_total);
    EXPECT_TRUE(r.complete);
    std::size_t naive_violations = 0;
    for (std::uint64_t i = 0; i < r.expected_total; ++i) {
      const auto [a, b] = box_instance(n, m, i);
      naive_violations += !naive_box_holds(cells(a), cells(b), n, m, 2, 1);
    }
    EXPECT_EQ(r.violations.size(), naive_violations);
    EXPECT_EQ(r.verdict, naive_violations ? Verdict::Violation : Verdict::Clean);
  }
}

TEST(BoxSearch, CursorResumeCoversTheWholeSpace) {
  BoxSearchOptions opt;
  opt.budget = 50;
  std::uint64_t total = 0;
  std::vector<Verdict> verdicts;
  for (;;) {
    const SearchReport r = search_box_sigma(opt);
    total += r.instances;
    verdicts.push_back(r.verdict);
    opt.cursor = r.cursor;
    if (r.complete) break;
  }
  EXPECT_EQ(total, 128u);
  EXPECT_EQ(verdicts.size(), 3u);
  EXPECT_EQ(verdicts.front(), Verdict::Inconclusive);
  EXPECT_EQ(verdicts.back(), Verdict::Clean);
  opt.cursor = 129;
  EXPECT_THROW(search_box_sigma(opt), Error);
}

TEST(BoxSearch, OneDimensionalBoxesAreClean) {
  for (std::int64_t n = 1; n <= 8; ++n) {
    BoxSearchOptions opt;
    opt.n = n;
    opt.m = 0;
    const SearchReport r = search_box_sigma(opt);
    EXPECT_EQ(r.verdict, Verdict::Clean) << "N=" << n;
    EXPECT_EQ(exit_code(r.verdict), 0);
  }
}

TEST(BoxSearch, RandomModeIsSeededAndMatchesTheOracle) {
  BoxSearchOptions opt;
  opt.n = 3;
  opt.m = 3;
  opt.k = 3;
  opt.k_prime = 2;
  opt.mode = SearchMode::Random;
  opt.budget = 200;
  opt.seed = 11;
  const SearchReport r1 = search_box_sigma(opt), r2 = search_box_sigma(opt);
  EXPECT_EQ(r1.violations, r2.violations);
  EXPECT_EQ(r1.expected_total, 0u);
  for (const auto& v : r1.violations)  // every report must be a genuine violation
    EXPECT_FALSE(naive_box_holds(cells(points_from_json(v.at("A"))), cells(points_from_json(v.at("B"))), 3, 3, 3, 2));
  opt.mode = SearchMode::Exhaustive;
  EXPECT_THROW(search_box_sigma(opt), Error);  // 16 cells exceed the exhaustive guard
}

TEST(BoxSearch, ReportLines) {
  BoxSearchOptions opt;
  opt.budget = 5;
  const std::string text = search_box_sigma(opt).to_jsonl();
  std::vector<nlohmann::json> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    lines.push_back(nlohmann::json::parse(text.substr(pos, nl - pos)));
    pos = nl + 1;
  }
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0]["type"], "header");
  EXPECT_EQ(lines[1]["type"], "summary");
  EXPECT_EQ(lines[1]["cursor"], 5);
  EXPECT_EQ(lines[1]["verdict"], "inconclusive");
}

TEST(FractalScreen, AlwaysInconclusive) {
  FractalScreenOptions opt;
  opt.patterns.push_back(FractalSpec::with_default_schedule(1, {{0, 0}, {1, 1}}, 2));
  opt.b_family = {{{0, 0}, {1, 0}, {0, 1}}};
  opt.windows = {36, 48, 72};
  const SearchReport r = search_fractal_rect(opt);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
  EXPECT_EQ(exit_code(r.verdict), 3);
  EXPECT_EQ(r.instances, 1u);
  opt.windows = {36, 48};
  EXPECT_THROW(search_fractal_rect(opt), Error);
}

TEST(Campaign, SplitMixMatchesTheReferenceSequence) {
  // First output of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(mix_seed(0), 0xE220A8397B1DCDAFull);
}

nlohmann::json small_config(std::uint64_t seed) {
  return {{"seed", seed},
          {"families",
           {{{"name", "cardinality"}, {"count", 30}},
            {{"name", "schnirelmann"}, {"count", 30}},
            {{"name", "magnification"}, {"count", 30}},
            {{"name", "magnification"}, {"count", 20}, {"mode", "cyclic"}},
            {{"name", "heavy-subset"}, {"count", 30}}}}};
}

TEST(Campaign, DeterministicAcrossThreadCounts) {
  const CampaignReport one = verify_campaign(small_config(5), 1);
  const CampaignReport three = verify_campaign(small_config(5), 3);
  EXPECT_EQ(one.to_jsonl(), three.to_jsonl());
  EXPECT_TRUE(one.clean());
  EXPECT_NE(one.to_jsonl(), verify_campaign(small_config(6), 1).to_jsonl());
  ASSERT_EQ(one.families.size(), 5u);
  for (const auto& f : one.families) EXPECT_EQ(f.passed, f.count) << f.name;
  EXPECT_EQ(one.families[4].extra["compared"], one.families[4].extra["agreed"]);
}

TEST(Campaign, EmptyAndBadConfigs) {
  const CampaignReport empty = verify_campaign(nlohmann::json{{"seed", 3}});
  EXPECT_TRUE(empty.clean());
  EXPECT_TRUE(empty.families.empty());
  const std::string text = empty.to_jsonl();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_THROW(verify_campaign(nlohmann::json{{"families", {{{"name", "nope"}, {"count", 1}}}}}), Error);
  try {
    verify_campaign(nlohmann::json{{"families", {{{"name", "schnirelmann"}, {"count", 1}, {"k_max", 1}}}}});
    FAIL() << "expected an input error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

}  // namespace
}  // namespace plk
