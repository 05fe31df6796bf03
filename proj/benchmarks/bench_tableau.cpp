#include <benchmark/benchmark.h>

#include <random>

#include "plk/tableau.hpp"
#include "plk/trimming.hpp"

namespace {

plk::Tableau staircase(std::int64_t n) {
  plk::Profile p;
  for (std::int64_t h = n; h >= 1; --h) p.push_back(h);
  return plk::Tableau::from_profile(p);
}

void BM_EnumerateSubtableaux(benchmark::State& state) {
  const auto t = staircase(state.range(0));
  for (auto _ : state) {
    plk::SubtableauEnumerator e(t, true, 10'000'000);
    std::int64_t n = 0;
    while (e.next()) ++n;
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateSubtableaux)->DenseRange(6, 12, 3);

plk::WeightedTableau weighted(std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> num(0, 12);
  const auto shape = staircase(n);
  plk::CellField rho(static_cast<std::size_t>(shape.width()));
  for (std::int64_t x = 0; x < shape.width(); ++x)
    for (std::int64_t y = 0; y < shape.column_height(x); ++y) rho[x].push_back(plk::rat(num(rng), 12));
  return plk::make_weighted(shape, rho);
}

void BM_MaxAlphaDp(benchmark::State& state) {
  const auto wt = weighted(state.range(0), 5);
  for (auto _ : state) benchmark::DoNotOptimize(plk::max_alpha(wt).alpha);
}
BENCHMARK(BM_MaxAlphaDp)->Arg(6)->Arg(12)->Arg(24);

void BM_TrimDp(benchmark::State& state) {
  const auto wt = weighted(state.range(0), 9);
  plk::TrimOptions opt;
  opt.enumerate_cells = 0;
  opt.verify = false;
  for (auto _ : state) benchmark::DoNotOptimize(plk::trim(wt, opt).s_max_trace.size());
}
BENCHMARK(BM_TrimDp)->Arg(6)->Arg(12)->Arg(18);

}  // namespace
