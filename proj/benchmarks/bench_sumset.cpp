#include <benchmark/benchmark.h>

#include <random>

#include "plk/fractal.hpp"
#include "plk/sumset.hpp"

namespace {

plk::PointSet2 random_set(std::int64_t side, std::int64_t window, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  plk::PointSet2 s(window, window);
  for (std::int64_t y = 0; y < side; ++y)
    for (std::int64_t x = 0; x < side; ++x)
      if (coin(rng)) s.insert(x, y);
  return s;
}

void BM_SumsetSparseB(benchmark::State& state) {
  const std::int64_t w = state.range(0);
  const auto a = random_set(w / 2, w, 0.3, 1);
  const auto b = random_set(8, w, 0.3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(plk::sumset(a, b, plk::Window(w, w)).count());
  state.SetItemsProcessed(state.iterations() * a.count() * b.count());
}
BENCHMARK(BM_SumsetSparseB)->Arg(256)->Arg(1024)->Arg(4096);

void BM_SumsetDense(benchmark::State& state) {
  const std::int64_t w = state.range(0);
  const auto a = random_set(w / 2, w, 0.5, 3);
  const auto b = random_set(w / 2, w, 0.5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(plk::sumset(a, b, plk::Window(w, w)).count());
}
BENCHMARK(BM_SumsetDense)->Arg(128)->Arg(256)->Arg(512);

void BM_IteratedAxes(benchmark::State& state) {
  const std::int64_t w = state.range(0);
  plk::PointSet2 b(w, w);
  for (std::int64_t t = 0; t < w; ++t) {
    b.insert(t, 0);
    b.insert(0, t);
  }
  for (auto _ : state) benchmark::DoNotOptimize(plk::iterated_sumset(b, 2, plk::Window(w, w)).count());
}
BENCHMARK(BM_IteratedAxes)->Arg(256)->Arg(1024);

void BM_FractalGenerate(benchmark::State& state) {
  const auto spec = plk::FractalSpec::with_default_schedule(1, {{0, 0}, {1, 1}}, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(plk::generate(spec, state.range(0)).count());
}
BENCHMARK(BM_FractalGenerate)->Arg(3)->Arg(4);

}  // namespace
