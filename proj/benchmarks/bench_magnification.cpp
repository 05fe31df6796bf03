#include <benchmark/benchmark.h>

#include <random>

#include "plk/magnification.hpp"

namespace {

plk::MagnificationInstance instance(std::int64_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(0, 7);
  const plk::Window w(48, 48);
  plk::MagnificationInstance inst{plk::PointSet2(w), plk::PointSet2(w), plk::PointSet2(w)};
  while (inst.a.count() < size) inst.a.insert(coord(rng), coord(rng));
  while (inst.b.count() < 6) inst.b.insert(coord(rng), coord(rng));
  while (inst.c.count() < 4) inst.c.insert(coord(rng), coord(rng));
  return inst;
}

void BM_MagnificationGray(benchmark::State& state) {
  const auto inst = instance(state.range(0), 7);
  for (auto _ : state) benchmark::DoNotOptimize(plk::magnification(inst, 2).d);
  state.SetItemsProcessed(state.iterations() * ((std::int64_t{1} << state.range(0)) - 1));
}
BENCHMARK(BM_MagnificationGray)->DenseRange(8, 16, 4);

void BM_MagnificationFlow(benchmark::State& state) {
  const auto inst = instance(state.range(0), 7);
  for (auto _ : state) benchmark::DoNotOptimize(plk::magnification_flow(inst, 2).d);
}
BENCHMARK(BM_MagnificationFlow)->DenseRange(8, 16, 4);

void BM_DeltaHeavyGreedy(benchmark::State& state) {
  const auto inst = instance(state.range(0), 11);
  const plk::Surd delta(plk::rat(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(plk::delta_heavy(inst, 1, 2, delta, plk::HeavyMode::Greedy).heavy);
}
BENCHMARK(BM_DeltaHeavyGreedy)->Arg(8)->Arg(16)->Arg(32);

}  // namespace
