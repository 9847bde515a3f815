#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "ihalton/ihalton.hpp"

using namespace ihalton;

namespace {

const DirectionTable& directions() {
  static const DirectionTable t = load_direction_numbers(std::filesystem::path(IHALTON_BENCH_DIRNUMS));
  return t;
}

void BM_RadicalInverseInt(benchmark::State& state) {
  const IntegerBase base(static_cast<std::uint64_t>(state.range(0)));
  std::uint64_t i = 1;
  for (auto _ : state) benchmark::DoNotOptimize(radical_inverse_int(i++, base));
}
BENCHMARK(BM_RadicalInverseInt)->Arg(2)->Arg(3)->Arg(229);

void BM_RadicalInverseQuad(benchmark::State& state) {
  const auto base = quadratic_root(static_cast<std::uint32_t>(state.range(0)), 1);
  std::uint64_t i = 1;
  for (auto _ : state) benchmark::DoNotOptimize(radical_inverse_quad(i++, base));
}
BENCHMARK(BM_RadicalInverseQuad)->Arg(1)->Arg(3)->Arg(19);

void BM_ScrambleValue(benchmark::State& state) {
  const auto spec = ScrambleSpec::make(42, 0, static_cast<std::uint64_t>(state.range(0)));
  double x = 0.123456789;
  for (auto _ : state) {
    x = scramble_value(x, spec);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ScrambleValue)->Arg(2)->Arg(3)->Arg(20);

void BM_InterlacedPoint(benchmark::State& state) {
  const InterlacedSequence seq(select_bases(static_cast<std::size_t>(state.range(0))));
  std::vector<double> out(seq.dimension());
  std::uint64_t i = 1;
  for (auto _ : state) {
    seq.point(i++, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InterlacedPoint)->Arg(10)->Arg(50);

void BM_SobolPoint(benchmark::State& state) {
  const SobolGenerator gen(directions(), static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  std::uint64_t i = 1;
  for (auto _ : state) {
    gen.point(i++, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SobolPoint)->Arg(10)->Arg(50);

void BM_PairCollisions(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PointSet pts = HaltonSequence(3).generate(1, n);
  const MultiBase bases({2, 3, 5});
  const std::uint32_t k[] = {4, 3, 2};
  for (auto _ : state) benchmark::DoNotOptimize(pair_collisions(pts, bases, k));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PairCollisions)->Arg(500)->Arg(1 << 14);

void BM_QmcEstimateF2(benchmark::State& state) {
  const InterlacedSequence seq(select_bases(25));
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qmc_estimate(F2Spec{0.1, 25}, seq, n, 1, 1).estimate);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QmcEstimateF2)->Arg(1 << 12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
