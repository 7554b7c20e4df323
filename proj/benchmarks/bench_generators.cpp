#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "iraug/baselines.hpp"
#include "iraug/cart.hpp"
#include "iraug/generator.hpp"
#include "iraug/relevance.hpp"
#include "iraug/weighting.hpp"

using namespace iraug;

namespace {

// Numeric features with a target whose rare values sit in the low tail.
Dataset make_table(std::size_t n, std::size_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<Column> cols;
  std::vector<double> y(n, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    Column c{"x" + std::to_string(j), ColumnKind::Numeric, {}, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      c.values[i] = z(rng);
      y[i] += 0.5 * c.values[i];
    }
    cols.push_back(std::move(c));
  }
  for (auto& v : y) v = -std::exp(v + 0.3 * z(rng));
  cols.push_back(Column{"y", ColumnKind::Numeric, {}, std::move(y)});
  return Dataset(std::move(cols), p);
}

void BM_CartGenIR(benchmark::State& state) {
  const auto ds = make_table(static_cast<std::size_t>(state.range(0)), 12, 1);
  CartGenParams p;
  p.alpha = 1.5;
  p.density = DensityMethod::DenseWeight;
  p.delta = 0.001;
  for (auto _ : state) {
    ++p.seed;
    benchmark::DoNotOptimize(cartgen_ir(ds, p));
  }
}
BENCHMARK(BM_CartGenIR)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_Smoter(benchmark::State& state) {
  const auto ds = make_table(static_cast<std::size_t>(state.range(0)), 12, 1);
  const auto rel = build_relevance(ds.target());
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(smoter(ds, rel, PartitionMode::Balance, 5, rng));
}
BENCHMARK(BM_Smoter)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_Kde(benchmark::State& state) {
  const auto ds = make_table(static_cast<std::size_t>(state.range(0)), 1, 3);
  const auto y = ds.target();
  for (auto _ : state) benchmark::DoNotOptimize(kde(y));
}
BENCHMARK(BM_Kde)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_BuildRelevance(benchmark::State& state) {
  const auto ds = make_table(static_cast<std::size_t>(state.range(0)), 1, 4);
  const auto y = ds.target();
  for (auto _ : state) benchmark::DoNotOptimize(build_relevance(y));
}
BENCHMARK(BM_BuildRelevance)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_CartFit(benchmark::State& state) {
  const auto ds = make_table(static_cast<std::size_t>(state.range(0)), 12, 5);
  for (auto _ : state) benchmark::DoNotOptimize(CartTree::fit(ds, ds.target_index(), CartParams{}));
}
BENCHMARK(BM_CartFit)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
