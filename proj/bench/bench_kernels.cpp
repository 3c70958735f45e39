#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>
#include <vector>

#include "fluctlab/exactdp.hpp"
#include "fluctlab/kernels.hpp"
#include "fluctlab/walk.hpp"

using namespace fluct;

namespace {

WalkSpec bench_walk() {
  std::vector<RawStep> steps;
  for (std::int64_t k = -4; k <= 4; ++k) steps.push_back({k, Rational(1, 9)});
  return WalkSpec::from_raw(steps, Requirement::Lattice);
}

std::vector<double> input(std::size_t n) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen);
  return v;
}

template <bool Parallel>
void BM_Convolve(benchmark::State& state) {
  auto k = kernels::make_kernel<double>(bench_walk());
  auto in = input(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(in.size() + k.spread());
  if constexpr (Parallel) omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::convolve(in, k, out);
    } else {
      kernels::serial::convolve(in, k, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Sum(benchmark::State& state) {
  auto in = input(static_cast<std::size_t>(state.range(0)));
  if constexpr (Parallel) omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    double s = Parallel ? kernels::omp::sum(in) : kernels::serial::sum(in);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// A whole DP run through the dispatching kernel.
void BM_ConstrainedTable(benchmark::State& state) {
  auto w = bench_walk();
  kernels::set_parallel_threshold(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto t = constrained_table<double>(w, StoppingTimeKind::tau_strict_plus(), 2048);
    benchmark::DoNotOptimize(t.survival_prob.back());
  }
}

}  // namespace

BENCHMARK(BM_Convolve<false>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Convolve<true>)->ArgsProduct({{1 << 12, 1 << 16, 1 << 20}, {1, 2, 4}})->UseRealTime();
BENCHMARK(BM_Sum<false>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Sum<true>)->ArgsProduct({{1 << 16, 1 << 20}, {1, 2, 4}})->UseRealTime();
BENCHMARK(BM_ConstrainedTable)->Arg(1 << 30)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
