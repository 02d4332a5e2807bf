// Serial reference vs OpenMP kernels on grid-sized inputs.
//   OMP_NUM_THREADS=4 ./kernel_bench

#include "nhtrack/kernels.hpp"
#include "nhtrack/trackers.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

namespace {

using namespace nhtrack;

std::vector<double> random_doubles(std::size_t n, double scale) {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> d(0.0, scale);
    std::vector<double> v(n);
    for (double& x : v) x = d(gen);
    return v;
}

std::vector<std::int64_t> random_fixed(std::size_t n) {
    std::mt19937_64 gen(2);
    std::uniform_int_distribution<std::int64_t> d(-(1LL << 34), 1LL << 34);
    std::vector<std::int64_t> v(n);
    for (auto& x : v) x = d(gen);
    return v;
}

template <auto Kernel>
void BM_WindowSums(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto in = random_fixed(n);
    std::vector<std::int64_t> out(n);
    for (auto _ : state) {
        Kernel(in, 50, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <auto Kernel>
void BM_Convolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto in = random_doubles(n, 1.0);
    const auto taps = gaussian_taps(static_cast<double>(state.range(1)), 6.0);
    std::vector<double> out(n);
    for (auto _ : state) {
        Kernel(in, taps, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <auto Kernel>
void BM_ExpShifted(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto in = random_doubles(n, 20.0);
    std::vector<double> out(n);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(in, 60.0, out));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

}  // namespace

BENCHMARK(BM_WindowSums<kernels::window_sums_serial>)->Name("window_sums/serial")->Arg(1001)->Arg(100'001);
BENCHMARK(BM_WindowSums<kernels::window_sums_parallel>)->Name("window_sums/parallel")->Arg(1001)->Arg(100'001);
BENCHMARK(BM_Convolve<kernels::convolve_serial>)->Name("convolve/serial")->Args({1001, 2})->Args({100'001, 8});
BENCHMARK(BM_Convolve<kernels::convolve_parallel>)->Name("convolve/parallel")->Args({1001, 2})->Args({100'001, 8});
BENCHMARK(BM_ExpShifted<kernels::exp_shifted_serial>)->Name("exp_shifted/serial")->Arg(1001)->Arg(100'001);
BENCHMARK(BM_ExpShifted<kernels::exp_shifted_parallel>)->Name("exp_shifted/parallel")->Arg(1001)->Arg(100'001);

BENCHMARK_MAIN();
