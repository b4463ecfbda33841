// Per-sample costs that dominate the estimators: pencil assembly plus the
// top eigenpair, W_v, and one full radial sample.

#include <benchmark/benchmark.h>

#include "specgsa/estimators.hpp"

using namespace specgsa;

namespace {

void BM_AssembleLambdaMax(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const auto s = instance_from_seed(1, n, d);
    auto stream = make_stream(2, 0);
    const auto x = sample_gaussian_vector(stream, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_max(s.family().assemble(x)));
    }
}
BENCHMARK(BM_AssembleLambdaMax)->Args({64, 3})->Args({256, 8})->Args({1024, 23})->Args({512, 64});

void BM_LambdaMaxValueOnly(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    auto stream = make_stream(3, 0);
    const SymMatrix a = sample_goe(stream, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_max_value(a));
    }
}
BENCHMARK(BM_LambdaMaxValueOnly)->Arg(8)->Arg(23)->Arg(64);

void BM_QuadraticForms(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const auto s = instance_from_seed(1, n, d);
    auto stream = make_stream(4, 0);
    const auto v = sample_sphere(stream, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.family().quadratic_forms(v));
    }
}
BENCHMARK(BM_QuadraticForms)->Args({256, 8})->Args({1024, 23});

void BM_SampleSphere(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> out(n);
    std::uint64_t i = 0;
    for (auto _ : state) {
        auto stream = make_stream(5, i++);
        sample_sphere(stream, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_SampleSphere)->Arg(64)->Arg(1024);

void BM_RadialEstimate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const auto s = instance_from_seed(1, n, d);
    constexpr std::size_t m = 2'000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_radial(s, m, 6));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m));
}
BENCHMARK(BM_RadialEstimate)->Args({256, 8})->Args({1024, 23})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
