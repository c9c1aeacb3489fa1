#include <qdiff/index.hpp>
#include <qdiff/series.hpp>
#include <qdiff/special.hpp>

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace
{

std::vector<qdiff::cplx> random_vector(std::size_t n, unsigned seed)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<qdiff::cplx> v(n);
    for (auto &x : v) {
        x = {u(gen), u(gen)};
    }
    return v;
}

template <bool Parallel>
void BM_cauchy(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_vector(n, 1);
    const auto b = random_vector(n, 2);
    std::vector<qdiff::cplx> out(n);
    std::vector<double> mag(n);
    for (auto _ : state) {
        if constexpr (Parallel) {
            qdiff::kernels::cauchy_product(a, b, out, mag);
        } else {
            qdiff::kernels::cauchy_product_serial(a, b, out, mag);
        }
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void BM_theta_batch(benchmark::State &state)
{
    const auto ctx = qdiff::make_context(1.5);
    auto z = random_vector(static_cast<std::size_t>(state.range(0)), 3);
    for (auto &x : z) {
        x = x * 1.2 + qdiff::cplx(1.6, 0.3);
    }
    std::vector<qdiff::cplx> out(z.size());
    for (auto _ : state) {
        if constexpr (Parallel) {
            qdiff::kernels::big_theta_batch(*ctx, z, out);
        } else {
            qdiff::kernels::big_theta_batch_serial(*ctx, z, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void BM_window(benchmark::State &state)
{
    const auto ctx = qdiff::make_context(2.0);
    const int w = static_cast<int>(state.range(0));
    const auto coeffs = random_vector(8, 4);
    std::map<int, qdiff::LaurentSeries> t;
    for (int i = 0; i < 4; ++i) {
        t[i] = qdiff::LaurentSeries::from_coeffs(ctx, i, {coeffs[2 * i], coeffs[2 * i + 1]});
    }
    const auto P = qdiff::OreOperator::from_terms(ctx, t);
    for (auto _ : state) {
        auto M = Parallel ? qdiff::kernels::window_matrix_omp(P, -w, w) : qdiff::kernels::window_matrix_serial(P, -w, w);
        benchmark::DoNotOptimize(M.data());
    }
}

} // namespace

BENCHMARK(BM_cauchy<false>)->Arg(256)->Arg(4096);
BENCHMARK(BM_cauchy<true>)->Arg(256)->Arg(4096);
BENCHMARK(BM_theta_batch<false>)->Arg(1024)->Arg(16384);
BENCHMARK(BM_theta_batch<true>)->Arg(1024)->Arg(16384);
BENCHMARK(BM_window<false>)->Arg(100)->Arg(400);
BENCHMARK(BM_window<true>)->Arg(100)->Arg(400);

BENCHMARK_MAIN();
