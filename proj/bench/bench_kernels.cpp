// Serial reference kernels against their OpenMP counterparts.
// Thread count follows OSTROWSKI_THREADS / OMP_NUM_THREADS.

#include "ostrowski/kernels.h"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace ostrowski;

namespace {

SparsePolynomial sample_poly(long terms, Mode mode) {
    std::vector<SparsePolynomial::Term> t;
    for (long k = 0; k < terms; ++k) {
        double c = 1.0 / static_cast<double>(k + 1);
        t.emplace_back(3 * k + 1, Scalar::from_double({c, -0.5 * c}, mode));
    }
    return SparsePolynomial(std::move(t));
}

std::vector<Scalar> circle(long n, double radius, Mode mode) {
    std::vector<Scalar> pts;
    for (long i = 0; i < n; ++i) {
        double a = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        pts.push_back(Scalar::from_double(std::polar(radius, a), mode));
    }
    return pts;
}

template <auto Kernel>
void bm_eval(benchmark::State& state) {
    auto p = sample_poly(state.range(0), Mode::floating);
    auto pts = circle(256, 0.9, Mode::floating);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(p, pts));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 256);
}

template <auto Kernel>
void bm_recenter(benchmark::State& state) {
    auto p = sample_poly(state.range(0), Mode::floating);
    auto zeta = Scalar::from_double({0.25, 0.0}, Mode::floating);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(p, zeta, 3 * state.range(0), false));
}

}  // namespace

BENCHMARK(bm_eval<kernels::eval_grid_serial>)->Name("eval_grid/serial")->Arg(64)->Arg(256);
BENCHMARK(bm_eval<kernels::eval_grid_parallel>)->Name("eval_grid/parallel")->Arg(64)->Arg(256);
BENCHMARK(bm_recenter<kernels::recenter_serial>)->Name("recenter/serial")->Arg(32)->Arg(96);
BENCHMARK(bm_recenter<kernels::recenter_parallel>)->Name("recenter/parallel")->Arg(32)->Arg(96);

BENCHMARK_MAIN();
