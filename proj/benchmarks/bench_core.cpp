#include <benchmark/benchmark.h>

#include "molopt/analysis.hpp"
#include "molopt/response.hpp"
#include "molopt/stability.hpp"
#include "molopt/steady_state.hpp"

using namespace molopt;

namespace {

response::OperatingPoint bench_op(double ga) {
    auto params = analysis::preset_base_params(model::PrescribedGa{ga, -30.0});
    return response::operating_point(model::validate(params));
}

void BM_solve_response(benchmark::State& state) {
    const auto op = bench_op(3.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(response::solve_response(op, 30.0).T_ac);
    }
}
BENCHMARK(BM_solve_response);

void BM_stokes_closed_form(benchmark::State& state) {
    const auto op = bench_op(3.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(response::stokes_closed_form(op, 30.0));
    }
}
BENCHMARK(BM_stokes_closed_form);

void BM_stability_report(benchmark::State& state) {
    const auto op = bench_op(3.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stability::stability_report(op).spectral_abscissa);
    }
}
BENCHMARK(BM_stability_report);

void BM_steady_state_fixed_point(benchmark::State& state) {
    const auto p = model::validate(analysis::preset_base_params(model::FixedDelta0{-30.0}));
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady::solve_self_consistent(p).a_ss);
    }
}
BENCHMARK(BM_steady_state_fixed_point);

void BM_tac_spectrum_2001(benchmark::State& state) {
    const auto op = bench_op(3.4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(analysis::tac_spectrum(op, 29.0, 31.0, 2001).peak());
    }
}
BENCHMARK(BM_tac_spectrum_2001);

void BM_bandwidth(benchmark::State& state) {
    const auto op = bench_op(2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(analysis::bandwidth(op));
    }
}
BENCHMARK(BM_bandwidth);

}  // namespace

BENCHMARK_MAIN();
