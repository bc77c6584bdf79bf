#include <benchmark/benchmark.h>

#include "cfb/catalog.hpp"
#include "cfb/heat.hpp"
#include "cfb/specfun.hpp"
#include "cfb/transform.hpp"
#include "cfb/translation.hpp"

namespace {

void BM_JNuReal(benchmark::State& state) {
    const cfb::Order nu(0.7);
    const double x = static_cast<double>(state.range(0)) / 4.0;
    for (auto _ : state) benchmark::DoNotOptimize(cfb::j_nu(nu, x));
}
BENCHMARK(BM_JNuReal)->Arg(2)->Arg(30)->Arg(200);

void BM_ForwardAt(benchmark::State& state) {
    const cfb::QuadratureSpec spec;
    const auto m = cfb::SLMatrix::rotation(1.0);
    const auto f = cfb::damped_cosine(1.0, 2.0);
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cfb::forward_at(f, m, cfb::Order(0.5), x, spec));
}
BENCHMARK(BM_ForwardAt)->Arg(1)->Arg(8);

void BM_Translate(benchmark::State& state) {
    const cfb::QuadratureSpec spec;
    const auto m = cfb::SLMatrix::rotation(1.0);
    const auto f = state.range(0) ? cfb::box(1.5) : cfb::gaussian(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(cfb::translate(m, cfb::Order(1.2), f, 1.1, 0.8, spec));
}
BENCHMARK(BM_Translate)->Arg(0)->Arg(1);

void BM_Convolve(benchmark::State& state) {
    const cfb::QuadratureSpec spec;
    const auto m = cfb::SLMatrix::rotation(1.0);
    const auto f = cfb::gaussian(1.0), g = cfb::bump(2.0);
    const double pts[] = {0.5};
    for (auto _ : state) benchmark::DoNotOptimize(cfb::convolve(m, cfb::Order(0.5), f, g, pts, spec));
}
BENCHMARK(BM_Convolve);

void BM_HeatEvolve(benchmark::State& state) {
    const cfb::QuadratureSpec spec;
    const auto m = cfb::SLMatrix::rotation(0.8);
    const auto f = cfb::damped_cosine(0.5, 1.0);
    const auto pts = cfb::linspace(0.0, 3.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cfb::evolve(m, cfb::Order(0.5), 1.0, f, 0.3, pts, spec));
}
BENCHMARK(BM_HeatEvolve)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
