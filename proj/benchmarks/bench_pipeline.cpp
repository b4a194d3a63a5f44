#include <bassdiff/evaluate.hpp>
#include <bassdiff/fit.hpp>
#include <bassdiff/forecast.hpp>
#include <bassdiff/report.hpp>
#include <bassdiff/svg_plot.hpp>
#include <bassdiff/synthetic.hpp>
#include <bassdiff/tail.hpp>

#include <benchmark/benchmark.h>

using namespace bassdiff;

namespace {

TimeSeries fixture(std::size_t n) {
    MonoPeakSpec spec;
    spec.n = n;
    spec.peak_time = n * 28 / 100;
    return generate_mono_peak(spec);
}

void BM_FitQuadratic(benchmark::State& state) {
    const auto series = fixture(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fit_quadratic(series));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitQuadratic)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oN);

void BM_TailProfile(benchmark::State& state) {
    const auto series = fixture(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(profile(series));
}
BENCHMARK(BM_TailProfile)->Arg(228)->Arg(4096);

void BM_ForecastAuto(benchmark::State& state) {
    const auto series = fixture(228);
    const auto coeffs = fit_quadratic(series);
    const auto tail = profile(series);
    ForecastConfig cfg;
    cfg.mode = state.range(0) == 0 ? ForecastMode::Simulated : ForecastMode::OneStep;
    cfg.horizon = 24;
    for (auto _ : state) benchmark::DoNotOptimize(forecast(series, coeffs, tail, cfg));
}
BENCHMARK(BM_ForecastAuto)->Arg(0)->Arg(1);

// ingest-free pipeline on a 228-point monthly series: fit, tail, compare, serialise, plot
void BM_Pipeline228(benchmark::State& state) {
    const auto series = fixture(228);
    for (auto _ : state) {
        const auto coeffs = fit_quadratic(series);
        const auto tail = profile(series);
        EvaluationDocument doc{"synth.csv", series.unit(), coeffs, {compare_models(series, coeffs, tail)}};
        auto json = document_to_json(doc);
        ComparePlot plot;
        plot.periods = series.periods();
        plot.lines = {{"Actual", series.demands()},
                      {"Classical", doc.reports[0].predicted_classical, LineStyle::Dashed},
                      {"Modified", doc.reports[0].predicted_modified, LineStyle::DashDot}};
        auto svg = render_svg(plot);
        benchmark::DoNotOptimize(json);
        benchmark::DoNotOptimize(svg);
    }
}
BENCHMARK(BM_Pipeline228)->Unit(benchmark::kMicrosecond);

void BM_GenerateMonoPeak(benchmark::State& state) {
    MonoPeakSpec spec;
    for (auto _ : state) benchmark::DoNotOptimize(generate_mono_peak(spec));
}
BENCHMARK(BM_GenerateMonoPeak);

} // namespace
BENCHMARK_MAIN();
