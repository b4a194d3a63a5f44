#pragma once

#include <bassdiff/fit.hpp>
#include <bassdiff/forecast.hpp>
#include <bassdiff/series.hpp>
#include <bassdiff/tail.hpp>

#include <cstddef>
#include <span>
#include <string>

namespace bassdiff {

double sse(std::span<const double> actual, std::span<const double> predicted);
double sse(const TimeSeries& actual, std::span<const double> predicted);

/// (sse_classical - sse_modified) / sse_classical * 100.
double improvement_percent(double sse_classical, double sse_modified);

struct ErrorMetrics {
    double rmse = 0.0;
    double mae = 0.0;
    double mape = 0.0;             // percent, over periods with non-zero actual
    std::size_t mape_skipped = 0;  // zero-actual periods left out of mape
};

ErrorMetrics error_metrics(std::span<const double> actual, std::span<const double> predicted);

struct EvaluationReport {
    double sse_classical = 0.0;
    double sse_modified = 0.0;
    ModelVariant variant_used = ModelVariant::Classical;
    double improvement_percent = 0.0;
    ForecastMode mode = ForecastMode::Simulated;
    TailProfile tail_profile;
    double correction_term = 0.0;
    ErrorMetrics metrics_classical;
    ErrorMetrics metrics_modified;
    std::vector<double> predicted_classical;  // observed range only
    std::vector<double> predicted_modified;
    std::vector<VariantScore> candidates;  // per-variant SSE when auto selected
};

struct CompareOptions {
    ForecastMode mode = ForecastMode::Simulated;
    ModelVariant variant = ModelVariant::Auto;
    bool clamp_nonnegative = false;
};

/// Classical forecast against the (by default auto-selected) modified one
/// over the observed range.
EvaluationReport compare_models(const TimeSeries& series, const QuadraticCoefficients& coeffs,
                                const TailProfile& tail, const CompareOptions& opts = {});

EvaluationReport compare_models(const TimeSeries& series, const QuadraticCoefficients& coeffs,
                                const TailProfile& tail, ForecastMode mode);

} // namespace bassdiff
