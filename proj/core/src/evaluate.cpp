#include <bassdiff/evaluate.hpp>

#include <bassdiff/error.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace bassdiff {

double sse(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw Error(ErrorCode::Shape, "SSE needs equal lengths, got " + std::to_string(actual.size()) +
                                          " actual and " + std::to_string(predicted.size()) + " predicted");
    }
    double total = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        const double r = actual[t] - predicted[t];
        total += r * r;
    }
    return total;
}

double sse(const TimeSeries& actual, std::span<const double> predicted) {
    return sse(actual.values(), predicted);
}

double improvement_percent(double sse_classical, double sse_modified) {
    if (!(sse_classical > 0.0)) {
        throw Error(ErrorCode::UndefinedBaseline,
                    "improvement is undefined for a classical SSE of " + std::to_string(sse_classical));
    }
    return (sse_classical - sse_modified) / sse_classical * 100.0;
}

ErrorMetrics error_metrics(std::span<const double> actual, std::span<const double> predicted) {
    const double total_sq = sse(actual, predicted);
    ErrorMetrics m;
    if (actual.empty()) return m;
    double abs_sum = 0.0;
    double pct_sum = 0.0;
    std::size_t pct_count = 0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        const double r = actual[t] - predicted[t];
        abs_sum += std::abs(r);
        if (actual[t] == 0.0) {
            ++m.mape_skipped;
        } else {
            pct_sum += std::abs(r / actual[t]);
            ++pct_count;
        }
    }
    const auto n = static_cast<double>(actual.size());
    m.rmse = std::sqrt(total_sq / n);
    m.mae = abs_sum / n;
    m.mape = pct_count == 0 ? std::numeric_limits<double>::quiet_NaN()
                            : pct_sum / static_cast<double>(pct_count) * 100.0;
    return m;
}

EvaluationReport compare_models(const TimeSeries& series, const QuadraticCoefficients& coeffs,
                                const TailProfile& tail, const CompareOptions& opts) {
    ForecastConfig config;
    config.mode = opts.mode;
    config.horizon = 0;
    config.clamp_nonnegative = opts.clamp_nonnegative;

    config.variant = ModelVariant::Classical;
    const auto classical = forecast(series, coeffs, tail, config);
    config.variant = opts.variant;
    const auto modified = forecast(series, coeffs, tail, config);

    EvaluationReport report;
    report.mode = opts.mode;
    report.tail_profile = tail;
    report.variant_used = modified.variant_used;
    report.correction_term = modified.correction_term;
    report.candidates = modified.candidates;
    report.sse_classical = sse(series, classical.predicted);
    report.sse_modified = sse(series, modified.predicted);
    if (report.sse_classical > 0.0) {
        report.improvement_percent = improvement_percent(report.sse_classical, report.sse_modified);
    } else if (report.sse_modified == 0.0) {
        report.improvement_percent = 0.0;
    } else {
        report.improvement_percent = std::numeric_limits<double>::quiet_NaN();
    }
    report.metrics_classical = error_metrics(series.values(), classical.predicted);
    report.metrics_modified = error_metrics(series.values(), modified.predicted);
    report.predicted_classical = classical.predicted;
    report.predicted_modified = modified.predicted;
    return report;
}

EvaluationReport compare_models(const TimeSeries& series, const QuadraticCoefficients& coeffs,
                                const TailProfile& tail, ForecastMode mode) {
    CompareOptions opts;
    opts.mode = mode;
    return compare_models(series, coeffs, tail, opts);
}

} // namespace bassdiff
