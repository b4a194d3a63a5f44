#include <bassdiff/forecast.hpp>

#include <bassdiff/error.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace bassdiff {

namespace {

bool looks_like_year_month(const std::string& s) {
    if (s.size() != 7 || s[4] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    return month >= 1 && month <= 12;
}

std::vector<double> run_variant(const std::vector<double>& actual, const QuadraticCoefficients& coeffs,
                                double correction, const ForecastConfig& config,
                                const std::vector<std::string>& labels) {
    const std::size_t n = actual.size();
    const std::size_t total = n + config.horizon;
    std::vector<double> predicted(total);

    double observed_cum = 0.0;  // D(t-1) from actual demand
    double model_cum = 0.0;     // D(t-1) from the model's own output
    for (std::size_t t = 0; t < total; ++t) {
        const bool use_actual = config.mode == ForecastMode::OneStep && t < n;
        const double lagged = use_actual ? observed_cum : model_cum;

        double value = predict_modified(coeffs, lagged, correction);
        if (config.clamp_nonnegative && value < 0.0) value = 0.0;
        predicted[t] = value;

        if (t < n) observed_cum += actual[t];
        if (config.mode == ForecastMode::OneStep && t + 1 == n) {
            model_cum = observed_cum;  // out of sample, continue from the observed total
        } else if (!use_actual) {
            model_cum += value;
        }
        if (!std::isfinite(value) || std::abs(model_cum) > kDivergenceLimit) {
            throw Error(ErrorCode::Divergence,
                        "forecast diverged at period " + labels[t] + " (cumulative demand exceeds " +
                            std::to_string(kDivergenceLimit) + ")");
        }
    }
    return predicted;
}

double in_sample_sse(const std::vector<double>& actual, const std::vector<double>& predicted) {
    double total = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        const double r = actual[t] - predicted[t];
        total += r * r;
    }
    return total;
}

} // namespace

std::string_view to_string(ModelVariant variant) noexcept {
    switch (variant) {
        case ModelVariant::Classical: return "classical";
        case ModelVariant::ModifiedAdd: return "modified_add";
        case ModelVariant::ModifiedSubtract: return "modified_subtract";
        case ModelVariant::Auto: return "auto";
    }
    return "classical";
}

std::string_view to_string(ForecastMode mode) noexcept {
    return mode == ForecastMode::OneStep ? "one_step" : "simulated";
}

ModelVariant parse_variant(std::string_view text) {
    if (text == "classical") return ModelVariant::Classical;
    if (text == "modified_add" || text == "add") return ModelVariant::ModifiedAdd;
    if (text == "modified_subtract" || text == "subtract") return ModelVariant::ModifiedSubtract;
    if (text == "auto") return ModelVariant::Auto;
    throw Error(ErrorCode::Parameter, "unknown model variant '" + std::string(text) + "'");
}

ForecastMode parse_mode(std::string_view text) {
    if (text == "one_step" || text == "one-step") return ForecastMode::OneStep;
    if (text == "simulated") return ForecastMode::Simulated;
    throw Error(ErrorCode::Parameter, "unknown forecast mode '" + std::string(text) + "'");
}

double predict_classical(const QuadraticCoefficients& coeffs, double cumulative_value) {
    if (!std::isfinite(cumulative_value)) {
        throw Error(ErrorCode::Parameter, "cumulative demand must be finite");
    }
    return coeffs.a + coeffs.b * cumulative_value + coeffs.c * cumulative_value * cumulative_value;
}

double predict_modified(const QuadraticCoefficients& coeffs, double cumulative_value, double correction) {
    if (!std::isfinite(correction)) {
        throw Error(ErrorCode::Parameter, "correction term must be finite");
    }
    return predict_classical(coeffs, cumulative_value) + correction;
}

double correction_for(ModelVariant variant, const TailProfile& tail, double mean) {
    switch (variant) {
        case ModelVariant::ModifiedAdd: return tail.r1 * mean;
        case ModelVariant::ModifiedSubtract: return -(tail.r2 * mean);
        case ModelVariant::Classical: return 0.0;
        case ModelVariant::Auto: break;
    }
    throw Error(ErrorCode::Parameter, "auto has no fixed correction term");
}

ForecastResult forecast(const TimeSeries& series, const QuadraticCoefficients& coeffs,
                        const TailProfile& tail, const ForecastConfig& config) {
    const auto& actual = series.demands();
    const double mean = mean_demand(series);
    const auto labels = forecast_periods(series, config.horizon);

    ForecastResult result;
    result.config = config;
    result.variant_used = config.variant;

    bool first = true;
    if (config.variant == ModelVariant::Auto) {
        // Score in-sample only; the horizon does not change the ranking.
        ForecastConfig scoring = config;
        scoring.horizon = 0;
        double best = 0.0;
        for (auto candidate : {ModelVariant::Classical, ModelVariant::ModifiedAdd,
                               ModelVariant::ModifiedSubtract}) {
            double score = std::numeric_limits<double>::infinity();
            try {
                score = in_sample_sse(
                    actual, run_variant(actual, coeffs, correction_for(candidate, tail, mean), scoring, labels));
            } catch (const Error& e) {
                // a diverging candidate is simply not eligible
                if (e.code() != ErrorCode::Divergence) throw;
            }
            result.candidates.push_back({candidate, score});
            if (std::isinf(score)) continue;
            if (first || score < best) {
                best = score;
                result.variant_used = candidate;
                first = false;
            }
        }
    }

    if (config.variant == ModelVariant::Auto && first) {
        throw Error(ErrorCode::Divergence, "every model variant diverges in-sample");
    }
    result.correction_term = correction_for(result.variant_used, tail, mean);
    result.predicted = run_variant(actual, coeffs, result.correction_term, config, labels);
    return result;
}

std::vector<std::string> forecast_periods(const TimeSeries& series, std::size_t horizon) {
    std::vector<std::string> labels = series.periods();
    labels.reserve(labels.size() + horizon);
    const std::string last = labels.back();
    if (looks_like_year_month(last)) {
        int year = std::stoi(last.substr(0, 4));
        int month = std::stoi(last.substr(5, 2));
        for (std::size_t k = 0; k < horizon; ++k) {
            if (++month > 12) {
                month = 1;
                ++year;
            }
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
            labels.emplace_back(buf);
        }
    } else {
        for (std::size_t k = 1; k <= horizon; ++k) labels.push_back(last + "+" + std::to_string(k));
    }
    return labels;
}

} // namespace bassdiff
