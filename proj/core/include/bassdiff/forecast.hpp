#pragma once

#include <bassdiff/fit.hpp>
#include <bassdiff/series.hpp>
#include <bassdiff/tail.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bassdiff {

enum class ModelVariant {
    Classical,         // plain recursion
    ModifiedAdd,       // + r1 * mean demand
    ModifiedSubtract,  // - r2 * mean demand
    Auto,              // lowest in-sample SSE of the three above
};

enum class ForecastMode {
    OneStep,    // D(t-1) taken from observed demand while inside the sample
    Simulated,  // D(t-1) accumulates the model's own predictions from D(0) = 0
};

std::string_view to_string(ModelVariant variant) noexcept;
std::string_view to_string(ForecastMode mode) noexcept;
ModelVariant parse_variant(std::string_view text);
ForecastMode parse_mode(std::string_view text);

struct ForecastConfig {
    ForecastMode mode = ForecastMode::Simulated;
    std::size_t horizon = 0;
    bool clamp_nonnegative = false;
    ModelVariant variant = ModelVariant::Auto;
};

struct VariantScore {
    ModelVariant variant = ModelVariant::Classical;
    double sse = 0.0;
};

struct ForecastResult {
    std::vector<double> predicted;  // n + horizon values
    ModelVariant variant_used = ModelVariant::Classical;  // never Auto
    double correction_term = 0.0;  // signed offset actually applied
    ForecastConfig config;
    std::vector<VariantScore> candidates;  // filled only when Auto resolved the variant
};

// Cumulative magnitude beyond which a recursion is treated as divergent.
inline constexpr double kDivergenceLimit = 1e15;

double predict_classical(const QuadraticCoefficients& coeffs, double cumulative_value);
double predict_modified(const QuadraticCoefficients& coeffs, double cumulative_value,
                        double correction);

// +r1*mean for ModifiedAdd, -r2*mean for ModifiedSubtract, 0 for Classical.
double correction_for(ModelVariant variant, const TailProfile& tail, double mean);

ForecastResult forecast(const TimeSeries& series, const QuadraticCoefficients& coeffs,
                        const TailProfile& tail, const ForecastConfig& config = {});

/// Labels for n + horizon periods. Observed labels are reused; beyond the
/// sample, "YYYY-MM" labels continue month by month and anything else gets
/// "<last>+k".
std::vector<std::string> forecast_periods(const TimeSeries& series, std::size_t horizon);

} // namespace bassdiff
