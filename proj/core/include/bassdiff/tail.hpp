#pragma once

#include <bassdiff/series.hpp>

#include <cstddef>
#include <span>

namespace bassdiff {

inline constexpr double kDefaultHeightFraction = 0.5;
inline constexpr double kDefaultTailSlope = 1.6;
inline constexpr double kReferenceR1 = 0.0;
inline constexpr double kReferenceR2 = 0.5;

struct Peak {
    std::size_t index = 0;
    double value = 0.0;
};

struct TailRatios {
    double r1 = 0.0;
    double r2 = 0.0;
};

struct TailProfile {
    std::size_t peak_index = 0;
    double peak_value = 0.0;
    std::size_t tail_start_index = 0;  // == n when the curve never falls below threshold
    double tail_per = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
};

// Global maximum; earliest index wins ties.
Peak detect_peak(std::span<const double> demands);
Peak detect_peak(const TimeSeries& series);

/// First index after the peak whose demand is at or below
///     min + height_fraction * (peak - min),
/// where min is the series minimum. Returns n if no such index exists.
std::size_t detect_tail_start(std::span<const double> demands,
                              double height_fraction = kDefaultHeightFraction);
std::size_t detect_tail_start(const TimeSeries& series,
                              double height_fraction = kDefaultHeightFraction);

/// r1 = 0 + (tail_per - 0.5) * slope,  r2 = 0.5 - (tail_per - 0.5) * slope.
/// Not clamped: r2 turns negative once tail_per exceeds 0.5 + 0.5 / slope.
TailRatios compute_ratios(double tail_per, double slope = kDefaultTailSlope);

struct TailOptions {
    double height_fraction = kDefaultHeightFraction;
    double slope = kDefaultTailSlope;
};

TailProfile profile(std::span<const double> demands, const TailOptions& opts = {});
TailProfile profile(const TimeSeries& series, const TailOptions& opts = {});

} // namespace bassdiff
