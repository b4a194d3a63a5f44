#include <bassdiff/tail.hpp>

#include <bassdiff/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace bassdiff {

namespace {

std::size_t first_crossing(std::span<const double> demands, const Peak& peak, double height_fraction) {
    const double floor = *std::min_element(demands.begin(), demands.end());
    const double threshold = height_fraction * (peak.value - floor) + floor;
    for (std::size_t i = peak.index + 1; i < demands.size(); ++i) {
        if (demands[i] <= threshold) return i;
    }
    return demands.size();
}

} // namespace

Peak detect_peak(std::span<const double> demands) {
    if (demands.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot locate the peak of an empty series");
    }
    Peak peak{0, demands[0]};
    for (std::size_t i = 1; i < demands.size(); ++i) {
        if (demands[i] > peak.value) peak = {i, demands[i]};
    }
    return peak;
}

Peak detect_peak(const TimeSeries& series) { return detect_peak(series.values()); }

std::size_t detect_tail_start(std::span<const double> demands, double height_fraction) {
    if (demands.size() < 2) {
        throw Error(ErrorCode::Parameter, "tail detection needs at least 2 observations");
    }
    if (!(height_fraction > 0.0 && height_fraction < 1.0)) {
        throw Error(ErrorCode::Parameter,
                    "height fraction must lie in (0, 1), got " + std::to_string(height_fraction));
    }
    return first_crossing(demands, detect_peak(demands), height_fraction);
}

std::size_t detect_tail_start(const TimeSeries& series, double height_fraction) {
    return detect_tail_start(series.values(), height_fraction);
}

TailRatios compute_ratios(double tail_per, double slope) {
    if (!(tail_per >= 0.0 && tail_per <= 1.0)) {
        throw Error(ErrorCode::Parameter,
                    "tail_per must lie in [0, 1], got " + std::to_string(tail_per));
    }
    if (!std::isfinite(slope)) {
        throw Error(ErrorCode::Parameter, "tail slope must be finite");
    }
    double shift = (tail_per - 0.5) * slope;
    // Snap to a grid on which kReferenceR2 - shift is exact, so r1 + r2 == 0.5 to the bit.
    int exponent = 0;
    std::frexp(std::abs(shift) + kReferenceR2, &exponent);
    const double step = std::ldexp(1.0, exponent - 53);
    shift = std::nearbyint(shift / step) * step;
    return TailRatios{kReferenceR1 + shift, kReferenceR2 - shift};
}

TailProfile profile(std::span<const double> demands, const TailOptions& opts) {
    const Peak peak = detect_peak(demands);
    const std::size_t n = demands.size();
    // A single observation has no post-peak region: the tail is empty.
    const std::size_t tail_start = n == 1 ? n : detect_tail_start(demands, opts.height_fraction);
    if (n == 1 && !(opts.height_fraction > 0.0 && opts.height_fraction < 1.0)) {
        throw Error(ErrorCode::Parameter, "height fraction must lie in (0, 1)");
    }

    TailProfile out;
    out.peak_index = peak.index;
    out.peak_value = peak.value;
    out.tail_start_index = tail_start;
    out.tail_per = static_cast<double>(n - tail_start) / static_cast<double>(n);
    const auto ratios = compute_ratios(out.tail_per, opts.slope);
    out.r1 = ratios.r1;
    out.r2 = ratios.r2;
    return out;
}

TailProfile profile(const TimeSeries& series, const TailOptions& opts) {
    return profile(series.values(), opts);
}

} // namespace bassdiff
