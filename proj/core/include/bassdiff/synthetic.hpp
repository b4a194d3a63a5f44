#pragma once

#include <bassdiff/fit.hpp>
#include <bassdiff/series.hpp>

#include <cstddef>
#include <cstdint>
#include <string>

namespace bassdiff {

/// SplitMix64 (Steele, Lea & Flood). State advances by 0x9E3779B97F4A7C15;
/// output mixes with 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;

    // Top 53 bits mapped to [0, 1).
    double uniform01() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

private:
    std::uint64_t state_;
};

/// Mono peak followed by an exponential fall onto a plateau.
///
/// Defaults describe 19 years of monthly data (2004-01..2022-12) with the
/// peak about 28% of the way in and a low long tail (tail_per ~0.68).
struct MonoPeakSpec {
    std::size_t n = 228;
    std::size_t peak_time = 64;
    double peak_height = 100.0;
    double decay_rate = 0.1;
    double plateau_level = 5.0;
    double rise_shape = 2.5;
    double noise_amplitude = 2.0;  // 2% of peak_height
    std::uint64_t seed = 42;
    std::string start_period = "2004-01";
};

void validate(const MonoPeakSpec& spec);

/// d(1) = a, then d(t) = a + b*D(t-1) + c*D(t-1)^2 with D accumulating the
/// generated values. Throws Divergence past the cumulative limit.
TimeSeries generate_bass_series(const QuadraticCoefficients& coeffs, std::size_t n,
                                const std::string& start_period = "2004-01");

/// Rise: peak_height * (t / peak_time)^rise_shape for t <= peak_time.
/// Fall: plateau + (peak_height - plateau) * exp(-decay_rate * (t - peak_time)).
/// Seeded uniform noise in [-amplitude, amplitude] is added to every point,
/// then values are floored at 0. t runs over 0..n-1.
TimeSeries generate_mono_peak(const MonoPeakSpec& spec);

// Monthly "YYYY-MM" labels starting at start_period.
std::vector<std::string> monthly_periods(const std::string& start_period, std::size_t count);

} // namespace bassdiff
