#include <bassdiff/synthetic.hpp>

#include <bassdiff/error.hpp>
#include <bassdiff/forecast.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>

namespace bassdiff {

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<std::string> monthly_periods(const std::string& start_period, std::size_t count) {
    bool ok = start_period.size() == 7 && start_period[4] == '-';
    for (std::size_t i = 0; ok && i < 7; ++i) {
        ok = i == 4 || std::isdigit(static_cast<unsigned char>(start_period[i]));
    }
    int year = ok ? std::stoi(start_period.substr(0, 4)) : 0;
    int month = ok ? std::stoi(start_period.substr(5, 2)) : 0;
    if (!ok || month < 1 || month > 12) {
        throw Error(ErrorCode::Parameter, "start period '" + start_period + "' is not YYYY-MM");
    }
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (year > 9999) {
            throw Error(ErrorCode::Parameter, "monthly labels run past year 9999");
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
        out.emplace_back(buf);
        if (++month > 12) {
            month = 1;
            ++year;
        }
    }
    return out;
}

void validate(const MonoPeakSpec& spec) {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::Parameter, "mono-peak spec: " + what); };
    if (spec.n < 2) fail("n must be at least 2");
    if (spec.peak_time == 0 || spec.peak_time >= spec.n) fail("peak_time must satisfy 0 < peak_time < n");
    if (!(std::isfinite(spec.peak_height) && spec.peak_height > 0.0)) fail("peak_height must be positive");
    if (!(std::isfinite(spec.decay_rate) && spec.decay_rate > 0.0)) fail("decay_rate must be positive");
    if (!(spec.plateau_level >= 0.0)) fail("plateau_level must be non-negative");
    if (!(spec.plateau_level < spec.peak_height)) fail("plateau_level must be below peak_height");
    if (!(std::isfinite(spec.rise_shape) && spec.rise_shape > 0.0)) fail("rise_shape must be positive");
    if (!(std::isfinite(spec.noise_amplitude) && spec.noise_amplitude >= 0.0)) {
        fail("noise_amplitude must be non-negative");
    }
}

TimeSeries generate_bass_series(const QuadraticCoefficients& coeffs, std::size_t n,
                                const std::string& start_period) {
    if (n == 0) {
        throw Error(ErrorCode::Parameter, "series length must be at least 1");
    }
    auto periods = monthly_periods(start_period, n);
    std::vector<double> demands(n);
    double cum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        demands[t] = predict_classical(coeffs, cum);
        cum += demands[t];
        if (!std::isfinite(demands[t]) || std::abs(cum) > kDivergenceLimit) {
            throw Error(ErrorCode::Divergence, "Bass recursion diverged at period " + periods[t]);
        }
    }
    return TimeSeries(std::move(periods), std::move(demands), "units/period");
}

TimeSeries generate_mono_peak(const MonoPeakSpec& spec) {
    validate(spec);
    SplitMix64 rng(spec.seed);
    std::vector<double> demands(spec.n);
    const auto peak = static_cast<double>(spec.peak_time);
    for (std::size_t t = 0; t < spec.n; ++t) {
        const auto x = static_cast<double>(t);
        double value = 0.0;
        if (t <= spec.peak_time) {
            value = spec.peak_height * std::pow(x / peak, spec.rise_shape);
        } else {
            value = spec.plateau_level +
                    (spec.peak_height - spec.plateau_level) * std::exp(-spec.decay_rate * (x - peak));
        }
        value += rng.uniform(-spec.noise_amplitude, spec.noise_amplitude);
        demands[t] = std::max(value, 0.0);
    }
    return TimeSeries(monthly_periods(spec.start_period, spec.n), std::move(demands), "units/month");
}

} // namespace bassdiff
