#include <bassdiff/series.hpp>

#include <bassdiff/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

namespace bassdiff {

TimeSeries::TimeSeries(std::vector<std::string> periods, std::vector<double> demands,
                       std::string unit)
    : periods_(std::move(periods)), demands_(std::move(demands)), unit_(std::move(unit)) {
    if (demands_.empty()) {
        throw Error(ErrorCode::EmptyInput, "time series has no observations");
    }
    if (periods_.size() != demands_.size()) {
        throw Error(ErrorCode::Validation,
                    "time series has " + std::to_string(periods_.size()) + " periods but " +
                        std::to_string(demands_.size()) + " demand values");
    }
    for (std::size_t i = 0; i < demands_.size(); ++i) {
        if (!std::isfinite(demands_[i])) {
            throw Error(ErrorCode::Validation,
                        "demand at period " + periods_[i] + " is not finite");
        }
        if (demands_[i] < 0.0) {
            throw Error(ErrorCode::Validation, "demand at period " + periods_[i] + " is negative");
        }
        if (i > 0 && !(periods_[i - 1] < periods_[i])) {
            const char* what = periods_[i - 1] == periods_[i] ? "duplicate" : "out-of-order";
            throw Error(ErrorCode::Validation,
                        std::string(what) + " period " + periods_[i] + " after " + periods_[i - 1]);
        }
    }
}

TimeSeries TimeSeries::from_values(std::vector<double> demands, std::string unit) {
    std::vector<std::string> periods;
    periods.reserve(demands.size());
    const int width = static_cast<int>(std::to_string(demands.size()).size());
    for (std::size_t i = 0; i < demands.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%0*zu", width, i);
        periods.emplace_back(buf);
    }
    return TimeSeries(std::move(periods), std::move(demands), std::move(unit));
}

CumulativeSeries cumulative(std::span<const double> demands) {
    if (demands.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot accumulate an empty series");
    }
    CumulativeSeries out;
    out.values.resize(demands.size());
    double running = 0.0;
    for (std::size_t t = 0; t < demands.size(); ++t) {
        out.values[t] = running;
        running += demands[t];
    }
    return out;
}

CumulativeSeries cumulative(const TimeSeries& series) { return cumulative(series.values()); }

double mean_demand(std::span<const double> demands) {
    if (demands.empty()) {
        throw Error(ErrorCode::EmptyInput, "mean of an empty series is undefined");
    }
    double total = 0.0;
    double lo = demands.front();
    double hi = demands.front();
    for (double d : demands) {
        total += d;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    // Rounding in the sum can push the quotient just past the data range.
    return std::clamp(total / static_cast<double>(demands.size()), lo, hi);
}

double mean_demand(const TimeSeries& series) { return mean_demand(series.values()); }

} // namespace bassdiff
