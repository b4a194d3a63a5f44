#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bassdiff {

/// Ordered demand observations d_m, one per period.
///
/// Invariants are checked on construction: equal-length non-empty columns,
/// finite non-negative demands, and strictly ascending (hence unique) period
/// labels under plain string comparison. ISO "YYYY-MM" labels satisfy the
/// ordering by construction.
class TimeSeries {
public:
    TimeSeries(std::vector<std::string> periods, std::vector<double> demands,
               std::string unit = {});

    std::size_t size() const noexcept { return demands_.size(); }

    const std::vector<std::string>& periods() const noexcept { return periods_; }
    const std::vector<double>& demands() const noexcept { return demands_; }
    const std::string& unit() const noexcept { return unit_; }

    std::span<const double> values() const noexcept { return demands_; }

    // Labels are "0", "1", ... zero-padded so lexical order matches numeric order.
    static TimeSeries from_values(std::vector<double> demands, std::string unit = {});

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<std::string> periods_;
    std::vector<double> demands_;
    std::string unit_;
};

/// Lagged cumulative demand D(t-1) for t = 1..n; the first element is always 0.
struct CumulativeSeries {
    std::vector<double> values;
};

CumulativeSeries cumulative(std::span<const double> demands);
CumulativeSeries cumulative(const TimeSeries& series);

double mean_demand(std::span<const double> demands);
double mean_demand(const TimeSeries& series);

} // namespace bassdiff
