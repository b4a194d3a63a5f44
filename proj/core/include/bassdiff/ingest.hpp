#pragma once

#include <bassdiff/series.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bassdiff {

// Handling of the Google Trends "<1" censored cell.
enum class LessThanOnePolicy { AsHalf, AsZero, AsOne };

double less_than_one_value(LessThanOnePolicy policy) noexcept;
LessThanOnePolicy parse_less_than_one_policy(std::string_view text);
std::string_view to_string(LessThanOnePolicy policy) noexcept;

// A column picked by 0-based index or by header name.
using ColumnSelector = std::variant<std::size_t, std::string>;

struct IngestOptions {
    LessThanOnePolicy less_than_one_policy = LessThanOnePolicy::AsHalf;
    ColumnSelector date_column = std::size_t{0};
    ColumnSelector value_column = std::size_t{1};
};

/// Google Trends "multiTimeline" export: optional metadata lines, a
/// "Month,<term>: (<region>)" header, then "YYYY-MM,<0..100 | <1>" rows.
TimeSeries parse_google_trends_csv(std::string_view text, const IngestOptions& opts = {});

/// Header row plus rows; period and demand columns chosen via opts.
TimeSeries parse_generic_csv(std::string_view text, const IngestOptions& opts = {});

struct Transaction {
    std::string timestamp;  // ISO-8601 date or datetime
    std::int64_t count = 0;
    std::size_t row = 0;    // 1-based data row, for diagnostics
};

enum class Granularity { Monthly };

/// Reads (timestamp, count) rows from a CSV with a header line.
std::vector<Transaction> parse_transaction_log(std::string_view text);

/// Sums counts per calendar month; months without transactions between the
/// first and last observed month are emitted with zero demand.
TimeSeries aggregate_transactions(const std::vector<Transaction>& rows,
                                  Granularity granularity = Granularity::Monthly);

} // namespace bassdiff
