#include <bassdiff/ingest.hpp>

#include <bassdiff/csv.hpp>
#include <bassdiff/error.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <string>

namespace bassdiff {

namespace {

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

bool is_blank(const csv::Record& rec) {
    return std::all_of(rec.fields.begin(), rec.fields.end(),
                       [](const std::string& f) { return csv::trim(f).empty(); });
}

bool is_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// "YYYY-MM" with a valid month.
bool is_year_month(std::string_view s) {
    if (s.size() != 7 || s[4] != '-') return false;
    if (!is_digits(s.substr(0, 4)) || !is_digits(s.substr(5, 2))) return false;
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    return month >= 1 && month <= 12;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

struct Row {
    std::string period;
    double demand = 0.0;
    std::size_t line = 0;
};

TimeSeries build_series(std::vector<Row> rows, std::string unit, std::size_t header_line) {
    if (rows.empty()) {
        throw Error(ErrorCode::EmptyInput,
                    "no data rows after header (line " + std::to_string(header_line) + ")");
    }
    std::vector<std::string> periods;
    std::vector<double> demands;
    periods.reserve(rows.size());
    demands.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && !(rows[i - 1].period < rows[i].period)) {
            const char* what = rows[i - 1].period == rows[i].period ? "duplicate" : "out-of-order";
            throw Error(ErrorCode::Validation, at_line(rows[i].line) + what + " period '" +
                                                   rows[i].period + "' follows '" +
                                                   rows[i - 1].period + "'");
        }
        if (rows[i].demand < 0.0) {
            throw Error(ErrorCode::Validation,
                        at_line(rows[i].line) + "negative demand for period '" + rows[i].period + "'");
        }
        periods.push_back(std::move(rows[i].period));
        demands.push_back(rows[i].demand);
    }
    return TimeSeries(std::move(periods), std::move(demands), std::move(unit));
}

std::size_t resolve_column(const ColumnSelector& sel, const csv::Record& header, const char* role) {
    if (const auto* idx = std::get_if<std::size_t>(&sel)) {
        if (*idx >= header.fields.size()) {
            throw Error(ErrorCode::Format, at_line(header.line) + role + " column index " +
                                               std::to_string(*idx) + " out of range (header has " +
                                               std::to_string(header.fields.size()) + " columns)");
        }
        return *idx;
    }
    const auto& name = std::get<std::string>(sel);
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
        if (csv::trim(header.fields[i]) == csv::trim(name)) return i;
    }
    throw Error(ErrorCode::Format, at_line(header.line) + role + " column '" + name + "' not found in header");
}

// year * 12 + (month - 1) for a valid ISO date or datetime prefix.
std::optional<int> month_ordinal(std::string_view ts) {
    ts = csv::trim(ts);
    if (ts.size() < 10 || ts[4] != '-' || ts[7] != '-') return std::nullopt;
    if (!is_digits(ts.substr(0, 4)) || !is_digits(ts.substr(5, 2)) || !is_digits(ts.substr(8, 2))) {
        return std::nullopt;
    }
    if (ts.size() > 10 && ts[10] != 'T' && ts[10] != ' ') return std::nullopt;
    int y = 0, m = 0, d = 0;
    std::from_chars(ts.data(), ts.data() + 4, y);
    std::from_chars(ts.data() + 5, ts.data() + 7, m);
    std::from_chars(ts.data() + 8, ts.data() + 10, d);
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return y * 12 + (m - 1);
}

std::string month_label(int ordinal) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ordinal / 12, ordinal % 12 + 1);
    return buf;
}

} // namespace

double less_than_one_value(LessThanOnePolicy policy) noexcept {
    switch (policy) {
        case LessThanOnePolicy::AsZero: return 0.0;
        case LessThanOnePolicy::AsOne: return 1.0;
        case LessThanOnePolicy::AsHalf: break;
    }
    return 0.5;
}

LessThanOnePolicy parse_less_than_one_policy(std::string_view text) {
    const auto t = lower(csv::trim(text));
    if (t == "as_half" || t == "half") return LessThanOnePolicy::AsHalf;
    if (t == "as_zero" || t == "zero") return LessThanOnePolicy::AsZero;
    if (t == "as_one" || t == "one") return LessThanOnePolicy::AsOne;
    throw Error(ErrorCode::Parameter, "unknown '<1' policy '" + std::string(text) +
                                          "' (expected as_half, as_zero or as_one)");
}

std::string_view to_string(LessThanOnePolicy policy) noexcept {
    switch (policy) {
        case LessThanOnePolicy::AsZero: return "as_zero";
        case LessThanOnePolicy::AsOne: return "as_one";
        case LessThanOnePolicy::AsHalf: break;
    }
    return "as_half";
}

TimeSeries parse_google_trends_csv(std::string_view text, const IngestOptions& opts) {
    const auto records = csv::read_records(text);

    std::size_t pos = 0;
    const csv::Record* header = nullptr;
    for (; pos < records.size(); ++pos) {
        const auto& rec = records[pos];
        if (is_blank(rec)) continue;
        const auto first = csv::trim(rec.fields.front());
        if (rec.fields.size() >= 2 && lower(first) == "month") {
            header = &rec;
            ++pos;
            break;
        }
        if (is_year_month(first)) {
            throw Error(ErrorCode::Format, at_line(rec.line) +
                                               "data row before the 'Month,<term>' header row");
        }
        // anything else is export metadata, e.g. "Category: All categories"
    }
    if (header == nullptr) {
        throw Error(ErrorCode::Format, "no 'Month,<term>' header row found");
    }

    std::vector<Row> rows;
    for (; pos < records.size(); ++pos) {
        const auto& rec = records[pos];
        if (is_blank(rec)) continue;
        if (rec.fields.size() < 2) {
            throw Error(ErrorCode::Format, at_line(rec.line) + "expected 'YYYY-MM,<value>'");
        }
        const auto period = csv::trim(rec.fields[0]);
        if (!is_year_month(period)) {
            throw Error(ErrorCode::Format,
                        at_line(rec.line) + "month '" + std::string(period) + "' is not YYYY-MM");
        }
        const auto cell = csv::trim(rec.fields[1]);
        double value = 0.0;
        if (cell == "<1") {
            value = less_than_one_value(opts.less_than_one_policy);
        } else if (!csv::parse_number(cell, value)) {
            throw Error(ErrorCode::Format, at_line(rec.line) + "value '" + std::string(cell) +
                                               "' is neither a number nor '<1'");
        }
        rows.push_back({std::string(period), value, rec.line});
    }

    std::string unit = "trend-index";
    const auto term = csv::trim(header->fields[1]);
    if (!term.empty()) unit += " [" + std::string(term) + "]";
    return build_series(std::move(rows), std::move(unit), header->line);
}

TimeSeries parse_generic_csv(std::string_view text, const IngestOptions& opts) {
    const auto records = csv::read_records(text);
    std::size_t pos = 0;
    while (pos < records.size() && is_blank(records[pos])) ++pos;
    if (pos == records.size()) {
        throw Error(ErrorCode::EmptyInput, "no header row and no data rows");
    }
    const auto& header = records[pos++];
    const auto date_col = resolve_column(opts.date_column, header, "period");
    const auto value_col = resolve_column(opts.value_column, header, "value");

    std::vector<Row> rows;
    for (; pos < records.size(); ++pos) {
        const auto& rec = records[pos];
        if (is_blank(rec)) continue;
        if (rec.fields.size() <= std::max(date_col, value_col)) {
            throw Error(ErrorCode::Format, at_line(rec.line) + "row has " +
                                               std::to_string(rec.fields.size()) + " columns, expected at least " +
                                               std::to_string(std::max(date_col, value_col) + 1));
        }
        const auto period = csv::trim(rec.fields[date_col]);
        if (period.empty()) {
            throw Error(ErrorCode::Format, at_line(rec.line) + "empty period label");
        }
        double value = 0.0;
        const auto cell = csv::trim(rec.fields[value_col]);
        if (cell == "<1") {
            value = less_than_one_value(opts.less_than_one_policy);
        } else if (!csv::parse_number(cell, value)) {
            throw Error(ErrorCode::Format,
                        at_line(rec.line) + "value '" + std::string(cell) + "' is not a number");
        }
        rows.push_back({std::string(period), value, rec.line});
    }

    std::string unit;
    if (value_col < header.fields.size()) unit = std::string(csv::trim(header.fields[value_col]));
    return build_series(std::move(rows), std::move(unit), header.line);
}

std::vector<Transaction> parse_transaction_log(std::string_view text) {
    const auto records = csv::read_records(text);
    std::size_t pos = 0;
    while (pos < records.size() && is_blank(records[pos])) ++pos;
    if (pos == records.size()) {
        throw Error(ErrorCode::EmptyInput, "no header row and no data rows");
    }
    const auto header_line = records[pos].line;
    ++pos;

    std::vector<Transaction> out;
    std::size_t row = 0;
    for (; pos < records.size(); ++pos) {
        const auto& rec = records[pos];
        if (is_blank(rec)) continue;
        ++row;
        if (rec.fields.size() < 2) {
            throw Error(ErrorCode::Format, at_line(rec.line) + "expected '<timestamp>,<count>'");
        }
        const auto cell = csv::trim(rec.fields[1]);
        std::int64_t count = 0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), count);
        if (ec != std::errc{} || ptr != cell.data() + cell.size() || count < 0) {
            throw Error(ErrorCode::Format, at_line(rec.line) + "count '" + std::string(cell) +
                                               "' is not a non-negative integer");
        }
        out.push_back({std::string(csv::trim(rec.fields[0])), count, row});
    }
    if (out.empty()) {
        throw Error(ErrorCode::EmptyInput,
                    "no data rows after header (line " + std::to_string(header_line) + ")");
    }
    return out;
}

TimeSeries aggregate_transactions(const std::vector<Transaction>& rows, Granularity) {
    if (rows.empty()) {
        throw Error(ErrorCode::EmptyInput, "no transactions to aggregate");
    }
    std::map<int, std::int64_t> buckets;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& tx = rows[i];
        const std::size_t row = tx.row != 0 ? tx.row : i + 1;
        const auto month = month_ordinal(tx.timestamp);
        if (!month) {
            throw Error(ErrorCode::Format, "row " + std::to_string(row) + ": timestamp '" +
                                               tx.timestamp + "' is not an ISO-8601 date");
        }
        if (tx.count < 0) {
            throw Error(ErrorCode::Validation,
                        "row " + std::to_string(row) + ": negative count " + std::to_string(tx.count));
        }
        buckets[*month] += tx.count;
    }

    const int first = buckets.begin()->first;
    const int last = buckets.rbegin()->first;
    std::vector<std::string> periods;
    std::vector<double> demands;
    periods.reserve(static_cast<std::size_t>(last - first + 1));
    demands.reserve(periods.capacity());
    for (int m = first; m <= last; ++m) {
        periods.push_back(month_label(m));
        const auto it = buckets.find(m);
        demands.push_back(it == buckets.end() ? 0.0 : static_cast<double>(it->second));
    }
    return TimeSeries(std::move(periods), std::move(demands), "transactions/month");
}

} // namespace bassdiff
