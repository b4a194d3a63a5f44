#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bassdiff::csv {

struct Record {
    std::size_t line = 0;  // 1-based physical line where the record starts
    std::vector<std::string> fields;
};

/// RFC-4180 reader: comma delimiter, double-quote quoting with "" escapes,
/// quoted fields may span lines, LF or CRLF terminators. Blank lines are
/// returned as records with a single empty field.
std::vector<Record> read_records(std::string_view text);

// Quotes a field only when it contains a delimiter, quote or line break.
std::string escape_field(std::string_view field);

// Shortest representation that round-trips to the same double, '.' decimal.
std::string format_number(double value);

// Locale-independent strict parse of the whole (trimmed) string.
bool parse_number(std::string_view text, double& out);

std::string_view trim(std::string_view text);

} // namespace bassdiff::csv
