#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lst::csv {

struct Row {
    int line_number{0};  // 1-based, as in the source file
    std::vector<std::string> fields;
};

// Reads a whole CSV file. No quoting support: the formats used here are
// numeric columns plus ISO dates, and fields must not contain commas.
// Blank lines are skipped; a trailing '\r' is stripped.
std::vector<Row> read_file(const std::string& path);

std::vector<std::string> split_line(std::string_view line);

// Strict double parse (full-field); throws lst::Error(kData) with context.
double parse_double(std::string_view field, const std::string& context);
long parse_long(std::string_view field, const std::string& context);

// Shortest round-trippable representation (std::to_chars).
std::string format_double(double v);

}  // namespace lst::csv
