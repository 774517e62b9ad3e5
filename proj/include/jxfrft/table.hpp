#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace jxfrft::io {

using Cell = std::variant<std::int64_t, double, bool, std::string>;

/// A rectangular result table. Written as RFC-4180 CSV (header row, CRLF).
struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Strict inverse of format_double; throws UsageError on malformed text.
double parse_double(const std::string& text);

std::string format_cell(const Cell& cell);

void write_csv(std::ostream& os, const Table& table);

/// Header plus rows as raw strings; handles quoted fields.
std::vector<std::vector<std::string>> read_csv(std::istream& is);

} // namespace jxfrft::io
