#include "jxfrft/table.hpp"

#include "jxfrft/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace jxfrft::io {

std::string format_double(double value) {
    if (!std::isfinite(value)) {
        throw NumericError("refusing to serialize a non-finite value");
    }
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) {
        throw NumericError("float formatting failed");
    }
    return {buf, end};
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw UsageError("not a floating-point number: '" + text + "'");
    }
    return value;
}

std::string format_cell(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

namespace {

void write_field(std::ostream& os, const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        os << field;
        return;
    }
    os << '"';
    for (char c : field) {
        if (c == '"') {
            os << '"';
        }
        os << c;
    }
    os << '"';
}

} // namespace

void write_csv(std::ostream& os, const Table& table) {
    auto write_row = [&os](const auto& fields, auto&& to_text) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) {
                os << ',';
            }
            write_field(os, to_text(fields[i]));
        }
        os << "\r\n";
    };
    write_row(table.header, [](const std::string& s) { return s; });
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw NumericError("table '" + table.name + "' has a ragged row");
        }
        write_row(row, [](const Cell& c) { return format_cell(c); });
    }
}

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    char c = 0;
    while (is.get(c)) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (is.peek() == '"') {
                    is.get(c);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"': quoted = true; break;
        case ',':
            row.push_back(std::move(field));
            field.clear();
            break;
        case '\r': break;
        case '\n':
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
            break;
        default: field += c;
        }
    }
    if (quoted) {
        throw UsageError("unterminated quoted CSV field");
    }
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace jxfrft::io
