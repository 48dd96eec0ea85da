#include "nordfreq/io/csv.hpp"

#include "nordfreq/errors.hpp"
#include "nordfreq/time_series.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>

namespace nordfreq::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(trim(line.substr(pos)));
            break;
        }
        fields.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return fields;
}

const std::string& field_at(const CsvTable& t, std::size_t row, std::size_t col) {
    return t.rows[row][col];
}

} // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open '" + path.string() + "'");
    }

    CsvTable table;
    table.source = path;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_row(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw IngestError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(table.header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_no);
    }
    if (table.header.empty()) {
        throw IngestError(path.string() + ": no header row");
    }
    return table;
}

std::size_t column(const CsvTable& table, const std::string& name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) {
        throw IngestError(table.source.string() + ": missing required column '" + name + "'");
    }
    return static_cast<std::size_t>(it - table.header.begin());
}

bool has_column(const CsvTable& table, const std::string& name) {
    return std::find(table.header.begin(), table.header.end(), name) != table.header.end();
}

std::string at_line(const CsvTable& table, std::size_t row) {
    return table.source.string() + ":" + std::to_string(table.line_numbers[row]);
}

double parse_double_field(const CsvTable& t, std::size_t row, std::size_t col) {
    const std::string& text = field_at(t, row, col);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
        throw IngestError(at_line(t, row) + ": not a number: '" + text + "'");
    }
    return v;
}

Rational parse_decimal_field(const CsvTable& t, std::size_t row, std::size_t col) {
    const std::string& text = field_at(t, row, col);
    try {
        return parse_decimal(text);
    } catch (const ParseError& e) {
        throw IngestError(at_line(t, row) + ": " + e.what());
    }
}

bool parse_bool_field(const CsvTable& t, std::size_t row, std::size_t col) {
    const std::string& text = field_at(t, row, col);
    if (text == "1" || text == "true") {
        return true;
    }
    if (text == "0" || text == "false") {
        return false;
    }
    throw IngestError(at_line(t, row) + ": not a boolean (use 0/1/true/false): '" + text +
                      "'");
}

bool is_absent_field(const std::string& field) {
    return field.empty() || field == "NA";
}

std::int64_t parse_timestamp_field(const CsvTable& t, std::size_t row, std::size_t col,
                                   bool& calendar) {
    const std::string& text = field_at(t, row, col);
    if (!text.empty() &&
        text.find_first_not_of("-0123456789") == std::string::npos) {
        errno = 0;
        char* end = nullptr;
        const long long v = std::strtoll(text.c_str(), &end, 10);
        if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
            throw IngestError(at_line(t, row) + ": not an hour index: '" + text + "'");
        }
        calendar = false;
        return v;
    }
    try {
        calendar = true;
        return hour_from_iso(text);
    } catch (const ParseError& e) {
        throw IngestError(at_line(t, row) + ": " + e.what());
    }
}

std::string format_timestamp(std::int64_t hour, bool calendar) {
    return calendar ? iso_from_hour(hour) : std::to_string(hour);
}

} // namespace nordfreq::io
