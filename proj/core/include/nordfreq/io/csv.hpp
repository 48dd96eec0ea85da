#ifndef NORDFREQ_IO_CSV_HPP
#define NORDFREQ_IO_CSV_HPP

#include "nordfreq/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace nordfreq::io {

// A parsed CSV file: one mandatory header row, comma separation, no quoting
// (ids and numbers only), UTF-8 passed through, blank lines ignored.
struct CsvTable {
    std::filesystem::path source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers; // 1-based source line per row
};

// Reads and shape-checks a CSV file; every row must have exactly as many
// fields as the header.  Throws IngestError with file and line context.
CsvTable read_csv(const std::filesystem::path& path);

// Index of a required header column (case-sensitive); IngestError if absent.
std::size_t column(const CsvTable& table, const std::string& name);

// True if the header contains the column.
bool has_column(const CsvTable& table, const std::string& name);

// Context string "file:line" for error messages.
std::string at_line(const CsvTable& table, std::size_t row);

// Field parsers; all throw IngestError carrying file:line context.
double parse_double_field(const CsvTable& t, std::size_t row, std::size_t col);
Rational parse_decimal_field(const CsvTable& t, std::size_t row, std::size_t col);
bool parse_bool_field(const CsvTable& t, std::size_t row, std::size_t col);

// True when the field is the explicit absent marker: empty or "NA".
bool is_absent_field(const std::string& field);

// A timestamp field: either a plain integer hour index or an ISO-8601 UTC
// hour; `calendar` reports which form was used.
std::int64_t parse_timestamp_field(const CsvTable& t, std::size_t row, std::size_t col,
                                   bool& calendar);

// Formats an hour index back to the form it was ingested in.
std::string format_timestamp(std::int64_t hour, bool calendar);

} // namespace nordfreq::io

#endif // NORDFREQ_IO_CSV_HPP
