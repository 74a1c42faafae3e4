#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rrdps {

/// Formats a value for CSV output: plain decimal with 10 significant digits,
/// switching to scientific notation below 1e-4 in magnitude. Deterministic,
/// locale-independent.
std::string format_csv_number(double value);

/// Integer cell, no exponent.
std::string format_csv_integer(std::int64_t value);

/// A rectangular table plus a header row, already formatted as strings.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
    void write(const std::string& path) const;
};

}  // namespace rrdps
