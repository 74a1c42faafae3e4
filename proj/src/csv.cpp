#include "rrdps/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rrdps {

std::string format_csv_number(double value) {
    char buf[48];
    if (value == 0.0) return "0";
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::abs(value) < 1e-4) {
        std::snprintf(buf, sizeof(buf), "%.9e", value);
    } else {
        std::snprintf(buf, sizeof(buf), "%.10g", value);
    }
    return buf;
}

std::string format_csv_integer(std::int64_t value) {
    return std::to_string(value);
}

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    file << to_string();
    if (!file) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace rrdps
