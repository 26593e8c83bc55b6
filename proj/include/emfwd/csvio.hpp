#pragma once

// Schema-stable CSV with '#' metadata comment lines. All floating-point
// fields are written with %.17g so outputs are byte-deterministic and
// round-trip exactly.

#include <filesystem>
#include <string>
#include <vector>

namespace emfwd {

struct CsvTable {
    std::vector<std::string> comments;  // without the leading '#'
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const;  // -1 if absent
};

std::string format_double(double v);

void write_csv(const CsvTable& table, const std::filesystem::path& path);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace emfwd
