#pragma once

// Minimal native SVG line plots for sweep CSVs: axes, ticks, legend, one
// polyline per series. Byte-deterministic for fixed input. A gnuplot-friendly
// .dat companion can be emitted next to the SVG.

#include <filesystem>
#include <string>

#include "emfwd/csvio.hpp"

namespace emfwd {

struct PlotSpec {
    std::string x_column;
    std::string y_column;
    bool log_x = false;
    bool log_y = false;
    // rows are split into one series per distinct value of this column when
    // it exists ("variant" by default); a single series otherwise
    std::string group_column = "variant";
    std::string title;
};

// Renders csv_path into a standalone SVG at out_path. Throws on a missing
// column or an empty CSV body (no file is written then).
void emit_plot(const std::filesystem::path& csv_path, const PlotSpec& spec,
               const std::filesystem::path& out_path);

// Tab-separated series blocks for external tooling.
void emit_dat(const std::filesystem::path& csv_path, const PlotSpec& spec,
              const std::filesystem::path& out_path);

}  // namespace emfwd
