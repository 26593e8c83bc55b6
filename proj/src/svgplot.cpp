#include "emfwd/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <vector>

namespace emfwd {

namespace {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<Series> extract_series(const CsvTable& t, const PlotSpec& spec) {
    const int xi = t.column_index(spec.x_column);
    const int yi = t.column_index(spec.y_column);
    if (xi < 0) throw std::runtime_error("emit_plot: missing column " + spec.x_column);
    if (yi < 0) throw std::runtime_error("emit_plot: missing column " + spec.y_column);
    if (t.rows.empty()) throw std::runtime_error("emit_plot: CSV has no data rows");
    const int gi = spec.group_column.empty() ? -1 : t.column_index(spec.group_column);

    std::vector<Series> series;
    std::map<std::string, size_t> index;
    for (const auto& row : t.rows) {
        const std::string key = gi >= 0 ? row[gi] : std::string();
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, series.size());
            series.push_back({key, {}});
            it = index.find(key);
        }
        series[it->second].pts.emplace_back(std::stod(row[xi]), std::stod(row[yi]));
    }
    return series;
}

double to_axis(double v, bool log_axis) {
    if (!log_axis) return v;
    if (!(v > 0.0)) throw std::runtime_error("emit_plot: log axis requires positive values");
    return std::log10(v);
}

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (span <= 0.0) return {lo};
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
        ticks.push_back(v);
    return ticks;
}

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf"};

}  // namespace

void emit_plot(const std::filesystem::path& csv_path, const PlotSpec& spec,
               const std::filesystem::path& out_path) {
    const CsvTable t = read_csv(csv_path);
    const std::vector<Series> series = extract_series(t, spec);

    const double width = 800.0, height = 560.0;
    const double ml = 90.0, mr = 30.0, mt = 40.0, mb = 70.0;

    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& s : series) {
        for (const auto& p : s.pts) {
            const double x = to_axis(p.first, spec.log_x);
            const double y = to_axis(p.second, spec.log_y);
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    }
    if (xhi <= xlo) xhi = xlo + 1.0;
    if (yhi <= ylo) {
        ylo -= 0.5;
        yhi = ylo + 1.0;
    }
    const double ypad = 0.05 * (yhi - ylo);
    ylo -= ypad;
    yhi += ypad;

    const auto px = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (width - ml - mr); };
    const auto py = [&](double y) { return height - mb - (y - ylo) / (yhi - ylo) * (height - mt - mb); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
           fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        svg += "<text x=\"" + fmt(width / 2) +
               "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
               spec.title + "</text>\n";

    // frame
    svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(width - ml - mr) +
           "\" height=\"" + fmt(height - mt - mb) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // ticks
    for (double v : linear_ticks(xlo, xhi)) {
        const double X = px(v);
        svg += "<line x1=\"" + fmt(X) + "\" y1=\"" + fmt(height - mb) + "\" x2=\"" + fmt(X) +
               "\" y2=\"" + fmt(height - mb + 6) + "\" stroke=\"black\"/>\n";
        const std::string label = spec.log_x ? ("1e" + fmt_tick(v)) : fmt_tick(v);
        svg += "<text x=\"" + fmt(X) + "\" y=\"" + fmt(height - mb + 22) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + label +
               "</text>\n";
    }
    for (double v : linear_ticks(ylo, yhi)) {
        const double Y = py(v);
        svg += "<line x1=\"" + fmt(ml - 6) + "\" y1=\"" + fmt(Y) + "\" x2=\"" + fmt(ml) +
               "\" y2=\"" + fmt(Y) + "\" stroke=\"black\"/>\n";
        const std::string label = spec.log_y ? ("1e" + fmt_tick(v)) : fmt_tick(v);
        svg += "<text x=\"" + fmt(ml - 10) + "\" y=\"" + fmt(Y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + label +
               "</text>\n";
    }

    // axis labels
    svg += "<text x=\"" + fmt(ml + (width - ml - mr) / 2) + "\" y=\"" + fmt(height - 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           spec.x_column + (spec.log_x ? " (log)" : "") + "</text>\n";
    svg += "<text x=\"20\" y=\"" + fmt(mt + (height - mt - mb) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 20 " +
           fmt(mt + (height - mt - mb) / 2) + ")\">" + spec.y_column + (spec.log_y ? " (log)" : "") +
           "</text>\n";

    // polylines
    for (size_t k = 0; k < series.size(); ++k) {
        const char* color = kColors[k % (sizeof kColors / sizeof kColors[0])];
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : series[k].pts) {
            svg += fmt(px(to_axis(p.first, spec.log_x))) + "," +
                   fmt(py(to_axis(p.second, spec.log_y))) + " ";
        }
        svg += "\"/>\n";
    }

    // legend
    for (size_t k = 0; k < series.size(); ++k) {
        const double Y = mt + 16.0 + 18.0 * k;
        const char* color = kColors[k % (sizeof kColors / sizeof kColors[0])];
        svg += "<line x1=\"" + fmt(width - mr - 120) + "\" y1=\"" + fmt(Y - 4) + "\" x2=\"" +
               fmt(width - mr - 96) + "\" y2=\"" + fmt(Y - 4) + "\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt(width - mr - 90) + "\" y=\"" + fmt(Y) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" +
               (series[k].label.empty() ? spec.y_column : series[k].label) + "</text>\n";
    }
    svg += "</svg>\n";

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_plot: cannot open " + out_path.string());
    out << svg;
}

void emit_dat(const std::filesystem::path& csv_path, const PlotSpec& spec,
              const std::filesystem::path& out_path) {
    const CsvTable t = read_csv(csv_path);
    const std::vector<Series> series = extract_series(t, spec);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_dat: cannot open " + out_path.string());
    out << "# " << spec.x_column << "\t" << spec.y_column << "\n";
    for (const auto& s : series) {
        out << "# series: " << (s.label.empty() ? spec.y_column : s.label) << "\n";
        for (const auto& p : s.pts)
            out << format_double(p.first) << "\t" << format_double(p.second) << "\n";
        out << "\n\n";
    }
}

}  // namespace emfwd
