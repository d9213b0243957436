#include "scenucb/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "scenucb/errors.hpp"

namespace scenucb {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_curve_csv(std::ostream& os, const RunTrace& trace, const RegretCurve& curve,
                     const std::string& prefix_column, const std::string& prefix_value, bool with_header) {
    detail::require(trace.length() == curve.length(), "write_curve_csv: trace and curve lengths differ");
    const std::string lead = prefix_column.empty() ? std::string{} : prefix_value + ",";
    if (with_header) os << (prefix_column.empty() ? std::string{} : prefix_column + ",") << kCurveHeader << "\n";
    for (std::size_t k = 0; k < trace.length(); ++k) {
        const auto& d = trace.decisions[k];
        os << lead << d.t << ',' << curve.redraw_count[k] << ',' << d.x_index << ',' << trace.scenario_at(k) << ','
           << format_number(d.y) << ',' << format_number(trace.sigmas[k]) << ',' << format_number(trace.betas[k])
           << ',' << format_number(curve.instantaneous[k]) << ',' << format_number(curve.average[k]) << ','
           << format_number(curve.bound[k]) << "\n";
    }
}

void write_trace_csv(std::ostream& os, const RunTrace& trace) {
    os << kTraceHeader << "\n";
    for (std::size_t k = 0; k < trace.length(); ++k) {
        const auto& d = trace.decisions[k];
        os << d.t << ',' << d.x_index << ',' << trace.scenario_at(k) << ',' << format_number(d.ucb) << ','
           << format_number(d.y) << ',' << format_number(trace.sigmas[k]) << ',' << format_number(trace.betas[k])
           << "\n";
    }
}

void write_series(std::ostream& os, const Series& series) {
    detail::require(series.x.size() == series.y.size(), "write_series: x and y lengths differ");
    for (std::size_t k = 0; k < series.x.size(); ++k)
        os << format_number(series.x[k]) << ' ' << format_number(series.y[k]) << "\n";
}

void write_svg(std::ostream& os, const std::vector<Series>& series, const std::string& title) {
    constexpr double width = 640, height = 400, margin = 50;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.y[k])) continue;
            xmin = std::min(xmin, s.x[k]);
            xmax = std::max(xmax, s.x[k]);
            ymin = std::min(ymin, s.y[k]);
            ymax = std::max(ymax, s.y[k]);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) ymax = ymin + 1;
    auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
       << height - margin << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"" << height - margin + 15 << "\" font-size=\"10\">"
       << format_number(xmin) << "</text>\n";
    os << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 15
       << "\" font-size=\"10\" text-anchor=\"end\">" << format_number(xmax) << "</text>\n";
    os << "<text x=\"" << margin - 5 << "\" y=\"" << height - margin << "\" font-size=\"10\" text-anchor=\"end\">"
       << format_number(ymin) << "</text>\n";
    os << "<text x=\"" << margin - 5 << "\" y=\"" << margin + 5 << "\" font-size=\"10\" text-anchor=\"end\">"
       << format_number(ymax) << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = colors[s % std::size(colors)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (std::size_t k = 0; k < series[s].x.size(); ++k) {
            if (!std::isfinite(series[s].y[k])) continue;
            os << format_number(px(series[s].x[k])) << ',' << format_number(py(series[s].y[k])) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << width - margin - 5 << "\" y=\"" << margin + 15 * (s + 1)
           << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << color << "\">" << series[s].label << "</text>\n";
    }
    os << "</svg>\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << content;
    if (!out) throw ConfigError("write to '" + path + "' failed");
}

}  // namespace scenucb
