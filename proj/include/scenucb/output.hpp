#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "scenucb/algo.hpp"
#include "scenucb/regret.hpp"

namespace scenucb {

inline constexpr const char* kCurveHeader = "t,redraw_count,x_index,i_t,y_t,sigma_it,beta_t,r_inst,r_redraw_avg,bound";
inline constexpr const char* kTraceHeader = "t,x_index,i_t,ucb,y_t,sigma_it,beta_t";

/// 12 significant digits, shortest form.
std::string format_number(double v);

/// One row per iteration with the curve header above. A non-empty `prefix` is
/// written as the first column of every row (header included).
void write_curve_csv(std::ostream& os, const RunTrace& trace, const RegretCurve& curve,
                     const std::string& prefix_column = {}, const std::string& prefix_value = {},
                     bool with_header = true);
void write_trace_csv(std::ostream& os, const RunTrace& trace);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// "x y" per line.
void write_series(std::ostream& os, const Series& series);
/// Minimal static line chart, one polyline per series.
void write_svg(std::ostream& os, const std::vector<Series>& series, const std::string& title);

void write_file(const std::string& path, const std::string& content);

}  // namespace scenucb
