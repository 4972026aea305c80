#pragma once

#include <string>
#include <vector>

namespace thzmol::cli {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    double x_scale = 1.0;  // axis shows x * x_scale
};

/// Self-contained SVG line plot; identical inputs give identical bytes.
std::string render_line_plot(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace thzmol::cli
