#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace battfdi {

/// One line series for the SVG writer.
struct PlotSeries {
    std::string label;
    std::string color;
    Eigen::VectorXd x;
    Eigen::VectorXd y;
};

/// Dashed horizontal marker (threshold lines).
struct PlotHLine {
    double y{0.0};
    std::string color{"#888888"};
};

/// Writes a self-contained SVG line plot. Presentation only; no test
/// surface beyond the file existing.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series, const std::vector<PlotHLine>& hlines,
                    const std::string& x_label, const std::string& y_label);

}  // namespace battfdi
