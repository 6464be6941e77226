#include "battfdi/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace battfdi {

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series, const std::vector<PlotHLine>& hlines,
                    const std::string& x_label, const std::string& y_label) {
    const double W = 860, H = 420;
    const double ml = 70, mr = 20, mt = 40, mb = 50;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (int i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x(i));
            xmax = std::max(xmax, s.x(i));
            ymin = std::min(ymin, s.y(i));
            ymax = std::max(ymax, s.y(i));
        }
    }
    for (const auto& h : hlines) {
        ymin = std::min(ymin, h.y);
        ymax = std::max(ymax, h.y);
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin)) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double ypad = 0.08 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("svg: cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";

    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + i * (xmax - xmin) / 5;
        const double yv = ymin + i * (ymax - ymin) / 5;
        out << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << xv << "</text>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << yv << "</text>\n";
        out << "<line x1=\"" << ml << "\" y1=\"" << py(yv) << "\" x2=\"" << W - mr << "\" y2=\""
            << py(yv) << "\" stroke=\"#eeeeee\"/>\n";
    }
    out << "<text x=\"" << (W + ml - mr) / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << (H + mt - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
        << (H + mt - mb) / 2 << ")\">" << y_label << "</text>\n";

    for (const auto& h : hlines) {
        out << "<line x1=\"" << ml << "\" y1=\"" << py(h.y) << "\" x2=\"" << W - mr << "\" y2=\""
            << py(h.y) << "\" stroke=\"" << h.color << "\" stroke-dasharray=\"6 4\"/>\n";
    }

    // Downsample long series so files stay small.
    double legend_y = mt + 6;
    for (const auto& s : series) {
        const int n = static_cast<int>(s.x.size());
        const int stride = std::max(1, n / 2000);
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
        for (int i = 0; i < n; i += stride) out << px(s.x(i)) << "," << py(s.y(i)) << " ";
        if ((n - 1) % stride != 0) out << px(s.x(n - 1)) << "," << py(s.y(n - 1));
        out << "\"/>\n";
        out << "<text x=\"" << W - mr - 6 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << s.color << "\">" << s.label
            << "</text>\n";
        legend_y += 16;
    }
    out << "</svg>\n";
}

}  // namespace battfdi
