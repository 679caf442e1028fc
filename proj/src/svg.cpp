#include "stagsim/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace stagsim {

namespace {

std::string num(double v, const char* fmt = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

struct Range {
    double lo;
    double hi;
    double span() const { return hi - lo; }
};

Range padded_range(double lo, double hi) {
    if (lo == hi) return {lo - 0.5, hi + 0.5};
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

} // namespace

std::string scatter_svg(const std::vector<std::pair<double, double>>& points,
                        const std::optional<FitResult>& fit, const ScatterLabels& labels) {
    if (points.empty()) throw std::invalid_argument("scatter_svg: at least one point required");

    constexpr double width = 640.0, height = 480.0;
    constexpr double left = 70.0, right = 610.0, top = 50.0, bottom = 420.0;

    double x_min = points[0].first, x_max = points[0].first;
    double y_min = points[0].second, y_max = points[0].second;
    for (const auto& [x, y] : points) {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    const Range xr = padded_range(x_min, x_max);
    const Range yr = padded_range(y_min, y_max);
    const auto px = [&](double x) { return left + (x - xr.lo) / xr.span() * (right - left); };
    const auto py = [&](double y) { return bottom - (y - yr.lo) / yr.span() * (bottom - top); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(width / 2) + "\" y=\"28\" font-family=\"sans-serif\" "
           "font-size=\"16\" text-anchor=\"middle\">" + labels.title + "</text>\n";

    // axes
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(right) +
           "\" y2=\"" + num(bottom) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) +
           "\" y2=\"" + num(bottom) + "\" stroke=\"black\"/>\n";

    constexpr int ticks = 5;
    for (int t = 0; t < ticks; ++t) {
        const double fx = xr.lo + xr.span() * t / (ticks - 1);
        const double gx = px(fx);
        svg += "<line x1=\"" + num(gx) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(gx) +
               "\" y2=\"" + num(bottom + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(gx) + "\" y=\"" + num(bottom + 20) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               num(fx, "%.3f") + "</text>\n";
        const double fy = yr.lo + yr.span() * t / (ticks - 1);
        const double gy = py(fy);
        svg += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(gy) + "\" x2=\"" + num(left) +
               "\" y2=\"" + num(gy) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(left - 8) + "\" y=\"" + num(gy + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
               num(fy, "%.3f") + "</text>\n";
    }

    svg += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(height - 18) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
           labels.x_label + "</text>\n";
    svg += "<text x=\"20\" y=\"" + num((top + bottom) / 2) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 20 " + num((top + bottom) / 2) + ")\">" + labels.y_label +
           "</text>\n";

    if (fit) {
        const double lx1 = px(x_min), ly1 = py(fit->slope * x_min + fit->intercept);
        const double lx2 = px(x_max), ly2 = py(fit->slope * x_max + fit->intercept);
        svg += "<line x1=\"" + num(lx1) + "\" y1=\"" + num(ly1) + "\" x2=\"" + num(lx2) +
               "\" y2=\"" + num(ly2) + "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + num(right) + "\" y=\"" + num(top - 8) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">r^2 = " +
               num(fit->r_squared, "%.3f") + "</text>\n";
    }

    for (const auto& [x, y] : points) {
        svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
               "\" r=\"3\" fill=\"#1f77b4\" fill-opacity=\"0.8\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace stagsim
