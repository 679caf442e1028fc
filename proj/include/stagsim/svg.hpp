// Self-contained scatter-plot SVG emission; no plotting dependency, output
// is byte-deterministic for identical input.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stagsim/metrics.hpp"

namespace stagsim {

struct ScatterLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

// Axes with ticks, one marker per point, the fitted line spanning exactly
// the x-range of the data, and an r-squared caption when a fit is given.
std::string scatter_svg(const std::vector<std::pair<double, double>>& points,
                        const std::optional<FitResult>& fit, const ScatterLabels& labels);

} // namespace stagsim
