#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vortexhop::svgplot {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points; // (x, y)
};

// Log-y line chart (the natural scale for error-rate curves). Y values
// <= 0 are dropped from their series.
void line_chart(const std::string& path, const std::string& title,
                const std::string& x_label, const std::string& y_label,
                const std::vector<Series>& series);

// Heatmap of z(x, y) on a rectangular grid, colored on log10(z).
void heatmap(const std::string& path, const std::string& title,
             const std::string& x_label, const std::string& y_label,
             const std::vector<double>& xs, const std::vector<double>& ys,
             const std::vector<std::vector<double>>& z); // z[yi][xi]

} // namespace vortexhop::svgplot
