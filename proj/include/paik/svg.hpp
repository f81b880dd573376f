#pragma once

// Minimal static SVG plots for CLI output.

#include <string>
#include <utility>
#include <vector>

namespace paik::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Axes {
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// One panel per entry in `panels`, stacked vertically, sharing nothing.
std::string line_plot(const std::vector<std::pair<Axes, std::vector<Series>>>& panels);

/// Heatmap of values[row][col]; NaN cells are drawn hatched grey.
std::string heatmap(const Axes& axes, const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels, const std::vector<std::vector<double>>& values);

}  // namespace paik::svg
