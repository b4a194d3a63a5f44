#pragma once

#include <string>
#include <vector>

namespace bassdiff {

inline constexpr int kPlotWidth = 960;
inline constexpr int kPlotHeight = 540;

enum class LineStyle { Solid, Dashed, DashDot };

struct PlotLine {
    std::string label;
    std::vector<double> values;
    LineStyle style = LineStyle::Solid;
    std::string color = "#1f77b4";
};

struct ComparePlot {
    std::string title;
    std::string x_label = "Period";
    std::string y_label = "Demand";
    std::vector<std::string> periods;  // x tick labels, one per point
    std::vector<PlotLine> lines;
    std::vector<std::string> caption;  // rendered below the axes
};

/// Self-contained SVG on a fixed 960x540 viewport. Every line becomes one
/// <polyline> with one vertex per value, min-max scaled over all lines.
/// Throws DegeneratePlot when fewer than two points are supplied.
std::string render_svg(const ComparePlot& plot);

} // namespace bassdiff
