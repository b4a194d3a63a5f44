#include <bassdiff/svg_plot.hpp>

#include <bassdiff/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace bassdiff {

namespace {

constexpr double kLeft = 90.0;
constexpr double kRight = 930.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 420.0;
constexpr int kXTicks = 6;
constexpr int kYTicks = 5;

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c; break;
        }
    }
    return out;
}

const char* dash_array(LineStyle style) {
    switch (style) {
        case LineStyle::Dashed: return "8 4";
        case LineStyle::DashDot: return "8 4 2 4";
        case LineStyle::Solid: break;
    }
    return nullptr;
}

void stroke_attrs(std::ostringstream& os, const PlotLine& line) {
    os << " fill=\"none\" stroke=\"" << xml_escape(line.color) << "\" stroke-width=\"2\"";
    if (const char* dash = dash_array(line.style)) os << " stroke-dasharray=\"" << dash << "\"";
}

} // namespace

std::string render_svg(const ComparePlot& plot) {
    std::size_t n = plot.periods.size();
    for (const auto& line : plot.lines) n = std::max(n, line.values.size());
    if (n < 2) {
        throw Error(ErrorCode::DegeneratePlot,
                    "cannot draw a curve from " + std::to_string(n) + " point(s); supply more data");
    }
    double lo = 0.0;
    double hi = 0.0;
    bool seeded = false;
    for (const auto& line : plot.lines) {
        if (line.values.size() != n) {
            throw Error(ErrorCode::Shape, "plot line '" + line.label + "' has " +
                                              std::to_string(line.values.size()) + " points, expected " +
                                              std::to_string(n));
        }
        for (double v : line.values) {
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::Parameter, "plot line '" + line.label + "' has a non-finite value");
            }
            lo = seeded ? std::min(lo, v) : v;
            hi = seeded ? std::max(hi, v) : v;
            seeded = true;
        }
    }
    if (!plot.periods.empty() && plot.periods.size() != n) {
        throw Error(ErrorCode::Shape, "plot has " + std::to_string(plot.periods.size()) +
                                          " period labels for " + std::to_string(n) + " points");
    }
    if (hi == lo) {
        lo -= 1.0;
        hi += 1.0;
    }

    const auto x_at = [&](std::size_t i) {
        return kLeft + (kRight - kLeft) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    const auto y_at = [&](double v) { return kBottom - (kBottom - kTop) * (v - lo) / (hi - lo); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPlotWidth << "\" height=\"" << kPlotHeight
       << "\" viewBox=\"0 0 " << kPlotWidth << ' ' << kPlotHeight << "\" font-family=\"sans-serif\">\n";
    os << "  <rect x=\"0\" y=\"0\" width=\"" << kPlotWidth << "\" height=\"" << kPlotHeight
       << "\" fill=\"#ffffff\"/>\n";
    os << "  <text x=\"" << coord((kLeft + kRight) / 2) << "\" y=\"32\" font-size=\"18\" text-anchor=\"middle\">"
       << xml_escape(plot.title) << "</text>\n";

    // grid and tick labels
    os << "  <g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int k = 0; k <= kYTicks; ++k) {
        const double y = kBottom - (kBottom - kTop) * k / kYTicks;
        os << "    <line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(y) << "\" x2=\"" << coord(kRight)
           << "\" y2=\"" << coord(y) << "\"/>\n";
    }
    os << "  </g>\n";
    os << "  <g font-size=\"11\" fill=\"#333333\">\n";
    for (int k = 0; k <= kYTicks; ++k) {
        const double y = kBottom - (kBottom - kTop) * k / kYTicks;
        os << "    <text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(y + 4)
           << "\" text-anchor=\"end\">" << tick_value(lo + (hi - lo) * k / kYTicks) << "</text>\n";
    }
    const int x_ticks = static_cast<int>(std::min<std::size_t>(kXTicks, n - 1));
    for (int k = 0; k <= x_ticks; ++k) {
        const auto i = static_cast<std::size_t>(std::llround(static_cast<double>(k) * (n - 1) / x_ticks));
        const std::string label = plot.periods.empty() ? std::to_string(i + 1) : plot.periods[i];
        os << "    <text x=\"" << coord(x_at(i)) << "\" y=\"" << coord(kBottom + 18)
           << "\" text-anchor=\"middle\">" << xml_escape(label) << "</text>\n";
    }
    os << "  </g>\n";

    // axes
    os << "  <line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kBottom) << "\" x2=\"" << coord(kRight)
       << "\" y2=\"" << coord(kBottom) << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
    os << "  <line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop) << "\" x2=\"" << coord(kLeft)
       << "\" y2=\"" << coord(kBottom) << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
    os << "  <text x=\"" << coord((kLeft + kRight) / 2) << "\" y=\"" << coord(kBottom + 40)
       << "\" font-size=\"13\" text-anchor=\"middle\">" << xml_escape(plot.x_label) << "</text>\n";
    os << "  <text x=\"24\" y=\"" << coord((kTop + kBottom) / 2) << "\" font-size=\"13\" text-anchor=\"middle\""
       << " transform=\"rotate(-90 24 " << coord((kTop + kBottom) / 2) << ")\">" << xml_escape(plot.y_label)
       << "</text>\n";

    for (const auto& line : plot.lines) {
        os << "  <polyline";
        stroke_attrs(os, line);
        os << " points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) os << ' ';
            os << coord(x_at(i)) << ',' << coord(y_at(line.values[i]));
        }
        os << "\"/>\n";
    }

    // legend, top right inside the plot area
    os << "  <g font-size=\"12\">\n";
    double ly = kTop + 16;
    for (const auto& line : plot.lines) {
        os << "    <line x1=\"" << coord(kRight - 190) << "\" y1=\"" << coord(ly) << "\" x2=\""
           << coord(kRight - 150) << "\" y2=\"" << coord(ly) << '"';
        stroke_attrs(os, line);
        os << "/>\n";
        os << "    <text x=\"" << coord(kRight - 142) << "\" y=\"" << coord(ly + 4) << "\">"
           << xml_escape(line.label) << "</text>\n";
        ly += 18;
    }
    os << "  </g>\n";

    os << "  <g font-size=\"12\" fill=\"#222222\">\n";
    double cy = kBottom + 70;
    for (const auto& text : plot.caption) {
        os << "    <text x=\"" << coord(kLeft) << "\" y=\"" << coord(cy) << "\">" << xml_escape(text) << "</text>\n";
        cy += 16;
    }
    os << "  </g>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace bassdiff
