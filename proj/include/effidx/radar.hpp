#pragma once

// Static SVG radar charts of per-series deviations from the efficient market.
// The centre is zero deviation; each chart is rescaled so its largest
// deviation touches the outer ring.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "effidx/detail/numeric.hpp"
#include "effidx/efficiency.hpp"

namespace effidx {

struct RadarPoint {
    double x = 0.0;
    double y = 0.0;
};

struct RadarGeometry {
    double size = 640.0;
    double radius = 240.0;

    [[nodiscard]] double centre() const { return size / 2.0; }
};

/// Vertex positions: series k sits at angle 2 pi k / N clockwise from the top,
/// at distance radius * value / max(values).
inline std::vector<RadarPoint> radar_vertices(std::span<const double> values, const RadarGeometry& g = {}) {
    double largest = 0.0;
    for (double v : values) largest = std::max(largest, std::abs(v));
    std::vector<RadarPoint> out;
    out.reserve(values.size());
    const double n = static_cast<double>(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
        const double r = largest > 0.0 ? g.radius * std::abs(values[k]) / largest : 0.0;
        out.push_back({g.centre() + r * std::sin(angle), g.centre() - r * std::cos(angle)});
    }
    return out;
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

inline std::string render_radar_svg(std::string_view title, std::span<const std::string> labels,
                                    std::span<const double> values, const RadarGeometry& g = {}) {
    using detail::fixed;
    const double c = g.centre();
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(g.size, 0) << "\" height=\""
        << fixed(g.size, 0) << "\" viewBox=\"0 0 " << fixed(g.size, 0) << ' ' << fixed(g.size, 0) << "\">\n"
        << "  <title>" << detail::xml_escape(title) << "</title>\n"
        << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "  <text x=\"" << fixed(c, 1) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << detail::xml_escape(title) << "</text>\n";
    for (int ring = 1; ring <= 4; ++ring)
        svg << "  <circle cx=\"" << fixed(c, 1) << "\" cy=\"" << fixed(c, 1) << "\" r=\""
            << fixed(g.radius * ring / 4.0, 1) << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";

    const double n = static_cast<double>(labels.size());
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
        const double sx = std::sin(angle), cy = -std::cos(angle);
        svg << "  <line x1=\"" << fixed(c, 1) << "\" y1=\"" << fixed(c, 1) << "\" x2=\""
            << fixed(c + g.radius * sx, 2) << "\" y2=\"" << fixed(c + g.radius * cy, 2)
            << "\" stroke=\"#e0e0e0\"/>\n";
        svg << "  <text x=\"" << fixed(c + (g.radius + 18.0) * sx, 2) << "\" y=\""
            << fixed(c + (g.radius + 18.0) * cy + 4.0, 2)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << detail::xml_escape(labels[k]) << "</text>\n";
    }

    const auto vertices = radar_vertices(values, g);
    svg << "  <polyline fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" points=\"";
    for (const auto& v : vertices) svg << fixed(v.x, 2) << ',' << fixed(v.y, 2) << ' ';
    if (!vertices.empty()) svg << fixed(vertices.front().x, 2) << ',' << fixed(vertices.front().y, 2);
    svg << "\"/>\n";
    svg << "  <circle cx=\"" << fixed(c, 1) << "\" cy=\"" << fixed(c, 1) << "\" r=\"2\" fill=\"black\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

struct RadarChart {
    std::string file_name;
    std::string svg;
};

/// Absolute scaled deviations per measure, plus EI, in record order.
struct DeviationTable {
    std::vector<std::string> tickers;
    std::vector<double> hurst, fractal, entropy, ei;
};

inline DeviationTable deviation_table(std::span<const EfficiencyRecord> records) {
    DeviationTable t;
    for (const auto& r : records) {
        t.tickers.push_back(r.ticker);
        t.hurst.push_back(std::abs(r.deviations[0]));
        t.fractal.push_back(std::abs(r.deviations[1]));
        t.entropy.push_back(std::abs(r.deviations[2]));
        t.ei.push_back(r.ei);
    }
    return t;
}

inline void write_deviations_csv(std::ostream& out, const DeviationTable& t) {
    using detail::fixed;
    out << "ticker,hurst_dev,fractal_dev,entropy_dev,ei\n";
    for (std::size_t i = 0; i < t.tickers.size(); ++i)
        out << t.tickers[i] << ',' << fixed(t.hurst[i], 6) << ',' << fixed(t.fractal[i], 6) << ','
            << fixed(t.entropy[i], 6) << ',' << fixed(t.ei[i], 6) << '\n';
}

inline std::vector<RadarChart> radar_charts(const DeviationTable& t) {
    return {
        {"radar_hurst.svg", render_radar_svg("Hurst exponent deviation", t.tickers, t.hurst)},
        {"radar_fractal.svg", render_radar_svg("Fractal dimension deviation", t.tickers, t.fractal)},
        {"radar_entropy.svg", render_radar_svg("Approximate entropy deviation", t.tickers, t.entropy)},
        {"radar_ei.svg", render_radar_svg("Efficiency Index", t.tickers, t.ei)},
    };
}

}  // namespace effidx
