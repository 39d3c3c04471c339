#include "wavescope/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace wavescope {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMargin = 42.0;
constexpr double kPlotWidth = 840.0;

struct Mapper {
    double y_top;
    double plot_height;

    double px(double x) const { return kMargin + (x + kPi) / (2.0 * kPi) * kPlotWidth; }
    double py(double y) const { return kMargin + (y_top - y) / y_top * plot_height; }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    // Avoid "-0.00" so mirrored geometry serializes identically.
    if (std::string_view(buf) == "-0.00") return "0.00";
    return buf;
}

void append_polyline(std::string& out, const Mapper& m,
                     const std::vector<num::Vec2>& pts, const char* style,
                     bool clip_bed) {
    if (pts.size() < 2) return;
    out += "<polyline fill=\"none\" ";
    out += style;
    out += " points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        const double y = clip_bed ? std::max(pts[i].y, 0.0) : pts[i].y;
        if (i) out += ' ';
        out += fmt(m.px(pts[i].x));
        out += ',';
        out += fmt(m.py(y));
    }
    out += "\"/>\n";
}

// Five-stop blue->red speed map.
std::string heat_color(double t) {
    static const double stops[5][3] = {{40, 50, 120},
                                       {60, 120, 190},
                                       {120, 200, 170},
                                       {240, 200, 80},
                                       {200, 60, 50}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int k = std::min(static_cast<int>(t), 3);
    const double f = t - k;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(stops[k][0] + f * (stops[k + 1][0] - stops[k][0])),
                  static_cast<int>(stops[k][1] + f * (stops[k + 1][1] - stops[k][1])),
                  static_cast<int>(stops[k][2] + f * (stops[k + 1][2] - stops[k][2])));
    return buf;
}

} // namespace

std::string render_svg(const PortraitDocument& doc) {
    const double y_top = 1.0 + 2.0 * doc.config.epsilon;
    const double plot_height = kPlotWidth * y_top / (2.0 * kPi) * 2.0; // 2:1 y-stretch
    const Mapper m{y_top, plot_height};
    const double width = kPlotWidth + 2.0 * kMargin;
    const double height = plot_height + 2.0 * kMargin;

    std::string svg;
    svg.reserve(1 << 20);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%s\" height=\"%s\" viewBox=\"0 0 %s %s\">\n",
                  fmt(width).c_str(), fmt(height).c_str(), fmt(width).c_str(),
                  fmt(height).c_str());
    svg += buf;

    // Heat-map underlay.
    if (doc.heat_nx > 0 && doc.heat_ny > 0 && !doc.speed.empty()) {
        const double v_max =
            std::max(*std::max_element(doc.speed.begin(), doc.speed.end()), 1e-15);
        svg += "<g shape-rendering=\"crispEdges\">\n";
        const double cw = kPlotWidth / doc.heat_nx;
        const double ch = plot_height / doc.heat_ny;
        for (int j = 0; j < doc.heat_ny; ++j) {
            for (int i = 0; i < doc.heat_nx; ++i) {
                const double v = doc.speed[static_cast<size_t>(j) * doc.heat_nx + i];
                std::snprintf(buf, sizeof buf,
                              "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" "
                              "fill=\"%s\" fill-opacity=\"0.35\"/>\n",
                              fmt(kMargin + i * cw).c_str(),
                              fmt(kMargin + plot_height - (j + 1) * ch).c_str(),
                              fmt(cw + 0.5).c_str(), fmt(ch + 0.5).c_str(),
                              heat_color(v / v_max).c_str());
                svg += buf;
            }
        }
        svg += "</g>\n";
    }

    // Streamlines (blue); separatrices slightly heavier.
    svg += "<g class=\"streamlines\">\n";
    for (const auto& sl : doc.streamlines) {
        const char* style = sl.separatrix
                                ? "stroke=\"#1040c0\" stroke-width=\"1.4\""
                                : "stroke=\"#3060d0\" stroke-width=\"0.8\"";
        for (const auto& poly : sl.polylines) {
            append_polyline(svg, m, poly, style, false);
        }
    }
    svg += "</g>\n";

    // Isoclines (dotted): 0-isocline red, infinity isocline green.
    svg += "<g class=\"isoclines\">\n";
    for (const auto& b : doc.isoclines) {
        const bool infinity = b.kind == IsoclineKind::Infinity;
        const char* style = infinity
                                ? "stroke=\"#108030\" stroke-width=\"1.2\" "
                                  "stroke-dasharray=\"2,4\""
                                : "stroke=\"#c02020\" stroke-width=\"1.2\" "
                                  "stroke-dasharray=\"2,4\"";
        append_polyline(svg, m, b.samples, style, b.crosses_bed);
    }
    svg += "</g>\n";

    // Surface curve Y = 1 + eps eta_hat cos(X) and the flat bed.
    {
        std::vector<num::Vec2> surface;
        for (int i = 0; i <= 128; ++i) {
            const double x = -kPi + 2.0 * kPi * i / 128.0;
            surface.push_back(
                {x, 1.0 + doc.config.epsilon * doc.surface_eta_hat * std::cos(x)});
        }
        append_polyline(svg, m, surface, "stroke=\"#202020\" stroke-width=\"1.6\"", false);
        append_polyline(svg, m, {{-kPi, 0.0}, {kPi, 0.0}},
                        "stroke=\"#202020\" stroke-width=\"1.6\"", false);
    }

    // Critical points: centers red, saddles green, degenerate grey.
    svg += "<g class=\"critical-points\">\n";
    for (const auto& cp : doc.critical_points) {
        const char* fill = cp.kind == CriticalKind::Center   ? "#d02020"
                           : cp.kind == CriticalKind::Saddle ? "#108030"
                                                             : "#808080";
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%s\" cy=\"%s\" r=\"4.0\" fill=\"%s\"/>\n",
                      fmt(m.px(cp.x)).c_str(), fmt(m.py(cp.y)).c_str(), fill);
        svg += buf;
    }
    svg += "</g>\n";

    svg += "</svg>\n";
    return svg;
}

} // namespace wavescope
