#pragma once

// Figure output: the curve drawn in its chart, plus, for every inscription,
// the four vertices, the inscribing geodesic circle and dashed radii from
// the center. Output is deterministic for fixed inputs (fixed-precision
// number formatting, no timestamps).

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "quadrille/charts.hpp"
#include "quadrille/curve.hpp"
#include "quadrille/inscribe.hpp"

namespace quadrille {

namespace detail {

inline std::string fmt6(double x) {
    char buf[48];
    auto r = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 6);
    return std::string(buf, r.ptr);
}

struct ChartPoint {
    double x, y;
};

// Drawing coordinates: the curve's own chart for the 2-D charts; embedded
// spherical curves fall back to the orthographic (x, y) projection and
// embedded hyperbolic curves to the Poincare disk. y is flipped for SVG.
inline ChartPoint draw_point(Chart chart, const SurfacePoint& p) {
    Vec3 c;
    if (chart == Chart::EmbeddedR3 && p.surface.kind == SurfaceKind::Spherical)
        c = {p.coords.x, p.coords.y, 0.0};
    else if (chart == Chart::EmbeddedR3 && p.surface.kind == SurfaceKind::Hyperbolic)
        c = model_to_chart(Chart::PoincareDisk, p);
    else
        c = model_to_chart(chart, p);
    return {c.x, -c.y};
}

inline void path_from(std::string& svg, const std::vector<ChartPoint>& pts, const char* cls,
                      const char* stroke, const char* extra, bool closed) {
    svg += "<path class=\"";
    svg += cls;
    svg += "\" stroke=\"";
    svg += stroke;
    svg += "\" ";
    svg += extra;
    svg += "d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        svg += i == 0 ? "M" : "L";
        svg += fmt6(pts[i].x);
        svg += " ";
        svg += fmt6(pts[i].y);
    }
    if (closed) svg += "Z";
    svg += "\"/>\n";
}

}  // namespace detail

inline std::string render_svg_string(const SampledCurve& sc, Chart chart,
                                     const std::vector<Inscription>& results) {
    using detail::ChartPoint;
    std::vector<ChartPoint> curve_pts;
    curve_pts.reserve(sc.points.size());
    for (const SurfacePoint& p : sc.points) curve_pts.push_back(detail::draw_point(chart, p));

    std::vector<std::vector<ChartPoint>> circles, radii;
    std::vector<ChartPoint> vertices, centers;
    for (const Inscription& ins : results) {
        std::vector<ChartPoint> circ;
        for (int i = 0; i <= 192; ++i) {
            double a = kTwoPi * i / 192;
            circ.push_back(detail::draw_point(chart, exp_map(rotate_tangent(ins.circle.radial, a))));
        }
        circles.push_back(std::move(circ));
        const double pattern[4] = {0.0, ins.triple.theta, ins.triple.phi1,
                                   ins.triple.phi2 + ins.triple.theta};
        for (double a : pattern) {
            TangentVector dir = rotate_tangent(ins.circle.radial, a);
            std::vector<ChartPoint> seg;
            for (int i = 0; i <= 24; ++i)
                seg.push_back(
                    detail::draw_point(chart, exp_map({dir.base, (i / 24.0) * dir.vec})));
            vertices.push_back(seg.back());
            radii.push_back(std::move(seg));
        }
        centers.push_back(detail::draw_point(chart, ins.circle.center));
    }

    double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
    auto grow = [&](const ChartPoint& p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    };
    for (const auto& p : curve_pts) grow(p);
    for (const auto& c : circles)
        for (const auto& p : c) grow(p);
    bool disk_boundary = chart == Chart::PoincareDisk ||
                         (chart == Chart::EmbeddedR3 && sc.surface.kind == SurfaceKind::Hyperbolic);
    bool sphere_outline = chart == Chart::Stereographic ||
                          (chart == Chart::EmbeddedR3 && sc.surface.kind == SurfaceKind::Spherical);
    if (disk_boundary || sphere_outline) {
        grow({-1.0, -1.0});
        grow({1.0, 1.0});
    }
    double span = std::max(max_x - min_x, max_y - min_y);
    double margin = 0.07 * span;
    min_x -= margin;
    min_y -= margin;
    max_x += margin;
    max_y += margin;
    double stroke = 0.004 * span;
    double marker = 0.012 * span;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    svg += detail::fmt6(min_x) + " " + detail::fmt6(min_y) + " " +
           detail::fmt6(max_x - min_x) + " " + detail::fmt6(max_y - min_y) + "\">\n";
    svg += "<g fill=\"none\" stroke-width=\"" + detail::fmt6(stroke) + "\">\n";

    if (disk_boundary || sphere_outline)
        svg += "<circle class=\"chart-boundary\" cx=\"0\" cy=\"0\" r=\"1\" stroke=\"#999999\" "
               "stroke-dasharray=\"" +
               detail::fmt6(3.0 * stroke) + " " + detail::fmt6(3.0 * stroke) + "\"/>\n";
    if (chart == Chart::UpperHalfPlane)
        svg += "<line class=\"chart-boundary\" x1=\"" + detail::fmt6(min_x) + "\" y1=\"0\" x2=\"" +
               detail::fmt6(max_x) + "\" y2=\"0\" stroke=\"#999999\"/>\n";

    detail::path_from(svg, curve_pts, "curve", "#1f77b4", "", true);
    for (const auto& c : circles) detail::path_from(svg, c, "inscribed-circle", "#d62728", "", false);
    std::string dash = "stroke-dasharray=\"" + detail::fmt6(2.0 * stroke) + " " +
                       detail::fmt6(2.0 * stroke) + "\" ";
    for (const auto& r : radii)
        detail::path_from(svg, r, "radius", "#d62728", dash.c_str(), false);
    for (const auto& v : vertices)
        svg += "<circle class=\"vertex\" cx=\"" + detail::fmt6(v.x) + "\" cy=\"" +
               detail::fmt6(v.y) + "\" r=\"" + detail::fmt6(marker) + "\" fill=\"#000000\"/>\n";
    for (const auto& c : centers)
        svg += "<circle class=\"center\" cx=\"" + detail::fmt6(c.x) + "\" cy=\"" +
               detail::fmt6(c.y) + "\" r=\"" + detail::fmt6(0.7 * marker) +
               "\" fill=\"#d62728\"/>\n";
    svg += "</g>\n</svg>\n";
    return svg;
}

inline void render_svg(const SampledCurve& sc, Chart chart,
                       const std::vector<Inscription>& results, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("render_svg: cannot open '" + path + "' for writing");
    out << render_svg_string(sc, chart, results);
    if (!out) throw std::runtime_error("render_svg: failed writing '" + path + "'");
}

}  // namespace quadrille
