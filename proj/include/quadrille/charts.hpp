#pragma once

// Coordinate charts used for curve input and rendering. The model surfaces
// (hyperboloid / unit sphere / z = 0 plane) are the computational home; the
// charts exist only at the boundary of the library.

#include <string>

#include "quadrille/geometry.hpp"

namespace quadrille {

enum class Chart { PoincareDisk, UpperHalfPlane, Stereographic, EmbeddedR3, Plane };

inline const char* chart_name(Chart c) {
    switch (c) {
        case Chart::PoincareDisk: return "poincare-disk";
        case Chart::UpperHalfPlane: return "upper-half-plane";
        case Chart::Stereographic: return "stereographic";
        case Chart::EmbeddedR3: return "embedded-r3";
        case Chart::Plane: return "plane";
    }
    return "?";
}

inline bool chart_matches_surface(Chart c, Surface s) {
    switch (c) {
        case Chart::PoincareDisk:
        case Chart::UpperHalfPlane: return s.kind == SurfaceKind::Hyperbolic;
        case Chart::Stereographic: return s.kind == SurfaceKind::Spherical;
        case Chart::Plane: return s.kind == SurfaceKind::Euclidean;
        case Chart::EmbeddedR3: return true;
    }
    return false;
}

namespace detail {

// Poincare disk -> hyperboloid: (u, v) with u^2 + v^2 < 1 maps to
// ((1 + r^2), 2u, 2v) / (1 - r^2).
inline SurfacePoint disk_to_hyperboloid(double u, double v) {
    double r2 = u * u + v * v;
    if (r2 >= 1.0) fail("poincare-disk coordinates must lie inside the unit disk");
    double s = 1.0 / (1.0 - r2);
    return project_to_surface(Surface::hyperbolic(), {(1.0 + r2) * s, 2.0 * u * s, 2.0 * v * s});
}

// Stereographic projection from the north pole onto the equatorial plane:
// (X, Y) maps to (2X, 2Y, R^2 - 1) / (R^2 + 1).
inline SurfacePoint stereographic_to_sphere(double X, double Y) {
    double r2 = X * X + Y * Y;
    double s = 1.0 / (1.0 + r2);
    return project_to_surface(Surface::spherical(), {2.0 * X * s, 2.0 * Y * s, (r2 - 1.0) * s});
}

}  // namespace detail

// Chart coordinates (x, y[, z]) -> model embedding coordinates. The chart
// must belong to the surface; embedded-r3 accepts raw coordinates and
// projects them onto the model.
inline SurfacePoint chart_to_model(Surface s, Chart c, Vec3 pt) {
    if (!chart_matches_surface(c, s))
        throw std::invalid_argument(std::string("chart ") + chart_name(c) +
                                    " does not parameterize the " + s.name() + " surface");
    switch (c) {
        case Chart::PoincareDisk:
            return detail::disk_to_hyperboloid(pt.x, pt.y);
        case Chart::UpperHalfPlane: {
            if (pt.y <= 0.0) detail::fail("upper-half-plane coordinates need y > 0");
            // Cayley transform w = (z - i) / (z + i) into the disk
            double den = pt.x * pt.x + (pt.y + 1.0) * (pt.y + 1.0);
            double wu = (pt.x * pt.x + pt.y * pt.y - 1.0) / den;
            double wv = -2.0 * pt.x / den;
            return detail::disk_to_hyperboloid(wu, wv);
        }
        case Chart::Stereographic:
            return detail::stereographic_to_sphere(pt.x, pt.y);
        case Chart::EmbeddedR3:
            return project_to_surface(s, pt);
        case Chart::Plane:
            return {{pt.x, pt.y, 0.0}, Surface::euclidean()};
    }
    detail::fail("chart_to_model: bad chart");
}

// Model -> chart. Only x and y of the result are meaningful for the 2-D
// charts; embedded-r3 returns the raw coordinates.
inline Vec3 model_to_chart(Chart c, const SurfacePoint& p) {
    if (!chart_matches_surface(c, p.surface))
        throw std::invalid_argument("model_to_chart: chart/surface mismatch");
    switch (c) {
        case Chart::PoincareDisk:
            return {p.coords.y / (1.0 + p.coords.x), p.coords.z / (1.0 + p.coords.x), 0.0};
        case Chart::UpperHalfPlane: {
            double wu = p.coords.y / (1.0 + p.coords.x);
            double wv = p.coords.z / (1.0 + p.coords.x);
            // z = i (1 + w) / (1 - w)
            double den = (1.0 - wu) * (1.0 - wu) + wv * wv;
            return {-2.0 * wv / den, (1.0 - wu * wu - wv * wv) / den, 0.0};
        }
        case Chart::Stereographic: {
            if (p.coords.z >= 1.0 - 1e-14)
                detail::fail("model_to_chart: the north pole has no stereographic image");
            return {p.coords.x / (1.0 - p.coords.z), p.coords.y / (1.0 - p.coords.z), 0.0};
        }
        case Chart::EmbeddedR3:
            return p.coords;
        case Chart::Plane:
            return {p.coords.x, p.coords.y, 0.0};
    }
    detail::fail("model_to_chart: bad chart");
}

// Closed-form Poincare disk distance; the oracle for the isometry of the
// disk -> hyperboloid conversion.
inline double poincare_disk_distance(double u1, double v1, double u2, double v2) {
    double du = u1 - u2, dv = v1 - v2;
    double a = 1.0 - (u1 * u1 + v1 * v1);
    double b = 1.0 - (u2 * u2 + v2 * v2);
    return std::acosh(1.0 + 2.0 * (du * du + dv * dv) / (a * b));
}

}  // namespace quadrille
