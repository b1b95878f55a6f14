#pragma once

// Closed curves as dense uniform samples with periodic Catmull-Rom
// interpolation in embedding coordinates (projected back to the surface),
// plus point-to-curve projection and signed distance. The solver only ever
// needs C^1 evaluations.

#include <algorithm>
#include <vector>

#include "quadrille/geometry.hpp"

namespace quadrille {

struct SampledCurve {
    Surface surface;
    std::vector<SurfacePoint> points;  // closed, ordered, uniformly spaced in parameter
    std::vector<double> params;        // i / n
    double diameter = 0.0;             // cached max pairwise sample distance

    int size() const { return static_cast<int>(points.size()); }
    // Positive when Theorem-style antipodal hypotheses hold (diameter < pi).
    double antipodal_clearance() const { return kPi - diameter; }
};

inline double param_circ_dist(double a, double b) {
    double d = std::abs(a - b);
    d = d - std::floor(d);
    return std::min(d, 1.0 - d);
}

// Validates sample count, spacing, and simplicity at sample resolution;
// caches the diameter.
inline SampledCurve make_sampled_curve(Surface s, std::vector<SurfacePoint> pts) {
    if (pts.size() < 64)
        throw std::invalid_argument("SampledCurve: need at least 64 samples");
    const int n = static_cast<int>(pts.size());
    double max_spacing = 0.0;
    for (int i = 0; i < n; ++i) {
        if (pts[i].surface != s)
            throw std::invalid_argument("SampledCurve: sample surface mismatch");
        validate(pts[i]);
        max_spacing = std::max(max_spacing, distance(pts[i], pts[(i + 1) % n]));
    }
    if (max_spacing >= 0.1)
        detail::fail("SampledCurve: consecutive samples further than 0.1 apart; sample more densely");

    SampledCurve sc;
    sc.surface = s;
    sc.points = std::move(pts);
    sc.params.resize(n);
    for (int i = 0; i < n; ++i) sc.params[i] = static_cast<double>(i) / n;

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d = distance(sc.points[i], sc.points[j]);
            sc.diameter = std::max(sc.diameter, d);
            int gap = std::min(j - i, n - (j - i));
            if (gap > 2 && d < 0.5 * max_spacing)
                detail::fail("SampledCurve: curve self-intersects at sample resolution");
        }
    }
    return sc;
}

namespace detail {

struct CubicSegment {
    Vec3 c0, c1, c2, c3;  // coefficients in the local parameter f in [0, 1]
};

inline CubicSegment catmull_rom(const SampledCurve& sc, int i) {
    const int n = sc.size();
    Vec3 p0 = sc.points[(i - 1 + n) % n].coords;
    Vec3 p1 = sc.points[i % n].coords;
    Vec3 p2 = sc.points[(i + 1) % n].coords;
    Vec3 p3 = sc.points[(i + 2) % n].coords;
    return {p1, 0.5 * (p2 - p0), 0.5 * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3),
            0.5 * (-p0 + 3.0 * p1 - 3.0 * p2 + p3)};
}

inline double wrap_unit(double s) {
    s = s - std::floor(s);
    return s >= 1.0 ? 0.0 : s;
}

}  // namespace detail

inline SurfacePoint curve_eval(const SampledCurve& sc, double s) {
    const int n = sc.size();
    double x = detail::wrap_unit(s) * n;
    int i = static_cast<int>(x);
    double f = x - i;
    auto seg = detail::catmull_rom(sc, i);
    Vec3 c = seg.c0 + f * (seg.c1 + f * (seg.c2 + f * seg.c3));
    return project_to_surface(sc.surface, c);
}

// d gamma / ds (s the global parameter in [0,1)), projected onto the tangent
// plane at the evaluated point.
inline TangentVector curve_tangent(const SampledCurve& sc, double s) {
    const int n = sc.size();
    double x = detail::wrap_unit(s) * n;
    int i = static_cast<int>(x);
    double f = x - i;
    auto seg = detail::catmull_rom(sc, i);
    Vec3 c = seg.c0 + f * (seg.c1 + f * (seg.c2 + f * seg.c3));
    Vec3 d = (seg.c1 + f * (2.0 * seg.c2 + f * (3.0 * seg.c3))) * static_cast<double>(n);
    SurfacePoint at = project_to_surface(sc.surface, c);
    return {at, tangent_project(at, d)};
}

namespace detail {

inline int nearest_sample(const SampledCurve& sc, const SurfacePoint& p) {
    const int n = sc.size();
    const int stride = std::max(1, n / 128);
    int best = 0;
    double best_d = distance(sc.points[0], p);
    for (int i = stride; i < n; i += stride) {
        double d = distance(sc.points[i], p);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    for (int off = -stride; off <= stride; ++off) {
        int i = (best + off + n) % n;
        double d = distance(sc.points[i], p);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

}  // namespace detail

// Parameter of the local foot of p on the curve: golden-section minimization
// of the distance around the nearest sample. `iterations` trades precision
// for speed (38 reaches the 1e-13 parameter floor from a 3-sample bracket).
inline double nearest_parameter(const SampledCurve& sc, const SurfacePoint& p,
                                int iterations = 38) {
    const int n = sc.size();
    int i0 = detail::nearest_sample(sc, p);
    double lo = (i0 - 1.5) / n;
    double hi = (i0 + 1.5) / n;
    const double invphi = 0.6180339887498949;
    double a = hi - invphi * (hi - lo);
    double b = lo + invphi * (hi - lo);
    double fa = distance(curve_eval(sc, a), p);
    double fb = distance(curve_eval(sc, b), p);
    for (int it = 0; it < iterations; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - invphi * (hi - lo);
            fa = distance(curve_eval(sc, a), p);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + invphi * (hi - lo);
            fb = distance(curve_eval(sc, b), p);
        }
    }
    return detail::wrap_unit(0.5 * (lo + hi));
}

// Distance to the curve, signed by which side of the oriented curve p lies
// on (positive to the left of the tangent direction).
inline double signed_distance(const SampledCurve& sc, const SurfacePoint& p,
                              int foot_iterations = 38) {
    double u = nearest_parameter(sc, p, foot_iterations);
    SurfacePoint foot = curve_eval(sc, u);
    double d = distance(foot, p);
    TangentVector tan = curve_tangent(sc, u);
    double side = metric_dot(sc.surface, log_map(foot, p).vec, rotate90(foot, tan.vec));
    return side < 0.0 ? -d : d;
}

// Unsigned distance to the sample polyline: nearest chord point projected to
// the surface. Deliberately avoids the interpolant and the signed machinery;
// serves as the oracle-side distance.
inline double polyline_distance(const SampledCurve& sc, const SurfacePoint& p) {
    const int n = sc.size();
    int i0 = detail::nearest_sample(sc, p);
    double best = distance(sc.points[i0], p);
    for (int off = -1; off <= 1; ++off) {
        int i = (i0 + off + n) % n;
        Vec3 a = sc.points[i].coords;
        Vec3 b = sc.points[(i + 1) % n].coords;
        Vec3 ab = b - a;
        double len2 = dot(ab, ab);
        if (len2 == 0.0) continue;
        double t = std::clamp(dot(p.coords - a, ab) / len2, 0.0, 1.0);
        SurfacePoint chord = project_to_surface(sc.surface, a + t * ab);
        best = std::min(best, distance(chord, p));
    }
    return best;
}

// Curve with its parameter origin shifted by whole samples; used by the
// reparameterization-invariance checks.
inline SampledCurve shift_origin(const SampledCurve& sc, int offset) {
    const int n = sc.size();
    std::vector<SurfacePoint> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = sc.points[(i + offset) % n];
    return make_sampled_curve(sc.surface, std::move(pts));
}

}  // namespace quadrille
