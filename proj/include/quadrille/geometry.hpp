#pragma once

// Constant-curvature surface primitives: points and tangent vectors on the
// hyperboloid sheet (curvature -1), the unit sphere (+1) and the flat plane
// (0), all stored in R^3 embedding coordinates. The hyperboloid lives in
// Minkowski space with signature (-,+,+) and the first coordinate timelike.

#include <cmath>
#include <stdexcept>
#include <string>

namespace quadrille {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Tolerance for on-surface / tangency invariants after renormalization.
inline constexpr double kSurfaceTol = 1e-12;

enum class SurfaceKind { Hyperbolic, Spherical, Euclidean };

struct Surface {
    SurfaceKind kind = SurfaceKind::Euclidean;
    double curvature = 0.0;

    static constexpr Surface hyperbolic() { return {SurfaceKind::Hyperbolic, -1.0}; }
    static constexpr Surface spherical() { return {SurfaceKind::Spherical, 1.0}; }
    static constexpr Surface euclidean() { return {SurfaceKind::Euclidean, 0.0}; }

    bool consistent() const {
        switch (kind) {
            case SurfaceKind::Hyperbolic: return curvature == -1.0;
            case SurfaceKind::Spherical: return curvature == 1.0;
            case SurfaceKind::Euclidean: return curvature == 0.0;
        }
        return false;
    }

    const char* name() const {
        switch (kind) {
            case SurfaceKind::Hyperbolic: return "hyperbolic";
            case SurfaceKind::Spherical: return "spherical";
            case SurfaceKind::Euclidean: return "euclidean";
        }
        return "?";
    }
};

inline bool operator==(Surface a, Surface b) { return a.kind == b.kind; }
inline bool operator!=(Surface a, Surface b) { return a.kind != b.kind; }

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(Vec3 o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline Vec3 operator*(double s, Vec3 v) { return v * s; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double mink_dot(Vec3 a, Vec3 b) { return -a.x * b.x + a.y * b.y + a.z * b.z; }

inline double euclidean_norm(Vec3 v) { return std::sqrt(dot(v, v)); }

// Ambient inner product that restricts to the Riemannian metric on tangent
// planes: Minkowski for the hyperboloid, Euclidean otherwise.
inline double metric_dot(Surface s, Vec3 a, Vec3 b) {
    return s.kind == SurfaceKind::Hyperbolic ? mink_dot(a, b) : dot(a, b);
}

struct SurfacePoint {
    Vec3 coords;
    Surface surface;
};

struct TangentVector {
    SurfacePoint base;
    Vec3 vec;

    Surface surface() const { return base.surface; }
    double norm() const {
        double n2 = metric_dot(base.surface, vec, vec);
        return n2 > 0.0 ? std::sqrt(n2) : 0.0;
    }
};

namespace detail {
[[noreturn]] inline void fail(const std::string& what) { throw std::domain_error(what); }
}  // namespace detail

// Wraps an angle to (-pi, pi].
inline double wrap_pm_pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a > kPi) a -= kTwoPi;
    if (a <= -kPi) a += kTwoPi;
    return a;
}

inline void require_same_surface(Surface a, Surface b, const char* where) {
    if (a != b)
        throw std::invalid_argument(std::string(where) + ": operands live on different surfaces (" +
                                    a.name() + " vs " + b.name() + ")");
}

// Projects ambient coordinates back onto the model surface. Used after every
// exp/transport to suppress drift.
inline SurfacePoint project_to_surface(Surface s, Vec3 c) {
    switch (s.kind) {
        case SurfaceKind::Hyperbolic: {
            double q = -mink_dot(c, c);
            if (q <= 0.0 || c.x <= 0.0)
                detail::fail("project_to_surface: coordinates are not near the upper hyperboloid sheet");
            return {c / std::sqrt(q), s};
        }
        case SurfaceKind::Spherical: {
            double n = euclidean_norm(c);
            if (n == 0.0) detail::fail("project_to_surface: zero vector has no spherical projection");
            return {c / n, s};
        }
        case SurfaceKind::Euclidean:
            return {{c.x, c.y, 0.0}, s};
    }
    detail::fail("project_to_surface: bad surface");
}

// The constraint residual is quadratic in the coordinates, so the tolerance
// is taken relative to |c|^2 (1e-12 at unit scale); otherwise points far
// from the hyperboloid origin could never pass the check in doubles.
inline bool on_surface(const SurfacePoint& p, double tol = kSurfaceTol) {
    double scale = std::max(1.0, dot(p.coords, p.coords));
    switch (p.surface.kind) {
        case SurfaceKind::Hyperbolic:
            return p.coords.x > 0.0 &&
                   std::abs(mink_dot(p.coords, p.coords) + 1.0) <= tol * scale;
        case SurfaceKind::Spherical:
            return std::abs(dot(p.coords, p.coords) - 1.0) <= tol;
        case SurfaceKind::Euclidean:
            return std::abs(p.coords.z) <= tol * std::sqrt(scale);
    }
    return false;
}

inline void validate(const SurfacePoint& p) {
    if (!p.surface.consistent()) detail::fail("SurfacePoint: curvature does not match surface kind");
    if (!on_surface(p)) detail::fail("SurfacePoint: coordinates violate the model constraint");
}

inline bool is_tangent(const TangentVector& v, double tol = kSurfaceTol) {
    if (v.surface().kind == SurfaceKind::Euclidean) return std::abs(v.vec.z) <= tol;
    return std::abs(metric_dot(v.surface(), v.base.coords, v.vec)) <= tol;
}

inline void validate(const TangentVector& v) {
    validate(v.base);
    if (!is_tangent(v)) detail::fail("TangentVector: vector is not tangent to the surface at its base");
}

// Orthogonal projection of an ambient vector onto the tangent plane at p
// (with respect to the ambient metric of p's surface).
inline Vec3 tangent_project(const SurfacePoint& p, Vec3 w) {
    switch (p.surface.kind) {
        case SurfaceKind::Hyperbolic:
            return w + mink_dot(w, p.coords) * p.coords;  // <p,p> = -1
        case SurfaceKind::Spherical:
            return w - dot(w, p.coords) * p.coords;
        case SurfaceKind::Euclidean:
            return {w.x, w.y, 0.0};
    }
    detail::fail("tangent_project: bad surface");
}

// The complex structure j: rotation by +90 degrees in the oriented tangent
// plane. The orientation is fixed once globally by the right-hand rule about
// the outward normal (the point itself on the sphere and the hyperboloid,
// z-hat on the plane); on the hyperboloid the cross product index is raised
// with the Minkowski metric. j is linear, preserves the metric norm of
// tangent vectors, and satisfies j. j = -id.
inline Vec3 rotate90(const SurfacePoint& at, Vec3 v) {
    switch (at.surface.kind) {
        case SurfaceKind::Hyperbolic: {
            Vec3 c = cross(at.coords, v);
            return {-c.x, c.y, c.z};
        }
        case SurfaceKind::Spherical:
            return cross(at.coords, v);
        case SurfaceKind::Euclidean:
            return {-v.y, v.x, 0.0};
    }
    detail::fail("rotate90: bad surface");
}

inline TangentVector rotate90(const TangentVector& v) { return {v.base, rotate90(v.base, v.vec)}; }

struct FrameAtPoint {
    SurfacePoint base;
    TangentVector e1;  // unit
    TangentVector e2;  // = j e1
};

// Any orthonormal oriented frame at p; the seed axis is arbitrary. On the
// hyperboloid the y axis always projects to a nonzero tangent; on the sphere
// the seed switches away from +-y near those poles.
inline FrameAtPoint frame_at(const SurfacePoint& p) {
    Vec3 seed{0.0, 1.0, 0.0};
    if (p.surface.kind == SurfaceKind::Euclidean) seed = {1.0, 0.0, 0.0};
    if (p.surface.kind == SurfaceKind::Spherical && std::abs(p.coords.y) >= 0.9)
        seed = {0.0, 0.0, 1.0};
    Vec3 u = tangent_project(p, seed);
    u = u / std::sqrt(metric_dot(p.surface, u, u));
    return {p, {p, u}, {p, rotate90(p, u)}};
}

// ---------------------------------------------------------------------------
// Exponential map and friends
// ---------------------------------------------------------------------------

// Point at arc length |v| along the geodesic leaving v.base with velocity v.
// Closed forms: cosh(r) x + sinh(r) v/r on the hyperboloid,
// cos(r) x + sin(r) v/r on the sphere, x + v on the plane.
inline SurfacePoint exp_map(const TangentVector& v) {
    const SurfacePoint& x = v.base;
    double r = v.norm();
    switch (x.surface.kind) {
        case SurfaceKind::Hyperbolic: {
            if (r == 0.0) return project_to_surface(x.surface, x.coords);
            Vec3 c = std::cosh(r) * x.coords + (std::sinh(r) / r) * v.vec;
            return project_to_surface(x.surface, c);
        }
        case SurfaceKind::Spherical: {
            if (r >= kPi) detail::fail("exp_map: |v| >= pi exceeds the spherical injectivity radius");
            if (r == 0.0) return project_to_surface(x.surface, x.coords);
            Vec3 c = std::cos(r) * x.coords + (std::sin(r) / r) * v.vec;
            return project_to_surface(x.surface, c);
        }
        case SurfaceKind::Euclidean:
            return project_to_surface(x.surface, x.coords + v.vec);
    }
    detail::fail("exp_map: bad surface");
}

inline bool same_point(const SurfacePoint& a, const SurfacePoint& b, double tol = 1e-9) {
    return a.surface == b.surface && euclidean_norm(a.coords - b.coords) <= tol;
}

inline SurfacePoint exp_map(const SurfacePoint& x, const TangentVector& v) {
    if (!same_point(x, v.base))
        throw std::invalid_argument("exp_map: tangent vector is not based at the given point");
    return exp_map(v);
}

// Geodesic distance. Chordal formulations keep full accuracy near d = 0:
// Minkowski |p-q|^2 = 4 sinh^2(d/2) on the hyperboloid and the
// half-chord/half-cosine pair on the sphere.
inline double distance(const SurfacePoint& p, const SurfacePoint& q) {
    require_same_surface(p.surface, q.surface, "distance");
    Vec3 d = p.coords - q.coords;
    switch (p.surface.kind) {
        case SurfaceKind::Hyperbolic: {
            double c2 = mink_dot(d, d);
            return 2.0 * std::asinh(0.5 * std::sqrt(c2 > 0.0 ? c2 : 0.0));
        }
        case SurfaceKind::Spherical: {
            Vec3 s = p.coords + q.coords;
            return 2.0 * std::atan2(euclidean_norm(d), euclidean_norm(s));
        }
        case SurfaceKind::Euclidean:
            return euclidean_norm(d);
    }
    detail::fail("distance: bad surface");
}

// Inverse of exp_map. Spherical antipodal pairs are rejected (the inverse is
// not unique there). Small-angle safe: the radial direction is recovered by
// projecting p onto the tangent plane at x and the arc length through asinh /
// atan2 rather than acosh / acos.
inline TangentVector log_map(const SurfacePoint& x, const SurfacePoint& p) {
    require_same_surface(x.surface, p.surface, "log_map");
    switch (x.surface.kind) {
        case SurfaceKind::Hyperbolic: {
            Vec3 w = p.coords + mink_dot(x.coords, p.coords) * x.coords;
            double s2 = mink_dot(w, w);
            double s = s2 > 0.0 ? std::sqrt(s2) : 0.0;
            if (s == 0.0) return {x, {0.0, 0.0, 0.0}};
            double d = std::asinh(s);
            return {x, (d / s) * w};
        }
        case SurfaceKind::Spherical: {
            double c = dot(x.coords, p.coords);
            Vec3 w = p.coords - c * x.coords;
            double s = euclidean_norm(w);
            if (s < 1e-14) {
                if (c < 0.0) detail::fail("log_map: antipodal pair has no unique logarithm");
                return {x, {0.0, 0.0, 0.0}};
            }
            double d = std::atan2(s, c);
            return {x, (d / s) * w};
        }
        case SurfaceKind::Euclidean:
            return {x, {p.coords.x - x.coords.x, p.coords.y - x.coords.y, 0.0}};
    }
    detail::fail("log_map: bad surface");
}

// e^{i angle} . v in the oriented tangent plane; same base, same norm.
inline TangentVector rotate_tangent(const TangentVector& v, double angle) {
    Vec3 jv = rotate90(v.base, v.vec);
    return {v.base, std::cos(angle) * v.vec + std::sin(angle) * jv};
}

// Length of the geodesic circle of radius r: 2 pi sinh r / 2 pi sin r / 2 pi r.
inline double circle_circumference(double r, Surface s) {
    if (!(r > 0.0)) throw std::invalid_argument("circle_circumference: radius must be positive");
    switch (s.kind) {
        case SurfaceKind::Hyperbolic: return kTwoPi * std::sinh(r);
        case SurfaceKind::Spherical:
            if (r >= kPi) detail::fail("circle_circumference: spherical radius must be < pi");
            return kTwoPi * std::sin(r);
        case SurfaceKind::Euclidean: return kTwoPi * r;
    }
    detail::fail("circle_circumference: bad surface");
}

// Unit velocity of the geodesic t -> exp(x, t v) at t = 1, i.e. the parallel
// transport of v/|v| to the endpoint.
inline TangentVector geodesic_direction_at(const TangentVector& v) {
    double r = v.norm();
    if (r == 0.0) detail::fail("geodesic_direction_at: zero tangent vector has no direction");
    Vec3 vhat = v.vec / r;
    SurfacePoint p = exp_map(v);
    switch (v.surface().kind) {
        case SurfaceKind::Hyperbolic:
            return {p, tangent_project(p, std::sinh(r) * v.base.coords + std::cosh(r) * vhat)};
        case SurfaceKind::Spherical:
            return {p, tangent_project(p, -std::sin(r) * v.base.coords + std::cos(r) * vhat)};
        case SurfaceKind::Euclidean:
            return {p, vhat};
    }
    detail::fail("geodesic_direction_at: bad surface");
}

// Parallel transport of u along the geodesic t -> exp(x, t v) to t = 1.
// Decomposes u in the (v-hat, j v-hat) frame, which transports to
// (w_p, j w_p) at the endpoint.
inline TangentVector transport_along(const TangentVector& v, const TangentVector& u) {
    if (!same_point(v.base, u.base))
        throw std::invalid_argument("transport_along: vectors must share a base point");
    double r = v.norm();
    SurfacePoint p = exp_map(v);
    if (r == 0.0) return {p, u.vec};
    Vec3 vhat = v.vec / r;
    Vec3 jvhat = rotate90(v.base, vhat);
    Surface s = v.surface();
    double a = metric_dot(s, u.vec, vhat);
    double b = metric_dot(s, u.vec, jvhat);
    TangentVector w = geodesic_direction_at(v);
    return {p, a * w.vec + b * rotate90(p, w.vec)};
}

inline TangentVector parallel_transport(const SurfacePoint& x, const SurfacePoint& y,
                                        const TangentVector& u) {
    if (same_point(x, y, 1e-15)) return {y, u.vec};
    return transport_along(log_map(x, y), u);
}

// Differential of exp_map in a horizontal direction: the base point moves
// along w while v is transported parallelly. The radial component of w rides
// along unchanged; the orthogonal component is a Jacobi field with u'(0) = 0,
// which scales by cosh(|v|) (hyperbolic), cos(|v|) (spherical, vanishing at
// |v| = pi/2) or 1 (flat), rotated to j w_p.
inline TangentVector d_exp(const TangentVector& v, const TangentVector& w) {
    if (!same_point(v.base, w.base))
        throw std::invalid_argument("d_exp: perturbation must be based at the same point");
    double r = v.norm();
    if (r == 0.0) detail::fail("d_exp: differential is taken at v != 0");
    Vec3 vhat = v.vec / r;
    Vec3 jvhat = rotate90(v.base, vhat);
    Surface s = v.surface();
    double a = metric_dot(s, w.vec, vhat);
    double b = metric_dot(s, w.vec, jvhat);
    double factor = 1.0;
    if (s.kind == SurfaceKind::Hyperbolic) factor = std::cosh(r);
    if (s.kind == SurfaceKind::Spherical) factor = std::cos(r);
    TangentVector wp = geodesic_direction_at(v);
    return {wp.base, a * wp.vec + b * factor * rotate90(wp.base, wp.vec)};
}

// Oriented angle from u to w at their common base point, in [0, 2 pi).
inline double oriented_angle(const TangentVector& u, const TangentVector& w) {
    Surface s = u.surface();
    double c = metric_dot(s, u.vec, w.vec);
    double sn = metric_dot(s, rotate90(u.base, u.vec), w.vec);
    double a = std::atan2(sn, c);
    return a < 0.0 ? a + kTwoPi : a;
}

// Riemannian area form evaluated on two tangent vectors at the same point:
// omega(u, w) = <j u, w>. For the oriented frame (e1, e2 = j e1) this gives
// omega(e1, e2) = +1.
inline double area_form(const SurfacePoint& at, Vec3 u, Vec3 w) {
    return metric_dot(at.surface, rotate90(at, u), w);
}

inline SurfacePoint surface_origin(Surface s) {
    switch (s.kind) {
        case SurfaceKind::Hyperbolic: return {{1.0, 0.0, 0.0}, s};
        case SurfaceKind::Spherical: return {{0.0, 0.0, 1.0}, s};
        case SurfaceKind::Euclidean: return {{0.0, 0.0, 0.0}, s};
    }
    detail::fail("surface_origin: bad surface");
}

}  // namespace quadrille
