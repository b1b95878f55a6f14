#pragma once

// Rectangles as a Hamiltonian motion. On the sphere H(z, w) = -4 cos(d/2)
// (hyperbolic analogue +4 cosh(d/2)); its flow rotates the diameter (x, v)
// of a non-antipodal pair about the midpoint at unit angular rate, so the
// time-theta flow applied to a diagonal pair (p1, p3) produces the other two
// vertices of the type-theta rectangle. Both the closed form and a projected
// RK4 integration of the vector field are provided; the closed form is the
// oracle for the integrator.

#include <cmath>
#include <utility>

#include "quadrille/geometry.hpp"
#include "quadrille/transform.hpp"

namespace quadrille {

struct PairState {
    SurfacePoint p;
    SurfacePoint q;
};

inline constexpr double kAntipodalTol = 1e-9;

inline void validate(const PairState& s) {
    validate(s.p);
    validate(s.q);
    require_same_surface(s.p.surface, s.q.surface, "PairState");
    if (s.p.surface.kind == SurfaceKind::Spherical &&
        distance(s.p, s.q) >= kPi - kAntipodalTol)
        detail::fail("PairState: antipodal spherical pairs are excluded (D_A)");
}

// H = -4 cos(d/2) on the sphere, +4 cosh(d/2) on the hyperbolic plane.
inline double hamiltonian(const PairState& s) {
    require_same_surface(s.p.surface, s.q.surface, "hamiltonian");
    double d = distance(s.p, s.q);
    switch (s.p.surface.kind) {
        case SurfaceKind::Spherical:
            if (d >= kPi - kAntipodalTol)
                detail::fail("hamiltonian: antipodal spherical pair");
            return -4.0 * std::cos(d / 2.0);
        case SurfaceKind::Hyperbolic:
            return 4.0 * std::cosh(d / 2.0);
        case SurfaceKind::Euclidean:
            throw std::invalid_argument("hamiltonian: defined on the sphere and the hyperbolic plane");
    }
    detail::fail("hamiltonian: bad surface");
}

// The unique (x, v) with p = exp(x, v), q = exp(x, -v) and |v| = d/2 (< pi/2
// on the sphere). p = q yields the degenerate datum with v = 0.
inline CirclePair midpoint_axis(const PairState& s) {
    require_same_surface(s.p.surface, s.q.surface, "midpoint_axis");
    if (s.p.surface.kind == SurfaceKind::Spherical &&
        distance(s.p, s.q) >= kPi - kAntipodalTol)
        detail::fail("midpoint_axis: antipodal pair has no unique axis");
    SurfacePoint x = exp_map({s.p, 0.5 * log_map(s.p, s.q).vec});
    return {x, log_map(x, s.p)};
}

// psi_theta(p, q) = (exp(x, e^{i theta} v), exp(x, -e^{i theta} v)); diagonal
// pairs are fixed points.
inline PairState flow_closed_form(const PairState& s, double theta) {
    CirclePair cp = midpoint_axis(s);
    if (cp.degenerate()) return s;
    TangentVector v = rotate_tangent(cp.radial, theta);
    return {exp_map(v), exp_map({cp.center, -v.vec})};
}

// Hamiltonian vector field X_H(p, q) = (sin|v|/|v|) (j w_p, j w_q) with
// (w_p, w_q) the scaled radial velocities (sinh on the hyperbolic plane, the
// flat factor |v| in between): the diameter endpoints move tangentially to
// the geodesic circle at the circle's own speed.
inline std::pair<TangentVector, TangentVector> flow_field(const PairState& s) {
    CirclePair cp = midpoint_axis(s);
    double r = cp.radius();
    if (r < 1e-13) return {{s.p, {0, 0, 0}}, {s.q, {0, 0, 0}}};
    double speed = 0.0;
    switch (s.p.surface.kind) {
        case SurfaceKind::Spherical: speed = std::sin(r); break;
        case SurfaceKind::Hyperbolic: speed = std::sinh(r); break;
        case SurfaceKind::Euclidean: speed = r; break;
    }
    TangentVector up = geodesic_direction_at(cp.radial);
    TangentVector uq = geodesic_direction_at({cp.center, -cp.radial.vec});
    return {{up.base, speed * rotate90(up.base, up.vec)},
            {uq.base, speed * rotate90(uq.base, uq.vec)}};
}

// Classical fixed-step RK4 on the product surface in embedding coordinates,
// projecting back onto the surface at every stage. The chord d(p, q) is a
// first integral; the trajectory is asserted to stay clear of the antipodal
// set.
inline PairState flow_ode(const PairState& s, double theta, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("flow_ode: step must be positive");
    validate(s);
    if (theta == 0.0) return s;
    if (distance(s.p, s.q) < 1e-13) return s;

    const Surface surf = s.p.surface;
    auto project = [&](Vec3 cp_, Vec3 cq_) -> PairState {
        return {project_to_surface(surf, cp_), project_to_surface(surf, cq_)};
    };
    auto field = [&](const PairState& st) {
        auto [fp, fq] = flow_field(st);
        return std::pair<Vec3, Vec3>{fp.vec, fq.vec};
    };

    int n = static_cast<int>(std::ceil(std::abs(theta) / step));
    double h = theta / n;
    PairState y = s;
    for (int i = 0; i < n; ++i) {
        auto k1 = field(y);
        PairState y2 = project(y.p.coords + 0.5 * h * k1.first, y.q.coords + 0.5 * h * k1.second);
        auto k2 = field(y2);
        PairState y3 = project(y.p.coords + 0.5 * h * k2.first, y.q.coords + 0.5 * h * k2.second);
        auto k3 = field(y3);
        PairState y4 = project(y.p.coords + h * k3.first, y.q.coords + h * k3.second);
        auto k4 = field(y4);
        y = project(
            y.p.coords + (h / 6.0) * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first),
            y.q.coords + (h / 6.0) * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second));
        if (surf.kind == SurfaceKind::Spherical && distance(y.p, y.q) >= kPi - kAntipodalTol)
            detail::fail("flow_ode: trajectory approached the antipodal set (conservation broken)");
    }
    return y;
}

// (p2, p4) = psi_theta(p1, p3): the remaining vertices of the type-theta
// rectangle through the diagonal pair (p1, p3).
inline std::pair<SurfacePoint, SurfacePoint> rectangle_from_flow(const SurfacePoint& p1,
                                                                 const SurfacePoint& p3,
                                                                 double theta) {
    if (distance(p1, p3) < 1e-12)
        detail::fail("rectangle_from_flow: diagonal pair does not span a rectangle");
    PairState out = flow_closed_form({p1, p3}, theta);
    return {out.p, out.q};
}

}  // namespace quadrille
