#pragma once

// The quadrilateral maps on a constant-curvature surface. F_phi sends a
// circle datum (x, v) to the pair (exp(x, v), exp(x, e^{i phi} v)); its
// inverse recovers the unique circle through an ordered pair subtending a
// prescribed oriented angle; composing F_{phi2} . R_theta . F_{phi1}^{-1}
// moves a point pair to the remaining two vertices of the cyclic
// quadrilateral of type (theta, phi1, phi2).

#include <array>
#include <complex>
#include <utility>

#include "quadrille/geometry.hpp"

namespace quadrille {

struct AngleTriple {
    double theta = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;

    // 0 < theta < phi1 <= pi and phi1 < phi2 + theta < 2 pi.
    bool valid() const {
        return 0.0 < theta && theta < phi1 && phi1 <= kPi && phi1 < phi2 + theta &&
               phi2 + theta < kTwoPi;
    }
};

inline void validate(const AngleTriple& t) {
    if (!t.valid())
        throw std::invalid_argument(
            "AngleTriple: need 0 < theta < phi1 <= pi and phi1 < phi2 + theta < 2 pi");
}

// Center plus nonzero radial vector: the geodesic circle through exp(x, v)
// with radius |v|. Spherical circles are restricted to |v| < pi/2.
struct CirclePair {
    SurfacePoint center;
    TangentVector radial;

    double radius() const { return radial.norm(); }
    bool degenerate() const { return radius() == 0.0; }
};

inline void validate(const CirclePair& cp) {
    validate(cp.radial);
    if (!same_point(cp.center, cp.radial.base))
        throw std::invalid_argument("CirclePair: radial vector is not based at the center");
    double r = cp.radius();
    if (r <= 0.0) detail::fail("CirclePair: radial vector must be nonzero");
    if (cp.center.surface.kind == SurfaceKind::Spherical && r >= kPi / 2.0)
        detail::fail("CirclePair: spherical radius must be < pi/2");
}

inline void require_phi_range(double phi, const char* where) {
    if (!(phi > 0.0 && phi < kTwoPi))
        throw std::invalid_argument(std::string(where) + ": phi must lie in (0, 2 pi)");
}

inline std::pair<SurfacePoint, SurfacePoint> f_phi(const CirclePair& cp, double phi) {
    require_phi_range(phi, "f_phi");
    return {exp_map(cp.radial), exp_map(rotate_tangent(cp.radial, phi))};
}

namespace detail {

// Circle radius r solving the isosceles relation for apex angle phi over a
// base chord of length d:
//   hyperbolic  cosh d = cosh^2 r - sinh^2 r cos phi
//   spherical   cos d  = cos^2 r  + sin^2 r  cos phi
//   euclidean   d = 2 r sin(phi/2)
inline double circumradius_from_chord(Surface s, double d, double phi) {
    double one_minus_cos = 2.0 * std::pow(std::sin(phi / 2.0), 2);
    switch (s.kind) {
        case SurfaceKind::Hyperbolic: {
            double sinh2 = 2.0 * std::pow(std::sinh(d / 2.0), 2) / one_minus_cos;
            return std::asinh(std::sqrt(sinh2));
        }
        case SurfaceKind::Spherical: {
            double sin2 = 2.0 * std::pow(std::sin(d / 2.0), 2) / one_minus_cos;
            if (sin2 >= 1.0 - 1e-14)
                fail("f_phi_inverse: no circle of radius < pi/2 fits the chord at this angle");
            return std::asin(std::sqrt(sin2));
        }
        case SurfaceKind::Euclidean:
            return 0.5 * d / std::sin(phi / 2.0);
    }
    fail("circumradius_from_chord: bad surface");
}

// Distance from the chord midpoint to the circle center (right triangle with
// hypotenuse r and leg d/2).
inline double center_offset(Surface s, double r, double half_d) {
    switch (s.kind) {
        case SurfaceKind::Hyperbolic: {
            double c = std::cosh(r) / std::cosh(half_d);
            return std::acosh(c < 1.0 ? 1.0 : c);
        }
        case SurfaceKind::Spherical: {
            double c = std::cos(r) / std::cos(half_d);
            return std::acos(c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c));
        }
        case SurfaceKind::Euclidean: {
            double t = r * r - half_d * half_d;
            return std::sqrt(t > 0.0 ? t : 0.0);
        }
    }
    fail("center_offset: bad surface");
}

}  // namespace detail

// Unique circle datum (x, v) with F_phi(x, v) = (p, q). The radius comes in
// closed form from the law of cosines; the center sits on the perpendicular
// bisector of pq, on the side whose oriented angle from log_x p to log_x q
// equals +phi. Both sides are tested and the winner is polished by a 1-D
// Newton iteration on the bisector parameter until the angle residual drops
// below 1e-11.
inline CirclePair f_phi_inverse(const SurfacePoint& p, const SurfacePoint& q, double phi) {
    require_same_surface(p.surface, q.surface, "f_phi_inverse");
    require_phi_range(phi, "f_phi_inverse");
    const Surface s = p.surface;
    const double d = distance(p, q);
    if (d < 1e-12) detail::fail("f_phi_inverse: p = q admits a continuum of circles");
    if (s.kind == SurfaceKind::Spherical && d >= kPi - 1e-12)
        detail::fail("f_phi_inverse: antipodal pair excluded (D_A)");

    const SurfacePoint m = exp_map({p, 0.5 * log_map(p, q).vec});

    if (std::abs(phi - kPi) < 1e-12) {
        return {m, log_map(m, p)};
    }

    const double r = detail::circumradius_from_chord(s, d, phi);
    const double s0 = detail::center_offset(s, r, 0.5 * d);
    TangentVector u = log_map(m, p);
    u.vec = u.vec / u.norm();
    const TangentVector n = rotate90(u);

    auto angle_residual = [&](double t) {
        SurfacePoint x = exp_map({m, t * n.vec});
        double alpha = oriented_angle(log_map(x, p), log_map(x, q));
        return wrap_pm_pi(alpha - phi);
    };

    const double g_plus = angle_residual(s0);
    const double g_minus = angle_residual(-s0);
    if (s0 > 1e-9 && std::abs(g_plus) < 1e-11 && std::abs(g_minus) < 1e-11)
        detail::fail("f_phi_inverse: orientation is ambiguous");
    double t = std::abs(g_plus) <= std::abs(g_minus) ? s0 : -s0;
    double g = std::abs(g_plus) <= std::abs(g_minus) ? g_plus : g_minus;

    const double h = 1e-7;
    for (int it = 0; it < 30 && std::abs(g) > 1e-13; ++it) {
        double slope = (angle_residual(t + h) - angle_residual(t - h)) / (2.0 * h);
        if (slope == 0.0) break;
        t -= g / slope;
        g = angle_residual(t);
    }

    SurfacePoint x = exp_map({m, t * n.vec});
    CirclePair out{x, log_map(x, p)};
    if (std::abs(g) >= 1e-11) {
        // Short chords pin the angle only to ~eps/d; fall back to the map
        // contract itself, which discriminates the two sides at every scale.
        auto [rp, rq] = f_phi(out, phi);
        if (distance(rp, p) > 1e-10 || distance(rq, q) > 1e-10)
            detail::fail("f_phi_inverse: failed to meet the oriented-angle residual");
    }
    return out;
}

// (p', q') = F_{phi2}(R_theta(F_{phi1}^{-1}(p, q))): the remaining vertices
// of the type-(theta, phi1, phi2) quadrilateral through p and q.
inline std::pair<SurfacePoint, SurfacePoint> quad_map(const SurfacePoint& p, const SurfacePoint& q,
                                                      const AngleTriple& t) {
    validate(t);
    if (distance(p, q) < 1e-8)
        detail::fail("quad_map: inputs within the diagonal guard (distance < 1e-8)");
    CirclePair cp = f_phi_inverse(p, q, t.phi1);
    return {exp_map(rotate_tangent(cp.radial, t.theta)),
            exp_map(rotate_tangent(cp.radial, t.theta + t.phi2))};
}

// The four vertices exp(x, e^{i alpha} v) for alpha in {0, theta, phi1,
// phi2 + theta}, in this order.
inline std::array<SurfacePoint, 4> quad_vertices(const CirclePair& cp, const AngleTriple& t) {
    validate(t);
    validate(cp);
    return {exp_map(cp.radial), exp_map(rotate_tangent(cp.radial, t.theta)),
            exp_map(rotate_tangent(cp.radial, t.phi1)),
            exp_map(rotate_tangent(cp.radial, t.phi2 + t.theta))};
}

// Complex scalars by which the derivative of the quadrilateral map acts on
// the anti-diagonal direction (w, -w) at a diagonal point, identifying each
// tangent plane with C:
//   ((1 + e^{i phi1} - 2 e^{i theta}) / (e^{i phi1} - 1),
//    (1 + e^{i phi1} - 2 e^{i (theta + phi2)}) / (e^{i phi1} - 1)).
inline std::pair<std::complex<double>, std::complex<double>> diagonal_multipliers(double theta,
                                                                                  double phi1,
                                                                                  double phi2) {
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    C denom = std::exp(i * phi1) - 1.0;
    if (std::abs(denom) < 1e-14)
        throw std::invalid_argument("diagonal_multipliers: phi1 = 0 mod 2 pi is singular");
    C common = 1.0 + std::exp(i * phi1);
    return {(common - 2.0 * std::exp(i * theta)) / denom,
            (common - 2.0 * std::exp(i * (theta + phi2))) / denom};
}

}  // namespace quadrille
