#pragma once

// Seeded random draws of surface points and tangent vectors, shared by the
// verification sweeps and the test suites.

#include <random>

#include "quadrille/geometry.hpp"
#include "quadrille/transform.hpp"

namespace quadrille {

template <class Rng>
TangentVector random_tangent(Rng& rng, const SurfacePoint& at, double min_norm, double max_norm) {
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::uniform_real_distribution<double> rad(min_norm, max_norm);
    FrameAtPoint f = frame_at(at);
    double a = ang(rng);
    double r = rad(rng);
    return {at, (r * std::cos(a)) * f.e1.vec + (r * std::sin(a)) * f.e2.vec};
}

template <class Rng>
TangentVector random_unit_tangent(Rng& rng, const SurfacePoint& at) {
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    FrameAtPoint f = frame_at(at);
    double a = ang(rng);
    return {at, std::cos(a) * f.e1.vec + std::sin(a) * f.e2.vec};
}

// Point at distance <= spread from the canonical origin.
template <class Rng>
SurfacePoint random_point(Rng& rng, Surface s, double spread) {
    return exp_map(random_tangent(rng, surface_origin(s), 0.0, spread));
}

// Uniform draw from the valid (theta, phi1, phi2) region, kept `margin` away
// from its boundary so that downstream trigonometry stays well conditioned.
template <class Rng>
AngleTriple random_valid_triple(Rng& rng, double margin = 1e-3) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    AngleTriple t;
    t.theta = margin + u01(rng) * (kPi - 4.0 * margin);
    t.phi1 = t.theta + margin + u01(rng) * (kPi - t.theta - 2.0 * margin);
    double lo = t.phi1 - t.theta + margin;
    double hi = kTwoPi - t.theta - margin;
    t.phi2 = lo + u01(rng) * (hi - lo);
    return t;
}

}  // namespace quadrille
