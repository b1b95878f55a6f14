#pragma once

// Shared curve fixtures: geodesic circles, Fourier-perturbed circles and a
// planar ellipse, built through the spec machinery. Framework-free so both
// the unit suites and the acceptance binary can use them.

#include <random>

#include "quadrille/curve_spec.hpp"

namespace qt {

using namespace quadrille;

inline SampledCurve hyperbolic_circle(double disk_radius = 0.5, int samples = 1024) {
    CurveSpec spec;
    spec.surface = Surface::hyperbolic();
    spec.chart = Chart::PoincareDisk;
    spec.family = CurveFamily::Circle;
    spec.radius = disk_radius;
    spec.samples = samples;
    return build_curve(spec);
}

// The perturbed disk circle r(t) = base + cos3 * cos(3 * 2 pi t) + ...
inline SampledCurve hyperbolic_flower(std::vector<double> cos_coeffs,
                                      std::vector<double> sin_coeffs = {},
                                      double base = 0.5, int samples = 1024) {
    CurveSpec spec;
    spec.surface = Surface::hyperbolic();
    spec.chart = Chart::PoincareDisk;
    spec.family = CurveFamily::FourierRadial;
    spec.base_radius = base;
    spec.cos_coeffs = std::move(cos_coeffs);
    spec.sin_coeffs = std::move(sin_coeffs);
    spec.samples = samples;
    return build_curve(spec);
}

inline SampledCurve sphere_latitude(double stereo_radius = 0.5, int samples = 1024) {
    CurveSpec spec;
    spec.surface = Surface::spherical();
    spec.chart = Chart::Stereographic;
    spec.family = CurveFamily::Circle;
    spec.radius = stereo_radius;
    spec.samples = samples;
    return build_curve(spec);
}

inline SampledCurve sphere_flower(std::vector<double> cos_coeffs,
                                  std::vector<double> sin_coeffs = {}, double base = 0.5,
                                  int samples = 1024) {
    CurveSpec spec;
    spec.surface = Surface::spherical();
    spec.chart = Chart::Stereographic;
    spec.family = CurveFamily::FourierRadial;
    spec.base_radius = base;
    spec.cos_coeffs = std::move(cos_coeffs);
    spec.sin_coeffs = std::move(sin_coeffs);
    spec.samples = samples;
    return build_curve(spec);
}

inline SampledCurve planar_ellipse(double a = 1.0, double b = 0.6, int samples = 1024) {
    CurveSpec spec;
    spec.surface = Surface::euclidean();
    spec.chart = Chart::Plane;
    spec.family = CurveFamily::PointList;
    spec.points.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = kTwoPi * i / samples;
        spec.points.push_back({a * std::cos(t), b * std::sin(t), 0.0});
    }
    return build_curve(spec);
}

// Random small perturbation of a circle, guaranteed simple.
template <class Rng>
SampledCurve random_flower(Rng& rng, Surface s, double base = 0.5, int harmonics = 3,
                           double amplitude = 0.04, int samples = 1024) {
    std::uniform_real_distribution<double> coeff(-amplitude, amplitude);
    std::vector<double> cs(harmonics), sn(harmonics);
    for (int k = 0; k < harmonics; ++k) {
        cs[k] = coeff(rng);
        sn[k] = coeff(rng);
    }
    CurveSpec spec;
    spec.surface = s;
    spec.chart = s.kind == SurfaceKind::Hyperbolic ? Chart::PoincareDisk : Chart::Stereographic;
    spec.family = CurveFamily::FourierRadial;
    spec.base_radius = base;
    spec.cos_coeffs = cs;
    spec.sin_coeffs = sn;
    spec.samples = samples;
    return build_curve(spec);
}

}  // namespace qt
