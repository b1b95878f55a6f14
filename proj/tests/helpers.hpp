#pragma once

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "quadrille/geometry.hpp"
#include "quadrille/sampling.hpp"

namespace qt {

using namespace quadrille;

inline const Surface kAllSurfaces[] = {Surface::hyperbolic(), Surface::spherical(),
                                       Surface::euclidean()};
inline const Surface kCurvedSurfaces[] = {Surface::hyperbolic(), Surface::spherical()};

inline std::mt19937_64 make_rng(unsigned long long seed = 0x5eed5eedULL) {
    return std::mt19937_64(seed);
}

inline double vec_dist(Vec3 a, Vec3 b) { return euclidean_norm(a - b); }

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace qt
