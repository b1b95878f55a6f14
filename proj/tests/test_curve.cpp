#include "fixtures.hpp"
#include "helpers.hpp"

using namespace qt;

TEST_CASE("sampled curve invariants") {
    SECTION("too few samples") {
        std::vector<SurfacePoint> pts(32, surface_origin(Surface::euclidean()));
        REQUIRE_THROWS_AS(make_sampled_curve(Surface::euclidean(), pts), std::invalid_argument);
    }
    SECTION("spacing bound") {
        // a 64-gon of radius 2 has edges ~0.2 > 0.1
        std::vector<SurfacePoint> pts;
        for (int i = 0; i < 64; ++i) {
            double t = kTwoPi * i / 64;
            pts.push_back({{2.0 * std::cos(t), 2.0 * std::sin(t), 0.0}, Surface::euclidean()});
        }
        REQUIRE_THROWS_AS(make_sampled_curve(Surface::euclidean(), pts), std::domain_error);
    }
    SECTION("self-intersection at sample resolution") {
        // figure-eight r = cos(2 theta) style lobes crossing at the origin
        std::vector<SurfacePoint> pts;
        int n = 512;
        for (int i = 0; i < n; ++i) {
            double t = kTwoPi * i / n;
            pts.push_back({{0.5 * std::sin(2.0 * t) * std::cos(t),
                            0.5 * std::sin(2.0 * t) * std::sin(t), 0.0},
                           Surface::euclidean()});
        }
        REQUIRE_THROWS(make_sampled_curve(Surface::euclidean(), pts));
    }
    SECTION("diameter and clearance") {
        SampledCurve sc = sphere_latitude(0.5, 256);
        double brute = 0.0;
        for (int i = 0; i < sc.size(); ++i)
            for (int j = i + 1; j < sc.size(); ++j)
                brute = std::max(brute, distance(sc.points[i], sc.points[j]));
        REQUIRE(sc.diameter == brute);
        REQUIRE(sc.antipodal_clearance() > 0.0);
        REQUIRE(sc.diameter < kPi);
    }
}

TEST_CASE("curve evaluation") {
    SampledCurve sc = hyperbolic_circle(0.5, 256);
    SECTION("interpolates the samples at the knots") {
        for (int i = 0; i < sc.size(); i += 17) {
            SurfacePoint p = curve_eval(sc, sc.params[i]);
            REQUIRE(vec_dist(p.coords, sc.points[i].coords) < 1e-12);
        }
    }
    SECTION("stays on the surface and on the circle") {
        SurfacePoint center = surface_origin(Surface::hyperbolic());
        double r = 2.0 * std::atanh(0.5);
        for (int i = 0; i < 200; ++i) {
            double s = i / 200.0;
            SurfacePoint p = curve_eval(sc, s);
            REQUIRE(on_surface(p));
            // fourth-order interpolation: ~2e-8 at 256 samples, 7e-11 at 1024
            REQUIRE(close(distance(center, p), r, 5e-8));
        }
    }
    SECTION("wraps periodically") {
        REQUIRE(vec_dist(curve_eval(sc, 0.25).coords, curve_eval(sc, 1.25).coords) < 1e-14);
        REQUIRE(vec_dist(curve_eval(sc, -0.75).coords, curve_eval(sc, 0.25).coords) < 1e-14);
    }
    SECTION("tangent matches finite differences") {
        for (double s : {0.1, 0.37, 0.777}) {
            TangentVector tan = curve_tangent(sc, s);
            REQUIRE(is_tangent(tan, 1e-9));
            double h = 1e-6;
            Vec3 fd = (log_map(tan.base, curve_eval(sc, s + h)).vec -
                       log_map(tan.base, curve_eval(sc, s - h)).vec) /
                      (2.0 * h);
            REQUIRE(vec_dist(tan.vec, fd) < 1e-5 * euclidean_norm(tan.vec));
        }
    }
}

TEST_CASE("point projection and signed distance") {
    auto rng = make_rng(131);
    for (const SampledCurve& sc :
         {hyperbolic_circle(0.5, 512), sphere_latitude(0.6, 512), planar_ellipse(1.0, 0.6, 512)}) {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        std::uniform_real_distribution<double> eps(1e-4, 0.05);
        for (int i = 0; i < 60; ++i) {
            double u0 = u01(rng);
            double off = eps(rng);
            TangentVector tan = curve_tangent(sc, u0);
            Vec3 normal = rotate90(tan.base, tan.vec / euclidean_norm(tan.vec));
            // metric-normalize the normal direction
            normal = normal / std::sqrt(metric_dot(sc.surface, normal, normal));
            SurfacePoint left = exp_map({tan.base, off * normal});
            SurfacePoint right = exp_map({tan.base, (-off) * normal});
            REQUIRE(close(signed_distance(sc, left), off, 1e-7));
            REQUIRE(close(signed_distance(sc, right), -off, 1e-7));
            double foot = nearest_parameter(sc, left);
            REQUIRE(param_circ_dist(foot, u0) < 1e-5);
            // polyline distance agrees up to the sampling error
            REQUIRE(close(polyline_distance(sc, left), off, 5e-4));
        }
    }
}

TEST_CASE("origin shift") {
    SampledCurve sc = hyperbolic_flower({0.0, 0.0, 0.05});
    SampledCurve shifted = shift_origin(sc, 64);
    double offset = 64.0 / sc.size();
    for (double s : {0.0, 0.2, 0.55, 0.9}) {
        REQUIRE(vec_dist(curve_eval(shifted, s).coords, curve_eval(sc, s + offset).coords) <
                1e-14);
    }
    REQUIRE(close(shifted.diameter, sc.diameter, 1e-15));
}
