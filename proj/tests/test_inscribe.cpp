#include "fixtures.hpp"
#include "helpers.hpp"
#include "quadrille/inscribe.hpp"

using namespace qt;

namespace {

const AngleTriple kSquare{kPi / 2.0, kPi, kPi};

bool near_param(double a, double b, double tol) { return param_circ_dist(a, b) < tol; }

}  // namespace

TEST_CASE("residual basics") {
    SampledCurve circle = hyperbolic_circle(0.5, 1024);
    AngleTriple t{kPi / 3.0, kPi / 2.0, kPi / 2.0};
    SECTION("vanishes along the circle family") {
        double offset = t.phi1 / kTwoPi;
        for (double s : {0.0, 0.21, 0.5, 0.83}) {
            auto [r1, r2] = residual(circle, s, s + offset, t);
            REQUIRE(std::abs(r1) < 1e-9);
            REQUIRE(std::abs(r2) < 1e-9);
        }
    }
    SECTION("is continuous away from the diagonal") {
        SampledCurve flower = hyperbolic_flower({0.0, 0.0, 0.05});
        double prev1 = 0.0, prev2 = 0.0;
        bool first = true;
        for (int i = 0; i <= 300; ++i) {
            double s = 0.3 + 1e-3 * i;
            auto [r1, r2] = residual(flower, s, s + 0.37, t);
            if (!first) {
                REQUIRE(std::abs(r1 - prev1) < 0.05);
                REQUIRE(std::abs(r2 - prev2) < 0.05);
            }
            prev1 = r1;
            prev2 = r2;
            first = false;
        }
    }
    SECTION("shift of the parameter origin permutes the residual consistently") {
        SampledCurve flower = hyperbolic_flower({0.01, 0.0, 0.04});
        SampledCurve shifted = shift_origin(flower, 128);
        double off = 128.0 / flower.size();
        for (double s : {0.11, 0.5}) {
            auto [a1, a2] = residual(flower, s + off, s + off + 0.3, t);
            auto [b1, b2] = residual(shifted, s, s + 0.3, t);
            REQUIRE(close(a1, b1, 1e-10));
            REQUIRE(close(a2, b2, 1e-10));
        }
    }
    SECTION("diagonal band is rejected") {
        REQUIRE_THROWS_AS(residual(circle, 0.4, 0.4 + 0.5e-4, t), std::domain_error);
    }
}

TEST_CASE("grid_scan") {
    AngleTriple t{kPi / 3.0, kPi / 2.0, kPi / 2.0};
    SECTION("circle yields the rotational family along t - s = const") {
        SampledCurve circle = hyperbolic_circle(0.5, 512);
        auto seeds = grid_scan(circle, t, 128);
        REQUIRE(static_cast<int>(seeds.size()) >= 64);
        double offset = t.phi1 / kTwoPi;
        int on_family = 0;
        for (const GridSeed& s : seeds)
            if (param_circ_dist(s.t - s.s, offset) < 2.5 / 128.0) ++on_family;
        REQUIRE(on_family >= static_cast<int>(seeds.size()) / 2);
    }
    SECTION("perturbed circle yields at least one candidate") {
        SampledCurve flower = hyperbolic_flower({0.0, 0.0, 0.05});
        REQUIRE_FALSE(grid_scan(flower, kSquare, 128).empty());
    }
    SECTION("grid too coarse is rejected, empty result is not an error") {
        SampledCurve circle = hyperbolic_circle(0.5, 512);
        REQUIRE_THROWS_AS(grid_scan(circle, t, 32), std::invalid_argument);
    }
}

TEST_CASE("refine") {
    SECTION("spec example: perturbed disk circle with the square triple") {
        SampledCurve flower = hyperbolic_flower({0.0, 0.0, 0.05});
        auto seeds = grid_scan(flower, kSquare, 128);
        REQUIRE_FALSE(seeds.empty());
        bool got = false;
        for (const GridSeed& seed : seeds) {
            RefineOutcome out = refine(flower, seed, kSquare);
            if (out.status == RefineOutcome::Status::Converged) {
                REQUIRE(out.inscription->residual < 1e-8);
                REQUIRE(validate_inscription(*out.inscription, flower).passed());
                got = true;
                break;
            }
        }
        REQUIRE(got);
    }
    SECTION("exact circle converges immediately from a family seed") {
        SampledCurve circle = hyperbolic_circle(0.5, 1024);
        AngleTriple t{0.9, 2.0, 2.4};
        GridSeed seed{0.13, 0.13 + t.phi1 / kTwoPi, 0.0, true};
        RefineOutcome out = refine(circle, seed, t);
        REQUIRE(out.status == RefineOutcome::Status::Converged);
        REQUIRE(out.iterations <= 2);
    }
    SECTION("diagonal seeds are rejected") {
        SampledCurve circle = hyperbolic_circle(0.5, 512);
        GridSeed seed{0.5, 0.5 + 0.5e-4, 0.0, false};
        RefineOutcome out = refine(circle, seed, kSquare);
        REQUIRE(out.status == RefineOutcome::Status::DiagonalCollapse);
    }
}

TEST_CASE("find_inscriptions on perturbed hyperbolic circles") {
    auto rng = make_rng(137);
    for (AngleTriple t : {kSquare, AngleTriple{kPi / 3, kPi / 2, kPi / 2}}) {
        SampledCurve curve = random_flower(rng, Surface::hyperbolic());
        SearchOptions opts;
        opts.grid = 128;
        opts.max_results = 8;
        auto found = find_inscriptions(curve, t, opts);
        INFO("theta=" << t.theta << " phi1=" << t.phi1);
        REQUIRE_FALSE(found.empty());
        for (const Inscription& ins : found) {
            REQUIRE(ins.residual < 1e-8);
            REQUIRE(validate_inscription(ins, curve).passed());
        }
    }
}

TEST_CASE("reparameterization invariance") {
    SampledCurve curve = hyperbolic_flower({0.02, 0.0, 0.04}, {0.0, 0.01});
    SearchOptions opts;
    opts.grid = 128;
    opts.max_results = 6;
    // shift by a whole number of grid cells so the scan sees the same field
    int shift = curve.size() / opts.grid * 5;
    SampledCurve shifted = shift_origin(curve, shift);
    double offset = static_cast<double>(shift) / curve.size();
    auto base = find_inscriptions(curve, kSquare, opts);
    auto moved = find_inscriptions(shifted, kSquare, opts);
    REQUIRE_FALSE(base.empty());
    REQUIRE(base.size() == moved.size());
    for (const Inscription& m : moved) {
        bool matched = false;
        for (const Inscription& b : base) {
            if (near_param(m.s1 + offset, b.s1, 1e-6) && near_param(m.s3 + offset, b.s3, 1e-6)) {
                matched = true;
                break;
            }
        }
        REQUIRE(matched);
    }
}

TEST_CASE("brute force oracle") {
    AngleTriple t{kPi / 3.0, kPi / 2.0, kPi / 2.0};
    SECTION("needs a dense grid") {
        SampledCurve circle = hyperbolic_circle(0.5, 512);
        REQUIRE_THROWS_AS(brute_force_oracle(circle, t, 128), std::invalid_argument);
    }
    SECTION("finds the rotational family on a circle") {
        SampledCurve circle = hyperbolic_circle(0.5, 512);
        auto minima = brute_force_oracle(circle, t, 256);
        REQUIRE(static_cast<int>(minima.size()) >= 4);
        double offset = t.phi1 / kTwoPi;
        for (const Inscription& m : minima)
            REQUIRE(param_circ_dist(m.s3 - m.s1, offset) < 2.0 / 256.0);
    }
    SECTION("agrees with refine on a perturbed circle") {
        SampledCurve flower = hyperbolic_flower({0.0, 0.0, 0.05});
        SearchOptions opts;
        opts.grid = 128;
        opts.max_results = 16;
        auto solver = find_inscriptions(flower, kSquare, opts);
        auto oracle = brute_force_oracle(flower, kSquare, 256);
        REQUIRE_FALSE(solver.empty());
        REQUIRE_FALSE(oracle.empty());
        for (const Inscription& s : solver) {
            bool matched = false;
            for (const Inscription& o : oracle)
                if (near_param(s.s1, o.s1, 1e-3) && near_param(s.s3, o.s3, 1e-3)) matched = true;
            REQUIRE(matched);
        }
    }
    SECTION("stable under resolution doubling") {
        SampledCurve flower = hyperbolic_flower({0.0, 0.0, 0.05});
        auto lo = brute_force_oracle(flower, kSquare, 256);
        auto hi = brute_force_oracle(flower, kSquare, 512);
        REQUIRE_FALSE(lo.empty());
        for (const Inscription& a : lo) {
            bool matched = false;
            for (const Inscription& b : hi)
                if (near_param(a.s1, b.s1, 1.0 / 256.0) && near_param(a.s3, b.s3, 1.0 / 256.0))
                    matched = true;
            REQUIRE(matched);
        }
    }
}

TEST_CASE("rectangle search on the sphere") {
    SECTION("latitude circle carries a rotational family") {
        SampledCurve lat = sphere_latitude(0.5, 512);
        SearchOptions opts;
        opts.grid = 128;
        opts.max_results = 4;
        auto found = rectangle_search_sphere(lat, kPi / 2.0, opts);
        REQUIRE_FALSE(found.empty());
        for (const Inscription& ins : found) REQUIRE(validate_inscription(ins, lat).passed());
    }
    SECTION("perturbed latitude circle, theta = pi/2") {
        auto rng = make_rng(139);
        SampledCurve curve = random_flower(rng, Surface::spherical());
        SearchOptions opts;
        opts.grid = 128;
        opts.max_results = 4;
        auto found = rectangle_search_sphere(curve, kPi / 2.0, opts);
        REQUIRE_FALSE(found.empty());
        for (const Inscription& ins : found) {
            REQUIRE(ins.residual < 1e-8);
            InscriptionReport rep = validate_inscription(ins, curve);
            REQUIRE(rep.passed());
            REQUIRE(close(ins.triple.phi1, kPi, 1e-15));
        }
    }
    SECTION("hypothesis violations error out before searching") {
        SampledCurve lat = sphere_latitude(0.5, 512);
        REQUIRE_THROWS_AS(rectangle_search_sphere(lat, 0.0), std::invalid_argument);
        REQUIRE_THROWS_AS(rectangle_search_sphere(lat, kPi), std::invalid_argument);
        SampledCurve hyp = hyperbolic_circle(0.5, 512);
        REQUIRE_THROWS_AS(rectangle_search_sphere(hyp, 1.0), std::invalid_argument);
        // the equator meets its own antipodal image
        SampledCurve equator = sphere_latitude(1.0, 512);
        REQUIRE_THROWS_AS(rectangle_search_sphere(equator, 1.0), std::domain_error);
    }
}

TEST_CASE("euclidean specialization: the square on an ellipse") {
    SampledCurve ellipse = planar_ellipse(1.0, 0.6, 1024);
    SearchOptions opts;
    opts.grid = 128;
    opts.max_results = 8;
    auto found = find_inscriptions(ellipse, kSquare, opts);
    REQUIRE_FALSE(found.empty());
    // the unique square inscribed in an axis-aligned ellipse has vertices
    // (+-s, +-s) with s = ab / sqrt(a^2 + b^2)
    double a = 1.0, b = 0.6;
    double s = a * b / std::hypot(a, b);
    for (const Inscription& ins : found) {
        REQUIRE(ins.residual < 1e-8);
        REQUIRE(validate_inscription(ins, ellipse).passed());
        for (double sp : {ins.s1, ins.s2, ins.s3, ins.s4}) {
            Vec3 v = curve_eval(ellipse, sp).coords;
            REQUIRE(close(std::abs(v.x), s, 1e-6));
            REQUIRE(close(std::abs(v.y), s, 1e-6));
        }
    }
}

TEST_CASE("validate_inscription catches corruption") {
    SampledCurve flower = hyperbolic_flower({0.0, 0.0, 0.05});
    SearchOptions opts;
    opts.grid = 128;
    opts.max_results = 1;
    auto found = find_inscriptions(flower, kSquare, opts);
    REQUIRE_FALSE(found.empty());
    Inscription good = found.front();
    REQUIRE(validate_inscription(good, flower).passed());

    Inscription jittered = good;
    jittered.s2 = detail::wrap_unit(jittered.s2 + 1e-4);
    REQUIRE_FALSE(validate_inscription(jittered, flower).passed());

    Inscription diagonal = good;
    diagonal.s2 = diagonal.s3 = diagonal.s4 = diagonal.s1;
    InscriptionReport rep = validate_inscription(diagonal, flower);
    REQUIRE_FALSE(rep.distinct);
    REQUIRE_FALSE(rep.passed());
}
