#pragma once

// Inscription search. A type-(theta, phi1, phi2) inscription corresponds to
// a zero of the 2-D residual (s, t) -> signed distances of the two
// quad_map images of (gamma(s), gamma(t)) to the curve, over the parameter
// torus minus a band around the diagonal (where the map degenerates to the
// identity and every pair is a trivial zero). Seeds come from a torus grid;
// a damped quasi-Newton drives the residual to ~1e-10; an independent
// brute-force sweep over sample pairs with a polyline distance serves as the
// oracle. Type-theta rectangles on the sphere use the Hamiltonian flow image
// instead of quad_map, with the same machinery.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "quadrille/curve.hpp"
#include "quadrille/flow.hpp"
#include "quadrille/transform.hpp"

namespace quadrille {

inline constexpr double kDiagonalBand = 1e-4;   // parameter half-width around s = t
inline constexpr double kDedupeTol = 1e-4;      // parameter tolerance for duplicates
inline constexpr double kResidualAccept = 1e-8;

struct Inscription {
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;  // curve parameters, vertex order
    CirclePair circle;
    AngleTriple triple;
    double residual = 0.0;
};

struct SearchOptions {
    int grid = 256;
    int max_seeds = 400;
    int max_results = 64;
    double coarse_threshold = 0.05;  // surface units, grid-minimum seeding
    int max_iterations = 50;
    int scan_foot_iterations = 20;   // golden-section steps per distance in the scan
    int refine_foot_iterations = 45; // and inside refinement / validation
};

namespace detail {

// Both search flavors reduce to "map a curve pair to two points that should
// land back on the curve".
using PairImage =
    std::function<std::pair<SurfacePoint, SurfacePoint>(const SurfacePoint&, const SurfacePoint&)>;

inline PairImage quad_pair_image(const AngleTriple& t) {
    return [t](const SurfacePoint& p, const SurfacePoint& q) { return quad_map(p, q, t); };
}

inline PairImage rect_pair_image(double theta) {
    return [theta](const SurfacePoint& p, const SurfacePoint& q) {
        PairState out = flow_closed_form({p, q}, theta);
        return std::pair<SurfacePoint, SurfacePoint>{out.p, out.q};
    };
}

struct ResidualValue {
    double r1 = 0.0, r2 = 0.0;
    bool valid = false;
    double norm() const { return std::max(std::abs(r1), std::abs(r2)); }
};

inline ResidualValue eval_residual(const SampledCurve& sc, const PairImage& image, double s,
                                   double t, int foot_iterations) {
    ResidualValue out;
    try {
        auto [a, b] = image(curve_eval(sc, s), curve_eval(sc, t));
        out.r1 = signed_distance(sc, a, foot_iterations);
        out.r2 = signed_distance(sc, b, foot_iterations);
        out.valid = true;
    } catch (const std::domain_error&) {
        out.valid = false;  // e.g. no admissible spherical circle for this pair
    }
    return out;
}

}  // namespace detail

// Signed distances of the two quad_map images to the curve; the root
// function of the inscription problem.
inline std::pair<double, double> residual(const SampledCurve& sc, double s, double t,
                                          const AngleTriple& triple) {
    if (param_circ_dist(s, t) <= kDiagonalBand)
        detail::fail("residual: (s, t) lies in the diagonal band");
    detail::ResidualValue v =
        detail::eval_residual(sc, detail::quad_pair_image(triple), s, t, 45);
    if (!v.valid) detail::fail("residual: quadrilateral map undefined for this pair");
    return {v.r1, v.r2};
}

struct GridSeed {
    double s = 0.0, t = 0.0;
    double score = 0.0;   // smallest corner residual norm of the cell
    bool sign_change = false;
};

namespace detail {

inline std::vector<GridSeed> scan_torus(const SampledCurve& sc, const PairImage& image,
                                        const SearchOptions& opts) {
    const int n = opts.grid;
    if (n < 64) throw std::invalid_argument("grid_scan: need a grid of at least 64");
    const double band = std::max(kDiagonalBand, 1.5 / n);

    std::vector<ResidualValue> grid(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double s = static_cast<double>(i) / n;
            double t = static_cast<double>(j) / n;
            if (param_circ_dist(s, t) <= band) continue;
            grid[i * n + j] = eval_residual(sc, image, s, t, opts.scan_foot_iterations);
        }
    }

    auto sign_changes = [](double a, double b, double c, double d) {
        double lo = std::min(std::min(a, b), std::min(c, d));
        double hi = std::max(std::max(a, b), std::max(c, d));
        return lo <= 0.0 && hi >= 0.0;
    };

    std::vector<GridSeed> seeds;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const ResidualValue& c00 = grid[i * n + j];
            const ResidualValue& c10 = grid[((i + 1) % n) * n + j];
            const ResidualValue& c01 = grid[i * n + (j + 1) % n];
            const ResidualValue& c11 = grid[((i + 1) % n) * n + (j + 1) % n];
            if (!c00.valid || !c10.valid || !c01.valid || !c11.valid) continue;
            double best = std::min(std::min(c00.norm(), c10.norm()),
                                   std::min(c01.norm(), c11.norm()));
            bool flips = sign_changes(c00.r1, c10.r1, c01.r1, c11.r1) &&
                         sign_changes(c00.r2, c10.r2, c01.r2, c11.r2);
            if (!flips && best >= opts.coarse_threshold) continue;
            GridSeed seed;
            seed.s = (i + 0.5) / n;
            seed.t = (j + 0.5) / n;
            seed.score = best;
            seed.sign_change = flips;
            seeds.push_back(seed);
        }
    }
    // sign-change cells first, then by residual size
    std::sort(seeds.begin(), seeds.end(), [](const GridSeed& a, const GridSeed& b) {
        if (a.sign_change != b.sign_change) return a.sign_change;
        return a.score < b.score;
    });
    if (static_cast<int>(seeds.size()) > opts.max_seeds) seeds.resize(opts.max_seeds);
    return seeds;
}

}  // namespace detail

// Candidate cells of the n x n torus grid: both residual components change
// sign across the cell corners, or a corner residual is already below the
// coarse threshold. May be empty.
inline std::vector<GridSeed> grid_scan(const SampledCurve& sc, const AngleTriple& triple, int n) {
    SearchOptions opts;
    opts.grid = n;
    opts.max_seeds = std::numeric_limits<int>::max();
    return detail::scan_torus(sc, detail::quad_pair_image(triple), opts);
}

struct RefineOutcome {
    enum class Status { Converged, NoConvergence, DiagonalCollapse, MapFailure };
    Status status = Status::NoConvergence;
    int iterations = 0;
    double residual = std::numeric_limits<double>::infinity();
    std::optional<Inscription> inscription;  // set iff status == Converged
};

namespace detail {

// Builds the full record once a root (s, t) is in hand: the circle datum,
// and the on-curve parameters of the two image vertices.
using Packager = std::function<Inscription(double s, double t, double resid)>;

inline Packager quad_packager(const SampledCurve& sc, const AngleTriple& t, int foot_iters) {
    return [&sc, t, foot_iters](double s, double u, double resid) {
        Inscription ins;
        CirclePair cp = f_phi_inverse(curve_eval(sc, s), curve_eval(sc, u), t.phi1);
        ins.s1 = s;
        ins.s3 = u;
        ins.s2 = nearest_parameter(sc, exp_map(rotate_tangent(cp.radial, t.theta)), foot_iters);
        ins.s4 = nearest_parameter(sc, exp_map(rotate_tangent(cp.radial, t.theta + t.phi2)),
                                   foot_iters);
        ins.circle = cp;
        ins.triple = t;
        ins.residual = resid;
        return ins;
    };
}

inline Packager rect_packager(const SampledCurve& sc, double theta, int foot_iters) {
    return [&sc, theta, foot_iters](double s, double u, double resid) {
        Inscription ins;
        PairState st{curve_eval(sc, s), curve_eval(sc, u)};
        CirclePair cp = midpoint_axis(st);
        PairState img = flow_closed_form(st, theta);
        ins.s1 = s;
        ins.s3 = u;
        ins.s2 = nearest_parameter(sc, img.p, foot_iters);
        ins.s4 = nearest_parameter(sc, img.q, foot_iters);
        ins.circle = cp;
        ins.triple = {theta, kPi, kPi};
        ins.residual = resid;
        return ins;
    };
}

inline RefineOutcome refine_root(const SampledCurve& sc, const PairImage& image,
                                 const Packager& package, double s, double t,
                                 const SearchOptions& opts) {
    RefineOutcome out;
    if (param_circ_dist(s, t) <= kDiagonalBand) {
        out.status = RefineOutcome::Status::DiagonalCollapse;
        return out;
    }
    const int iters = opts.refine_foot_iterations;
    ResidualValue f = eval_residual(sc, image, s, t, iters);
    if (!f.valid) {
        out.status = RefineOutcome::Status::MapFailure;
        return out;
    }

    const double h = 1e-7;
    int it = 0;
    for (; it < opts.max_iterations && f.norm() > 1e-11; ++it) {
        ResidualValue fs = eval_residual(sc, image, s + h, t, iters);
        ResidualValue ft = eval_residual(sc, image, s, t + h, iters);
        if (!fs.valid || !ft.valid) break;
        double j11 = (fs.r1 - f.r1) / h, j12 = (ft.r1 - f.r1) / h;
        double j21 = (fs.r2 - f.r2) / h, j22 = (ft.r2 - f.r2) / h;
        double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-18) break;
        double ds = (j22 * f.r1 - j12 * f.r2) / det;
        double dt = (-j21 * f.r1 + j11 * f.r2) / det;

        bool moved = false;
        for (double lambda = 1.0; lambda >= 1.0 / 64.0; lambda *= 0.5) {
            double ns = wrap_unit(s - lambda * ds);
            double nt = wrap_unit(t - lambda * dt);
            if (param_circ_dist(ns, nt) <= kDiagonalBand) continue;
            ResidualValue nf = eval_residual(sc, image, ns, nt, iters);
            if (nf.valid && nf.norm() < f.norm()) {
                s = ns;
                t = nt;
                f = nf;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    out.iterations = it;
    out.residual = f.norm();
    if (param_circ_dist(s, t) <= kDiagonalBand) {
        out.status = RefineOutcome::Status::DiagonalCollapse;
        return out;
    }
    if (f.norm() < kResidualAccept) {
        out.status = RefineOutcome::Status::Converged;
        out.inscription = package(s, t, f.norm());
    }
    return out;
}

}  // namespace detail

// Drives a grid seed to a residual below 1e-8 (usually far below) or reports
// why it cannot.
inline RefineOutcome refine(const SampledCurve& sc, const GridSeed& seed,
                            const AngleTriple& triple, const SearchOptions& opts = {}) {
    return detail::refine_root(sc, detail::quad_pair_image(triple),
                               detail::quad_packager(sc, triple, opts.refine_foot_iterations),
                               seed.s, seed.t, opts);
}

struct InscriptionReport {
    double max_center_deviation = 0.0;  // |d(x, vertex) - r|
    double max_angle_deviation = 0.0;   // oriented angles vs (0, theta, phi1, phi2+theta)
    double max_curve_distance = 0.0;    // circle vertices back to the curve
    double min_param_gap = 0.0;
    bool equidistant = false;
    bool angles_ok = false;
    bool on_curve = false;
    bool distinct = false;

    bool passed() const { return equidistant && angles_ok && on_curve && distinct; }
};

// Recomputes every invariant of an inscription from scratch: equidistance of
// the four curve points from the circle center, the oriented-angle pattern,
// the distance of the circle vertices back to the curve, and distinctness of
// the parameters.
inline InscriptionReport validate_inscription(const Inscription& ins, const SampledCurve& sc) {
    InscriptionReport rep;
    const double tol = 1e-8;
    double r = ins.circle.radius();
    const double sv[4] = {ins.s1, ins.s2, ins.s3, ins.s4};
    const double pattern[4] = {0.0, ins.triple.theta, ins.triple.phi1,
                               ins.triple.phi2 + ins.triple.theta};
    for (int i = 0; i < 4; ++i) {
        SurfacePoint pt = curve_eval(sc, sv[i]);
        rep.max_center_deviation =
            std::max(rep.max_center_deviation, std::abs(distance(ins.circle.center, pt) - r));
        double ang = oriented_angle(ins.circle.radial, log_map(ins.circle.center, pt));
        rep.max_angle_deviation =
            std::max(rep.max_angle_deviation, std::abs(wrap_pm_pi(ang - pattern[i])));
        SurfacePoint vert = exp_map(rotate_tangent(ins.circle.radial, pattern[i]));
        rep.max_curve_distance =
            std::max(rep.max_curve_distance, std::abs(signed_distance(sc, vert, 45)));
    }
    rep.min_param_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            rep.min_param_gap = std::min(rep.min_param_gap, param_circ_dist(sv[i], sv[j]));
    rep.equidistant = rep.max_center_deviation < tol;
    rep.angles_ok = rep.max_angle_deviation < tol;
    rep.on_curve = rep.max_curve_distance < tol;
    rep.distinct = rep.min_param_gap > 1e-6;
    return rep;
}

struct SearchStats {
    int seeds = 0;
    int converged = 0;
    int validated = 0;
    int duplicates = 0;
};

namespace detail {

inline bool duplicate_of(const Inscription& a, const std::vector<Inscription>& found) {
    for (const Inscription& b : found)
        if (param_circ_dist(a.s1, b.s1) < kDedupeTol && param_circ_dist(a.s3, b.s3) < kDedupeTol)
            return true;
    return false;
}

inline std::vector<Inscription> run_search(const SampledCurve& sc, const PairImage& image,
                                           const Packager& package, const SearchOptions& opts,
                                           SearchStats* stats) {
    SearchStats local;
    std::vector<Inscription> found;
    for (const GridSeed& seed : scan_torus(sc, image, opts)) {
        ++local.seeds;
        if (static_cast<int>(found.size()) >= opts.max_results) break;
        RefineOutcome out = refine_root(sc, image, package, seed.s, seed.t, opts);
        if (out.status != RefineOutcome::Status::Converged) continue;
        ++local.converged;
        Inscription ins = *out.inscription;
        if (duplicate_of(ins, found)) {
            ++local.duplicates;
            continue;
        }
        if (!validate_inscription(ins, sc).passed()) continue;
        ++local.validated;
        found.push_back(ins);
    }
    if (stats) *stats = local;
    return found;
}

}  // namespace detail

// Full pipeline: scan, refine, validate, deduplicate. Theorems guarantee at
// least one inscription for smooth embedded curves of every valid type;
// completeness holds only at grid resolution.
inline std::vector<Inscription> find_inscriptions(const SampledCurve& sc,
                                                  const AngleTriple& triple,
                                                  const SearchOptions& opts = {},
                                                  SearchStats* stats = nullptr) {
    validate(triple);
    return detail::run_search(sc, detail::quad_pair_image(triple),
                              detail::quad_packager(sc, triple, opts.refine_foot_iterations),
                              opts, stats);
}

// Type-theta rectangle search on a spherical curve disjoint from its
// antipodal image, via the Hamiltonian flow pair (p2, p4) = psi_theta(p1, p3).
inline std::vector<Inscription> rectangle_search_sphere(const SampledCurve& sc, double theta,
                                                        const SearchOptions& opts = {},
                                                        SearchStats* stats = nullptr) {
    if (sc.surface.kind != SurfaceKind::Spherical)
        throw std::invalid_argument("rectangle_search_sphere: curve must live on the sphere");
    if (!(theta > 0.0 && theta < kPi))
        throw std::invalid_argument("rectangle_search_sphere: theta must lie in (0, pi)");
    if (sc.diameter >= kPi)
        detail::fail(
            "rectangle_search_sphere: curve meets its antipodal image (diameter >= pi); "
            "the flow argument needs diameter < pi");
    return detail::run_search(sc, detail::rect_pair_image(theta),
                              detail::rect_packager(sc, theta, opts.refine_foot_iterations),
                              opts, stats);
}

// Independent check: sweeps all off-diagonal sample pairs, scoring by the
// polyline distance of the two image points, keeps grid-local minima below
// 3x the sample spacing and tightens each by bisecting pattern steps. Shares
// no machinery with grid_scan/refine beyond the maps themselves.
inline std::vector<Inscription> brute_force_oracle(const SampledCurve& sc,
                                                   const AngleTriple& triple, int n) {
    if (n < 256) throw std::invalid_argument("brute_force_oracle: need n >= 256");
    validate(triple);
    detail::PairImage image = detail::quad_pair_image(triple);

    std::vector<SurfacePoint> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = curve_eval(sc, static_cast<double>(i) / n);

    const double inf = std::numeric_limits<double>::infinity();
    auto cost_at = [&](double s, double t) {
        try {
            auto [a, b] = image(curve_eval(sc, s), curve_eval(sc, t));
            return std::max(polyline_distance(sc, a), polyline_distance(sc, b));
        } catch (const std::domain_error&) {
            return inf;
        }
    };

    double spacing = 0.0;
    for (int i = 0; i < sc.size(); ++i)
        spacing = std::max(spacing, distance(sc.points[i], sc.points[(i + 1) % sc.size()]));
    const double threshold = 3.0 * spacing;
    const int band_cells = std::max(2, static_cast<int>(kDiagonalBand * n) + 1);

    std::vector<double> cost(static_cast<std::size_t>(n) * n, inf);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int gap = std::min(std::abs(i - j), n - std::abs(i - j));
            if (gap <= band_cells) continue;
            try {
                auto [a, b] = image(pts[i], pts[j]);
                cost[i * n + j] = std::max(polyline_distance(sc, a), polyline_distance(sc, b));
            } catch (const std::domain_error&) {
            }
        }
    }

    std::vector<Inscription> minima;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double c = cost[i * n + j];
            if (c >= threshold) continue;
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    if (cost[((i + di + n) % n) * n + (j + dj + n) % n] < c) {
                        is_min = false;
                        break;
                    }
                }
            if (!is_min) continue;

            // local bisection: shrink a pattern step around the minimum
            double s = static_cast<double>(i) / n;
            double t = static_cast<double>(j) / n;
            double w = 1.0 / n;
            for (int round = 0; round < 30; ++round) {
                double bs = s, bt = t, bc = c;
                for (int di = -1; di <= 1; ++di)
                    for (int dj = -1; dj <= 1; ++dj) {
                        if (di == 0 && dj == 0) continue;
                        double cs = detail::wrap_unit(s + di * w);
                        double ct = detail::wrap_unit(t + dj * w);
                        if (param_circ_dist(cs, ct) <= kDiagonalBand) continue;
                        double cc = cost_at(cs, ct);
                        if (cc < bc) {
                            bs = cs;
                            bt = ct;
                            bc = cc;
                        }
                    }
                if (bc < c) {
                    s = bs;
                    t = bt;
                    c = bc;
                } else {
                    w *= 0.5;
                }
                if (w < 1e-12) break;
            }

            Inscription ins;
            try {
                ins = detail::quad_packager(sc, triple, 45)(s, t, c);
            } catch (const std::domain_error&) {
                continue;
            }
            if (!detail::duplicate_of(ins, minima)) minima.push_back(ins);
        }
    }
    return minima;
}

}  // namespace quadrille
