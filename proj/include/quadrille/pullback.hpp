#pragma once

// The 4x4 linear algebra behind the quadrilateral map: the matrix N of DI in
// the radial/rotated bases, the diagonal-form constant a, and the congruence
// K = N^T J_a N whose block shape certifies the pullback identity
// (a w1 + w2 pulls back to b w1 + c w2). A finite-difference verifier checks
// the same identity on the surface itself.

#include <cmath>
#include <random>

#include "quadrille/geometry.hpp"
#include "quadrille/sampling.hpp"
#include "quadrille/transform.hpp"

namespace quadrille {

struct Mat2 {
    double m[2][2]{};

    static Mat2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
    double* operator[](int i) { return m[i]; }
    const double* operator[](int i) const { return m[i]; }
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return r;
}

struct Mat4 {
    double m[4][4]{};

    static Mat4 identity() {
        Mat4 r;
        for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
        return r;
    }
    double* operator[](int i) { return m[i]; }
    const double* operator[](int i) const { return m[i]; }

    Mat4 transpose() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = m[j][i];
        return r;
    }
};

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += a.m[i][k] * b.m[k][j];
            r.m[i][j] = acc;
        }
    return r;
}

// Gauss-Jordan with partial pivoting.
inline Mat4 inverse(const Mat4& in) {
    double a[4][8];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            a[i][j] = in.m[i][j];
            a[i][j + 4] = i == j ? 1.0 : 0.0;
        }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-14) detail::fail("Mat4::inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < 8; ++j) std::swap(a[piv][j], a[col][j]);
        double inv = 1.0 / a[col][col];
        for (int j = 0; j < 8; ++j) a[col][j] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            double f = a[r][col];
            for (int j = 0; j < 8; ++j) a[r][j] -= f * a[col][j];
        }
    }
    Mat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.m[i][j] = a[i][j + 4];
    return out;
}

inline double determinant(const Mat4& in) {
    double a[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = in.m[i][j];
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < 4; ++j) std::swap(a[piv][j], a[col][j]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < 4; ++r) {
            double f = a[r][col] / a[col][col];
            for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

// r_phi = [[cos, sin], [-sin, cos]].
inline Mat2 rotation_mat(double phi) {
    double c = std::cos(phi), s = std::sin(phi);
    return {{{c, s}, {-s, c}}};
}

namespace detail {
inline void put_block(Mat4& out, int bi, int bj, const Mat2& b) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.m[2 * bi + i][2 * bj + j] = b.m[i][j];
}
}  // namespace detail

// A_phi1 = [[I, I], [I, r_phi1]].
inline Mat4 build_A(double phi1) {
    Mat4 a;
    detail::put_block(a, 0, 0, Mat2::identity());
    detail::put_block(a, 0, 1, Mat2::identity());
    detail::put_block(a, 1, 0, Mat2::identity());
    detail::put_block(a, 1, 1, rotation_mat(phi1));
    return a;
}

// M_(phi2, theta) = [[I, r_theta], [I, r_(theta + phi2)]].
inline Mat4 build_M(double phi2, double theta) {
    Mat4 m;
    detail::put_block(m, 0, 0, Mat2::identity());
    detail::put_block(m, 0, 1, rotation_mat(theta));
    detail::put_block(m, 1, 0, Mat2::identity());
    detail::put_block(m, 1, 1, rotation_mat(theta + phi2));
    return m;
}

// N = M_(phi2, theta) . A_phi1^{-1}: the matrix of DI in the bases
// <w_p, cosh|v| j w_p, w_q, cosh|v| j w_q>.
inline Mat4 build_N(const AngleTriple& t) {
    validate(t);
    return build_M(t.phi2, t.theta) * inverse(build_A(t.phi1));
}

// a = sin((phi2+theta)/2) sin((phi2+theta-phi1)/2)
//     / (sin(theta/2) sin((phi1-theta)/2)); nonzero on the validity window.
inline double compute_a(const AngleTriple& t) {
    validate(t);
    return std::sin((t.phi2 + t.theta) / 2.0) * std::sin((t.phi2 + t.theta - t.phi1) / 2.0) /
           (std::sin(t.theta / 2.0) * std::sin((t.phi1 - t.theta) / 2.0));
}

struct PullbackConstants {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double residual = 0.0;  // max abs deviation of K from [[bJ, 0], [0, cJ]]
};

// Builds J_a = diag(aJ, J), forms K = N^T J_a N, reads b and c off the
// antisymmetric blocks and measures the deviation from the block shape.
// The identity is exact, so a residual above 1e-9 means a broken build and
// throws.
inline PullbackConstants compute_constants(const AngleTriple& t) {
    PullbackConstants out;
    out.a = compute_a(t);
    Mat4 n = build_N(t);
    Mat4 ja;
    Mat2 j{{{0.0, 1.0}, {-1.0, 0.0}}};
    Mat2 aj{{{0.0, out.a}, {-out.a, 0.0}}};
    detail::put_block(ja, 0, 0, aj);
    detail::put_block(ja, 1, 1, j);
    Mat4 k = n.transpose() * (ja * n);
    out.b = k[0][1];
    out.c = k[2][3];
    Mat4 expected;
    detail::put_block(expected, 0, 0, Mat2{{{0.0, out.b}, {-out.b, 0.0}}});
    detail::put_block(expected, 1, 1, Mat2{{{0.0, out.c}, {-out.c, 0.0}}});
    for (int i = 0; i < 4; ++i)
        for (int jx = 0; jx < 4; ++jx)
            out.residual = std::max(out.residual, std::abs(k[i][jx] - expected[i][jx]));
    if (out.residual >= 1e-9)
        detail::fail("compute_constants: K deviates from block form; the build is broken");
    return out;
}

// A tangent vector to the product surface at (p, q).
struct ProductTangent {
    Vec3 at_p;
    Vec3 at_q;
};

// Central finite difference of quad_map along a product tangent; the result
// lives at (p', q') = I(p, q).
inline ProductTangent di_finite_difference(const SurfacePoint& p, const SurfacePoint& q,
                                           const AngleTriple& t, const ProductTangent& u,
                                           double h = 1e-5) {
    auto [pp, qq] = quad_map(p, q, t);
    auto plus = quad_map(exp_map({p, h * u.at_p}), exp_map({q, h * u.at_q}), t);
    auto minus = quad_map(exp_map({p, -h * u.at_p}), exp_map({q, -h * u.at_q}), t);
    return {(log_map(pp, plus.first).vec - log_map(pp, minus.first).vec) / (2.0 * h),
            (log_map(qq, plus.second).vec - log_map(qq, minus.second).vec) / (2.0 * h)};
}

// DI of the hyperbolic quadrilateral map expressed in the
// <w, cosh|v| jw> bases at (p, q) and (p', q'), computed entirely by finite
// differences. Agrees with build_N entrywise to ~1e-5.
inline Mat4 di_matrix_fd(const SurfacePoint& p, const SurfacePoint& q, const AngleTriple& t,
                         double h = 1e-5) {
    if (p.surface.kind != SurfaceKind::Hyperbolic)
        throw std::invalid_argument("di_matrix_fd: the matrix bases are hyperbolic");
    CirclePair cp = f_phi_inverse(p, q, t.phi1);
    double ch = std::cosh(cp.radius());

    auto radial_frame = [&](double alpha) {
        TangentVector w = geodesic_direction_at(rotate_tangent(cp.radial, alpha));
        return std::pair<TangentVector, Vec3>{w, rotate90(w.base, w.vec)};
    };
    auto [wp, jwp] = radial_frame(0.0);
    auto [wq, jwq] = radial_frame(t.phi1);
    auto [wpp, jwpp] = radial_frame(t.theta);
    auto [wqq, jwqq] = radial_frame(t.theta + t.phi2);

    const ProductTangent basis[4] = {{wp.vec, {0, 0, 0}},
                                     {ch * jwp, {0, 0, 0}},
                                     {{0, 0, 0}, wq.vec},
                                     {{0, 0, 0}, ch * jwq}};
    Surface s = p.surface;
    Mat4 n;
    for (int col = 0; col < 4; ++col) {
        ProductTangent d = di_finite_difference(p, q, t, basis[col], h);
        n[0][col] = metric_dot(s, d.at_p, wpp.vec);
        n[1][col] = metric_dot(s, d.at_p, jwpp) / ch;
        n[2][col] = metric_dot(s, d.at_q, wqq.vec);
        n[3][col] = metric_dot(s, d.at_q, jwqq) / ch;
    }
    return n;
}

struct PullbackGeometricReport {
    AngleTriple triple;
    PullbackConstants constants;
    int trials = 0;
    double max_rel_error = 0.0;
    double tolerance = 1e-4;  // second-order differences with step 1e-5

    bool passed() const { return max_rel_error < tolerance; }
};

// Checks (I^theta)* omega_a = b omega_1 + c omega_2 on the hyperbolic plane:
// for random base pairs and random product tangents u1, u2, both sides of
// omega_a(DI u1, DI u2) = b omega_1(u1, u2) + c omega_2(u1, u2) are
// evaluated, with DI taken by central finite differences of quad_map.
inline PullbackGeometricReport verify_pullback_geometric(const AngleTriple& t, int trials,
                                                         unsigned long long seed = 2024) {
    if (trials < 0) throw std::invalid_argument("verify_pullback_geometric: trials must be >= 0");
    PullbackGeometricReport rep;
    rep.triple = t;
    rep.constants = compute_constants(t);
    rep.trials = trials;

    std::mt19937_64 rng(seed);
    Surface s = Surface::hyperbolic();
    for (int i = 0; i < trials; ++i) {
        SurfacePoint p = random_point(rng, s, 1.0);
        SurfacePoint q = exp_map(random_tangent(rng, p, 0.1, 1.2));
        auto [pp, qq] = quad_map(p, q, t);
        ProductTangent u1{random_tangent(rng, p, 0.3, 1.0).vec, random_tangent(rng, q, 0.3, 1.0).vec};
        ProductTangent u2{random_tangent(rng, p, 0.3, 1.0).vec, random_tangent(rng, q, 0.3, 1.0).vec};
        ProductTangent d1 = di_finite_difference(p, q, t, u1);
        ProductTangent d2 = di_finite_difference(p, q, t, u2);
        double lhs = rep.constants.a * area_form(pp, d1.at_p, d2.at_p) +
                     area_form(qq, d1.at_q, d2.at_q);
        double rhs = rep.constants.b * area_form(p, u1.at_p, u2.at_p) +
                     rep.constants.c * area_form(q, u1.at_q, u2.at_q);
        double rel = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-8});
        rep.max_rel_error = std::max(rep.max_rel_error, rel);
    }
    return rep;
}

}  // namespace quadrille
