#pragma once

#include "integer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace k3fib::num {

using cplx = std::complex<double>;
using Vec3c = std::array<cplx, 3>;

inline const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

struct C3Point {
    cplx x, y, z;

    cplx& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const cplx& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    double norm() const { return std::sqrt(std::norm(x) + std::norm(y) + std::norm(z)); }
    bool finite() const
    {
        for (int i = 0; i < 3; ++i)
            if (!std::isfinite((*this)[i].real()) || !std::isfinite((*this)[i].imag())) return false;
        return true;
    }

    // (Re x, Im x, Re y, Im y, Re z, Im z)
    Eigen::Matrix<double, 6, 1> real6() const
    {
        Eigen::Matrix<double, 6, 1> v;
        for (int i = 0; i < 3; ++i) {
            v(2 * i) = (*this)[i].real();
            v(2 * i + 1) = (*this)[i].imag();
        }
        return v;
    }
    static C3Point from_real6(const Eigen::Matrix<double, 6, 1>& v)
    {
        return {{v(0), v(1)}, {v(2), v(3)}, {v(4), v(5)}};
    }
};

struct FibrationParams {
    int p = 2, q = 3, r = 7;
    double a = 0;
    double theta = 0;
    double t = 1;

    int exponent(int i) const { return i == 0 ? p : (i == 1 ? q : r); }
    int M() const { return std::max({p, q, r}); }
    int m() const { return 30 * M(); }
    cplx target() const { return std::polar(1.0 / a, theta); }

    // bound of the Milnor-tube and symplectic checks: max{12M, m^2(m+3)}
    double tube_bound() const
    {
        double mm = m();
        return std::max(12.0 * M(), mm * mm * (mm + 3));
    }
    // bound of the domain Y checks: max{3^M, m^2(m+3)}
    double domain_bound() const
    {
        double mm = m();
        return std::max(std::pow(3.0, M()), mm * mm * (mm + 3));
    }

    static FibrationParams minimal(int p, int q, int r, double t = 1, double theta = 0)
    {
        if (p < 2 || q < 2 || r < 2)
            throw Error(ErrorKind::invalid_argument, "exponents must be >= 2");
        FibrationParams f{p, q, r, 0, theta, t};
        f.a = std::floor(std::max(f.tube_bound(), f.domain_bound())) + 1;
        return f;
    }

    // triples with M > 9 leave the range where doubles were checked
    bool precision_review() const { return M() > 9; }
};

struct NumericalConfig {
    double residual_tol = 1e-9;
    double rank_tol = 1e-6;
    double fd_step = 1e-6;
    int samples = 1000;
    unsigned long long seed = 42;
};

inline cplx ipow(cplx z, int n)
{
    cplx out = 1;
    for (int i = 0; i < n; ++i) out *= z;
    return out;
}

// ---- the polynomial f ----

inline cplx f_eval(const FibrationParams& P, const C3Point& pt)
{
    return ipow(pt.x, P.p) + ipow(pt.y, P.q) + ipow(pt.z, P.r) + P.a * pt.x * pt.y * pt.z;
}

inline Vec3c f_grad(const FibrationParams& P, const C3Point& pt)
{
    return {double(P.p) * ipow(pt.x, P.p - 1) + P.a * pt.y * pt.z,
            double(P.q) * ipow(pt.y, P.q - 1) + P.a * pt.z * pt.x,
            double(P.r) * ipow(pt.z, P.r - 1) + P.a * pt.x * pt.y};
}

inline Vec3c f_antigrad(const FibrationParams&, const C3Point&) { return {0.0, 0.0, 0.0}; }

// ---- bump function ----
// phi = 1 on [0,1/6], 0 on [1/2,inf). phi' is -K times a C^1 plateau: cubic smoothstep
// ramps of width W at both ends and a flat middle, so phi is C^2 with min phi' = -K.
namespace bumpdetail {
constexpr double s0 = 1.0 / 6.0, s1 = 0.5, W = 1.0 / 24.0;
constexpr double K = 1.0 / ((s1 - s0) - W); // 24/7
inline double ramp(double u) { return u * u * (3 - 2 * u); }
inline double ramp_int(double u) { return u * u * u - 0.5 * u * u * u * u; } // integral of ramp on [0,u]
} // namespace bumpdetail

inline double bump(double s)
{
    using namespace bumpdetail;
    if (!(s > s0)) return 1.0;
    if (s >= s1) return 0.0;
    double drop;
    if (s < s0 + W) drop = K * W * ramp_int((s - s0) / W);
    else if (s <= s1 - W) drop = K * W * 0.5 + K * (s - s0 - W);
    else drop = 1.0 - K * W * ramp_int((s1 - s) / W);
    return 1.0 - drop;
}

inline double bump_prime(double s)
{
    using namespace bumpdetail;
    if (!(s > s0) || s >= s1) return 0.0;
    if (s < s0 + W) return -K * ramp((s - s0) / W);
    if (s <= s1 - W) return -K;
    return -K * ramp((s1 - s) / W);
}

// phi_j = phi(sqrt(|other|^2 + |other'|^2) / |own|), j = 0,1,2 for x,y,z
inline double phi_arg(int j, const C3Point& pt)
{
    double own = std::abs(pt[j]);
    double rho = std::sqrt(std::norm(pt[(j + 1) % 3]) + std::norm(pt[(j + 2) % 3]));
    if (own == 0 && rho == 0) throw Error(ErrorKind::invalid_argument, "phi undefined at the origin");
    if (own == 0) return std::numeric_limits<double>::infinity();
    return rho / own;
}

inline double phi(int j, const C3Point& pt) { return bump(phi_arg(j, pt)); }

// Wirtinger derivatives d phi_j / d z_k; d/d zbar_k is the conjugate
inline Vec3c phi_grad(int j, const C3Point& pt)
{
    Vec3c g{0.0, 0.0, 0.0};
    double s = phi_arg(j, pt);
    double dp = std::isfinite(s) ? bump_prime(s) : 0.0;
    if (dp == 0) return g;
    const cplx own = pt[j];
    const double ao = std::abs(own);
    const double rho = s * ao;
    g[j] = dp * (-rho * std::conj(own) / (2 * ao * ao * ao));
    for (int k : {(j + 1) % 3, (j + 2) % 3}) g[k] = dp * std::conj(pt[k]) / (2 * rho * ao);
    return g;
}

inline Vec3c conj(const Vec3c& v) { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

inline double norm(const Vec3c& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2])); }

inline void require_not_origin(const C3Point& pt)
{
    if (pt.x == 0.0 && pt.y == 0.0 && pt.z == 0.0)
        throw Error(ErrorKind::invalid_argument, "point is the origin");
}

inline std::array<cplx, 3> monomials(const FibrationParams& P, const C3Point& pt)
{
    return {ipow(pt.x, P.p), ipow(pt.y, P.q), ipow(pt.z, P.r)};
}

// h = phi_1 x^p + phi_2 y^q + phi_3 z^r + a xyz
inline cplx h_eval(const FibrationParams& P, const C3Point& pt)
{
    require_not_origin(pt);
    auto mono = monomials(P, pt);
    cplx s = P.a * pt.x * pt.y * pt.z;
    for (int j = 0; j < 3; ++j) s += phi(j, pt) * mono[j];
    return s;
}

// f_t = (1-t) f + t h
inline cplx ft_eval(const FibrationParams& P, const C3Point& pt)
{
    require_not_origin(pt);
    auto mono = monomials(P, pt);
    cplx s = P.a * pt.x * pt.y * pt.z;
    for (int j = 0; j < 3; ++j) s += ((1 - P.t) + P.t * phi(j, pt)) * mono[j];
    return s;
}

struct Gradients {
    Vec3c hol;  // d/dz_k
    Vec3c anti; // d/dzbar_k
};

inline Gradients ft_gradients(const FibrationParams& P, const C3Point& pt)
{
    require_not_origin(pt);
    auto mono = monomials(P, pt);
    Gradients g{{P.a * pt.y * pt.z, P.a * pt.z * pt.x, P.a * pt.x * pt.y}, {0.0, 0.0, 0.0}};
    for (int j = 0; j < 3; ++j) {
        const int n = P.exponent(j);
        const double w = (1 - P.t) + P.t * phi(j, pt);
        g.hol[j] += w * double(n) * ipow(pt[j], n - 1);
        if (P.t == 0) continue;
        Vec3c dp = phi_grad(j, pt);
        for (int k = 0; k < 3; ++k) {
            g.hol[k] += P.t * mono[j] * dp[k];
            g.anti[k] += P.t * mono[j] * std::conj(dp[k]);
        }
    }
    return g;
}

inline Vec3c ft_grad(const FibrationParams& P, const C3Point& pt) { return ft_gradients(P, pt).hol; }
inline Vec3c ft_antigrad(const FibrationParams& P, const C3Point& pt) { return ft_gradients(P, pt).anti; }

inline Gradients h_gradients(FibrationParams P, const C3Point& pt)
{
    P.t = 1;
    return ft_gradients(P, pt);
}

// ---- g ----

inline cplx g_eval(const C3Point& pt)
{
    return std::norm(pt.x) + omega * std::norm(pt.y) + omega * omega * std::norm(pt.z);
}

inline Gradients g_gradients(const C3Point& pt)
{
    const cplx w[3] = {1.0, omega, omega * omega};
    Gradients g;
    for (int k = 0; k < 3; ++k) {
        g.hol[k] = w[k] * std::conj(pt[k]);
        g.anti[k] = w[k] * pt[k];
    }
    return g;
}

// ---- real-linear algebra ----

using Mat = Eigen::MatrixXd;

// 2x6 real Jacobian (rows Re, Im) of a function with Wirtinger derivatives G, H:
// dF/du = G + H, dF/dv = i (G - H)
inline Eigen::Matrix<double, 2, 6> real_jacobian(const Gradients& d)
{
    Eigen::Matrix<double, 2, 6> J;
    for (int k = 0; k < 3; ++k) {
        cplx du = d.hol[k] + d.anti[k];
        cplx dv = cplx(0, 1) * (d.hol[k] - d.anti[k]);
        J(0, 2 * k) = du.real();
        J(1, 2 * k) = du.imag();
        J(0, 2 * k + 1) = dv.real();
        J(1, 2 * k + 1) = dv.imag();
    }
    return J;
}

// orthonormal basis of the kernel of a full-rank k x 6 matrix
inline Mat kernel_basis(const Mat& J)
{
    Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeFullV);
    const int k = static_cast<int>(J.rows());
    return svd.matrixV().rightCols(6 - k);
}

// |f_t - target| relative to the size of the terms that cancel in it
inline double relative_residual(const FibrationParams& P, const C3Point& pt, cplx target)
{
    auto mono = monomials(P, pt);
    double scale = std::abs(target) + std::abs(P.a * pt.x * pt.y * pt.z);
    double msum = 0;
    for (auto& m : mono) msum += std::abs(m);
    scale = std::max(std::abs(target), std::abs(P.a * pt.x * pt.y * pt.z) + msum);
    return std::abs(ft_eval(P, pt) - target) / scale;
}

struct Projection {
    C3Point point;
    double residual = 0;
    int iterations = 0;
    bool converged = false;
};

// Newton along the minimum-norm direction J^T (J J^T)^{-1}; an optional sphere constraint |pt| = radius
inline Projection project_to_level(const FibrationParams& P, const C3Point& seed, cplx target,
                                   const NumericalConfig& cfg = {}, std::optional<double> radius = std::nullopt)
{
    require_not_origin(seed);
    if (!seed.finite()) throw Error(ErrorKind::invalid_argument, "seed is not finite");
    Projection out{seed, relative_residual(P, seed, target), 0, false};
    auto sphere_res = [&](const C3Point& pt) { return radius ? (pt.norm() - *radius) / *radius : 0.0; };
    auto merit = [&](const C3Point& pt) {
        double s = sphere_res(pt);
        return std::hypot(relative_residual(P, pt, target), s);
    };
    const double tol = cfg.residual_tol * 0.01;
    double cur = merit(seed);
    for (int it = 0; it < 50; ++it) {
        if (cur < tol) break;
        const C3Point& pt = out.point;
        const int rows = radius ? 3 : 2;
        Mat J(rows, 6);
        J.topRows(2) = real_jacobian(ft_gradients(P, pt));
        Eigen::VectorXd F(rows);
        cplx res = ft_eval(P, pt) - target;
        F(0) = res.real();
        F(1) = res.imag();
        if (radius) {
            J.row(2) = 2 * pt.real6().transpose();
            F(2) = pt.norm() * pt.norm() - *radius * *radius;
        }
        Eigen::VectorXd step = -J.transpose() * (J * J.transpose()).ldlt().solve(F);
        double lam = 1;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls, lam *= 0.5) {
            C3Point cand = C3Point::from_real6(pt.real6() + lam * step);
            if (!cand.finite() || (cand.x == 0.0 && cand.y == 0.0 && cand.z == 0.0)) continue;
            double m = merit(cand);
            if (m < cur) {
                out.point = cand;
                cur = m;
                moved = true;
                break;
            }
        }
        out.iterations = it + 1;
        if (!moved) break;
    }
    out.residual = relative_residual(P, out.point, target);
    out.converged = out.residual < cfg.residual_tol && std::abs(sphere_res(out.point)) < cfg.residual_tol;
    return out;
}

// ---- critical points of g on X_t ----

struct CriticalCheck {
    C3Point point;
    int axis = 0;
    double residual = 0;
    double rank_ratio = 0;
    bool on_level = false;
    bool rank_deficient = false;
    bool ok() const { return on_level && rank_deficient; }
};

// (a^{-1/p} e^{i theta/p} u_p^j, 0, 0), then the y- and z-axis families
inline std::vector<std::pair<C3Point, int>> critical_points_closed_form(const FibrationParams& P)
{
    std::vector<std::pair<C3Point, int>> out;
    for (int axis = 0; axis < 3; ++axis) {
        const int n = P.exponent(axis);
        const double mod = std::pow(P.a, -1.0 / n);
        for (int j = 0; j < n; ++j) {
            C3Point pt{0.0, 0.0, 0.0};
            pt[axis] = std::polar(mod, (P.theta + 2 * std::numbers::pi * j) / n);
            out.emplace_back(pt, axis);
        }
    }
    return out;
}

// rank ratio = sigma_min(dg restricted to T X_t) / sigma_max(dg on C^3)
inline double rank_deficiency_ratio(const FibrationParams& P, const C3Point& pt)
{
    Mat Jf = real_jacobian(ft_gradients(P, pt));
    Mat B = kernel_basis(Jf);
    Mat Jg = real_jacobian(g_gradients(pt));
    Eigen::JacobiSVD<Mat> full(Jg);
    Eigen::JacobiSVD<Mat> red(Jg * B);
    double big = full.singularValues()(0);
    if (big == 0) return std::numeric_limits<double>::infinity();
    return red.singularValues()(red.singularValues().size() - 1) / big;
}

inline CriticalCheck verify_critical_point(const FibrationParams& P, const C3Point& pt, const NumericalConfig& cfg = {})
{
    CriticalCheck c;
    c.point = pt;
    double best = -1;
    for (int i = 0; i < 3; ++i)
        if (std::abs(pt[i]) > best) {
            best = std::abs(pt[i]);
            c.axis = i;
        }
    c.residual = relative_residual(P, pt, P.target());
    c.rank_ratio = rank_deficiency_ratio(P, pt);
    c.on_level = c.residual < cfg.residual_tol;
    c.rank_deficient = c.rank_ratio < cfg.rank_tol;
    return c;
}

inline std::vector<CriticalCheck> critical_points(const FibrationParams& P, const NumericalConfig& cfg = {})
{
    std::vector<CriticalCheck> out;
    for (auto& [pt, axis] : critical_points_closed_form(P)) {
        auto c = verify_critical_point(P, pt, cfg);
        c.axis = axis;
        out.push_back(c);
    }
    return out;
}

// closed-form critical value on each axis: a^{-2/n} omega^axis
inline cplx critical_value(const FibrationParams& P, int axis)
{
    const cplx w[3] = {1.0, omega, omega * omega};
    return std::pow(P.a, -2.0 / P.exponent(axis)) * w[axis];
}

// ---- Hessian model ----

struct HessianModel {
    double lambda = 0;
    Eigen::Matrix4d A, B, P, PtAP, PtBP, PtAP_expected, PtBP_expected;
    double max_error = 0;
    bool ok = false;
};

inline double lefschetz_lambda(int n, double a) { return (2.0 / n) * std::pow(a, (2.0 * n - 3) / n); }

inline HessianModel hessian_model(int n, double a)
{
    if (n < 2) throw Error(ErrorKind::invalid_argument, "exponent must be >= 2");
    HessianModel h;
    const double l = h.lambda = lefschetz_lambda(n, a);
    const double r3 = std::sqrt(3.0);
    h.A << -1, 0, -l, 0,
        0, -1, 0, l,
        -l, 0, -1, 0,
        0, l, 0, -1;
    h.B = r3 * Eigen::Vector4d(1, 1, -1, -1).asDiagonal();
    h.P << 1, 1, 0, 0,
        0, 0, 1, 1,
        -1, 1, 0, 0,
        0, 0, 1, -1;
    h.P /= std::sqrt(2.0);
    h.PtAP = h.P.transpose() * h.A * h.P;
    h.PtBP = h.P.transpose() * h.B * h.P;
    h.PtAP_expected = Eigen::Vector4d(l - 1, -l - 1, l - 1, -l - 1).asDiagonal();
    h.PtBP_expected << 0, 1, 0, 0,
        1, 0, 0, 0,
        0, 0, 0, 1,
        0, 0, 1, 0;
    h.PtBP_expected *= r3;
    double scale = std::max(1.0, l);
    h.max_error = std::max((h.PtAP - h.PtAP_expected).cwiseAbs().maxCoeff(),
                           (h.PtBP - h.PtBP_expected).cwiseAbs().maxCoeff()) / scale;
    h.ok = h.max_error < 1e-12;
    return h;
}

struct HessianCheck {
    int axis = 0;
    double lambda = 0;
    Eigen::Matrix4d fd_re, fd_im, model_re, model_im;
    Eigen::Vector4d fd_grad_re, fd_grad_im;
    double residual = 0;
    double rel_error = 0;    // Frobenius, relative to the model
    double entry_error = 0;  // max entrywise error relative to max(1, |entry|)
    double grad_ratio = 0;   // |gradient| / (|Hessian| * chart radius)
    double step = 0;
    bool ok = false;
};

// 2-jet of g on X_t at a point near a coordinate axis, in the chart (v, w) with
// Y = Y0 + v, Z = Z0 + w X0^{n-2} / (conj(X0) |X0|^{n-3}) and X solved from f_t = target.
inline HessianCheck hessian_fd_check(const FibrationParams& P, const C3Point& pt, const NumericalConfig& cfg = {})
{
    HessianCheck rep;
    double best = -1;
    for (int i = 0; i < 3; ++i)
        if (std::abs(pt[i]) > best) {
            best = std::abs(pt[i]);
            rep.axis = i;
        }
    const int m = rep.axis;
    const int iY = (m + 1) % 3, iZ = (m + 2) % 3;
    const int n = P.exponent(m), nY = P.exponent(iY), nZ = P.exponent(iZ);
    const cplx X0 = pt[m], Y0 = pt[iY], Z0 = pt[iZ];
    const double aX = std::abs(X0);
    const cplx cw = ipow(X0, n - 2) / (std::conj(X0) * std::pow(aX, n - 3));
    const cplx target = P.target();
    const double u = 1 - P.t;
    rep.residual = relative_residual(P, pt, target);

    std::vector<double> binom(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) binom[k] = binom[k - 1] * (n - k + 1) / k;
    auto power_diff = [](cplx b, cplx d, int e) {
        // (b + d)^e - b^e without cancellation
        cplx s = 0, dp = 1;
        double c = 1;
        for (int k = 1; k <= e; ++k) {
            c = c * (e - k + 1) / k;
            dp *= d;
            s += c * ipow(b, e - k) * dp;
        }
        return s;
    };
    const cplx base = (ipow(X0, n) - target) + u * (ipow(Y0, nY) + ipow(Z0, nZ)) + P.a * X0 * Y0 * Z0;
    const cplx wrot[3] = {1.0, omega, omega * omega};

    // g(chart(v,w)) - g(pt)
    auto G = [&](double v1, double v2, double w1, double w2) {
        const cplx v(v1, v2), dz = cplx(w1, w2) * cw;
        const cplx Y = Y0 + v, Z = Z0 + dz;
        const cplx dYZ = Y0 * dz + v * Z0 + v * dz;
        const cplx rest = base + u * (power_diff(Y0, v, nY) + power_diff(Z0, dz, nZ)) + P.a * X0 * dYZ;
        cplx s = 0;
        for (int it = 0; it < 60; ++it) {
            cplx E = rest + P.a * s * Y * Z, dE = P.a * Y * Z, sp = 1;
            for (int k = 1; k <= n; ++k) {
                E += binom[k] * ipow(X0, n - k) * sp * s;
                dE += binom[k] * k * ipow(X0, n - k) * sp;
                sp *= s;
            }
            cplx ds = E / dE;
            s -= ds;
            if (std::abs(ds) <= 1e-17 * std::abs(s)) break;
        }
        const double dX = 2 * (std::conj(X0) * s).real() + std::norm(s);
        const double dY = 2 * (std::conj(Y0) * v).real() + std::norm(v);
        const double dZ = 2 * (std::conj(Z0) * dz).real() + std::norm(dz);
        return wrot[m] * (dX + omega * dY + omega * omega * dZ);
    };

    const double radius = std::sqrt(n * std::pow(aX, n - 1) / P.a);
    const double h = 1e-4 * radius;
    rep.step = h;
    auto eval = [&](const Eigen::Vector4d& x) { return G(x(0), x(1), x(2), x(3)); };
    Eigen::Matrix<cplx, 4, 4> H;
    Eigen::Matrix<cplx, 4, 1> grad;
    const cplx g0 = eval(Eigen::Vector4d::Zero());
    for (int i = 0; i < 4; ++i) {
        Eigen::Vector4d ei = Eigen::Vector4d::Zero();
        ei(i) = h;
        cplx gp = eval(ei), gm = eval(-ei);
        grad(i) = (gp - gm) / (2 * h);
        H(i, i) = (gp - 2.0 * g0 + gm) / (h * h);
        for (int j = i + 1; j < 4; ++j) {
            Eigen::Vector4d ej = Eigen::Vector4d::Zero();
            ej(j) = h;
            H(i, j) = H(j, i) = (eval(ei + ej) - eval(ei - ej) - eval(-ei + ej) + eval(-ei - ej)) / (4 * h * h);
        }
    }
    rep.fd_re = H.real();
    rep.fd_im = H.imag();
    rep.fd_grad_re = grad.real();
    rep.fd_grad_im = grad.imag();

    HessianModel model = hessian_model(n, P.a);
    rep.lambda = model.lambda;
    const cplx rot = wrot[m];
    rep.model_re = rot.real() * model.A - rot.imag() * model.B;
    rep.model_im = rot.imag() * model.A + rot.real() * model.B;

    const double model_norm = std::sqrt(rep.model_re.squaredNorm() + rep.model_im.squaredNorm());
    rep.rel_error = std::sqrt((rep.fd_re - rep.model_re).squaredNorm() + (rep.fd_im - rep.model_im).squaredNorm()) / model_norm;
    double ee = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            ee = std::max(ee, std::abs(rep.fd_re(i, j) - rep.model_re(i, j)) / std::max(1.0, std::abs(rep.model_re(i, j))));
            ee = std::max(ee, std::abs(rep.fd_im(i, j) - rep.model_im(i, j)) / std::max(1.0, std::abs(rep.model_im(i, j))));
        }
    rep.entry_error = ee;
    const double gnorm = std::sqrt(rep.fd_grad_re.squaredNorm() + rep.fd_grad_im.squaredNorm());
    rep.grad_ratio = gnorm / (model_norm * radius);
    const double tol = 1e-3;
    rep.ok = rep.residual < cfg.residual_tol && rep.entry_error < tol && rep.grad_ratio < tol;
    return rep;
}

// ---- sampling ----

enum class SeedKind { torus, axis };

struct Sampler {
    const FibrationParams& P;
    std::mt19937_64 rng;
    double s_lo = 0.02, s_hi = 0.95;

    Sampler(const FibrationParams& p, unsigned long long seed) : P(p), rng(seed) {}

    double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

    // |x| = |y| = |z| close to a^{-2/3}, phases summing to theta
    C3Point torus_seed()
    {
        const double r0 = std::pow(P.a, -2.0 / 3.0);
        double al = uni(0, 2 * std::numbers::pi), be = uni(0, 2 * std::numbers::pi);
        return {std::polar(r0 * uni(0.7, 1.4), al), std::polar(r0 * uni(0.7, 1.4), be),
                std::polar(r0 * uni(0.7, 1.4), P.theta - al - be + uni(-0.3, 0.3))};
    }

    // near the axis `m`, with sqrt(|Y|^2 + |Z|^2) = s |X|; solves the dominant terms for Y Z
    std::optional<C3Point> axis_seed(int m, double s, double modX)
    {
        const int n = P.exponent(m);
        const cplx X = std::polar(modX, uni(0, 2 * std::numbers::pi));
        const double w = (1 - P.t) + P.t * bump(s);
        const cplx prod = (P.target() - w * ipow(X, n)) / (P.a * X);
        const double S = s * s * modX * modX;
        const double disc = S * S - 4 * std::norm(prod);
        if (disc < 0) return std::nullopt;
        double y2 = (S + (uni(0, 1) < 0.5 ? 1 : -1) * std::sqrt(disc)) / 2;
        double z2 = S - y2;
        if (y2 <= 0 || z2 <= 0) return std::nullopt;
        const double argY = uni(0, 2 * std::numbers::pi);
        C3Point pt;
        pt[m] = X;
        pt[(m + 1) % 3] = std::polar(std::sqrt(y2), argY);
        pt[(m + 2) % 3] = std::polar(std::sqrt(z2), std::arg(prod) - argY);
        return pt;
    }

    std::optional<C3Point> random_axis_seed(int m, double max_radius = 0.9)
    {
        const int n = P.exponent(m);
        const double lo = 0.5 * std::pow(P.a, -1.0 / n);
        const double s = uni(s_lo, s_hi);
        const double hi = max_radius / std::sqrt(1 + s * s);
        if (hi <= lo) return std::nullopt;
        const double modX = std::exp(uni(std::log(lo), std::log(hi)));
        return axis_seed(m, s, modX);
    }
};

// projected points on X_t: a share near the central torus, the rest near the three axes
inline std::vector<C3Point> sample_points(const FibrationParams& P, int N, unsigned long long seed,
                                          const NumericalConfig& cfg = {}, double torus_share = 0.4)
{
    Sampler smp(P, seed);
    std::vector<C3Point> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < N && attempts < 50 * N + 100) {
        ++attempts;
        std::optional<C3Point> s;
        if (smp.uni(0, 1) < torus_share) s = smp.torus_seed();
        else s = smp.random_axis_seed(static_cast<int>(smp.uni(0, 3)) % 3);
        if (!s) continue;
        auto pr = project_to_level(P, *s, P.target(), cfg);
        if (!pr.converged || pr.point.norm() > 1.0) continue;
        out.push_back(pr.point);
    }
    if (static_cast<int>(out.size()) < N)
        throw Error(ErrorKind::convergence, "could not generate enough sample points");
    return out;
}

// ---- audits ----

struct SymplecticAudit {
    bool precondition_ok = false;
    std::string message;
    int samples = 0;
    int in_transition = 0;        // samples where some phi_j is strictly between 0 and 1
    double min_margin = 0;        // min (|grad| - |antigrad|) / |grad|
    double min_coordinate_ratio = 0; // min max{|x|,|y|,|z|} / (m/a)
    std::vector<C3Point> violations;
    bool ok() const { return precondition_ok && violations.empty() && samples > 0 && min_coordinate_ratio > 1; }
};

inline SymplecticAudit symplectic_inequality_audit(const FibrationParams& P, const NumericalConfig& cfg = {})
{
    SymplecticAudit rep;
    if (!(P.a > P.tube_bound())) {
        rep.message = "precondition violated: a must exceed max{12M, m^2(m+3)}";
        return rep;
    }
    rep.precondition_ok = true;
    auto pts = sample_points(P, cfg.samples, cfg.seed, cfg);
    rep.samples = static_cast<int>(pts.size());
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.min_coordinate_ratio = std::numeric_limits<double>::infinity();
    const double ma = P.m() / P.a;
    for (auto& pt : pts) {
        auto g = ft_gradients(P, pt);
        double hol = norm(g.hol), anti = norm(g.anti);
        double margin = (hol - anti) / hol;
        rep.min_margin = std::min(rep.min_margin, margin);
        bool trans = false;
        for (int j = 0; j < 3; ++j) {
            double v = phi(j, pt);
            if (v > 0 && v < 1) trans = true;
        }
        rep.in_transition += trans;
        double mx = std::max({std::abs(pt.x), std::abs(pt.y), std::abs(pt.z)});
        rep.min_coordinate_ratio = std::min(rep.min_coordinate_ratio, mx / ma);
        if (!(hol > anti) || !(mx > ma)) rep.violations.push_back(pt);
    }
    return rep;
}

struct LagrangianReport {
    int samples = 0;
    int rejected = 0;
    double max_defect = 0;
    double mean_defect = 0;
};

// omega_0 evaluated on an orthonormal basis of the fibre tangent plane ker(df_t) cap ker(dg)
inline double lagrangian_defect_at(const FibrationParams& P, const C3Point& pt)
{
    Mat J(4, 6);
    Eigen::Matrix<double, 2, 6> Jf = real_jacobian(ft_gradients(P, pt));
    Eigen::Matrix<double, 2, 6> Jg = real_jacobian(g_gradients(pt));
    J.topRows(2) = Jf / Jf.norm();
    J.bottomRows(2) = Jg / Jg.norm();
    Mat K = kernel_basis(J);
    double w = 0;
    for (int k = 0; k < 3; ++k)
        w += K(2 * k, 0) * K(2 * k + 1, 1) - K(2 * k + 1, 0) * K(2 * k, 1);
    return std::abs(w);
}

inline LagrangianReport lagrangian_defect(const FibrationParams& P, const std::vector<C3Point>& samples)
{
    LagrangianReport rep;
    double sum = 0;
    for (auto& pt : samples) {
        // e_0 and the rotation fields need all three coordinates nonzero
        double mx = pt.norm();
        if (std::abs(pt.x) < 1e-14 * mx || std::abs(pt.y) < 1e-14 * mx || std::abs(pt.z) < 1e-14 * mx) {
            ++rep.rejected;
            continue;
        }
        double d = lagrangian_defect_at(P, pt);
        rep.max_defect = std::max(rep.max_defect, d);
        sum += d;
        ++rep.samples;
    }
    rep.mean_defect = rep.samples ? sum / rep.samples : 0;
    return rep;
}

inline std::vector<C3Point> torus_samples(const FibrationParams& P, int N, unsigned long long seed, const NumericalConfig& cfg = {})
{
    return sample_points(P, N, seed, cfg, 1.0);
}

// samples close to the axis `m` critical fibres (s small)
inline std::vector<C3Point> axis_samples(const FibrationParams& P, int m, int N, unsigned long long seed,
                                         const NumericalConfig& cfg = {}, double s_lo = 0.02, double s_hi = 0.15)
{
    Sampler smp(P, seed);
    smp.s_lo = s_lo;
    smp.s_hi = s_hi;
    std::vector<C3Point> out;
    for (int att = 0; static_cast<int>(out.size()) < N && att < 50 * N + 100; ++att) {
        const int n = P.exponent(m);
        double modX = std::pow(P.a, -1.0 / n) * smp.uni(0.9, 1.1);
        auto s = smp.axis_seed(m, smp.uni(s_lo, s_hi), modX);
        if (!s) continue;
        auto pr = project_to_level(P, *s, P.target(), cfg);
        if (pr.converged) out.push_back(pr.point);
    }
    if (static_cast<int>(out.size()) < N)
        throw Error(ErrorKind::convergence, "could not generate enough axis samples");
    return out;
}

// barycentric weights of g with respect to Delta(rho^2) (vertices rho^2, rho^2 omega, rho^2 omega^2)
inline std::array<double, 3> triangle_weights(cplx g, double rho2)
{
    // g = b1 + omega b2 + omega^2 b3, b1 + b2 + b3 = rho2
    const double im = g.imag() / (std::sqrt(3.0) / 2); // b2 - b3
    const double re = g.real();                          // b1 - (b2 + b3)/2
    const double b1 = (2 * re + rho2) / 3;
    const double b23 = rho2 - b1;
    return {b1, (b23 + im) / 2, (b23 - im) / 2};
}

struct DomainYAudit {
    bool precondition_ok = false;
    std::string message;
    double max_critical_value = 0; // max |critical value|
    double bound_a_2_over_M = 0;   // a^{-2/M}
    bool critical_values_ok = false;
    int boundary_samples = 0;
    double max_xyz_times_a = 0;   // max a |xyz| over boundary samples (< 1 required)
    bool chain_ok = false;        // min |.|^3 <= |xyz| < 1/a < (1/90)^3
    double max_edge_distance = 0; // distance of g to the edges of Delta(1/4)
    bool width_ok = false;        // max_edge_distance < 1/4050
    bool axis_boundary_exact = false; // g in dDelta(1/4) iff xyz = 0 on spot checks
    bool ok() const { return precondition_ok && critical_values_ok && chain_ok && width_ok && axis_boundary_exact; }
};

inline DomainYAudit domain_y_audit(const FibrationParams& P, int boundary_samples = 200, unsigned long long seed = 7,
                                   const NumericalConfig& cfg = {})
{
    DomainYAudit rep;
    if (!(P.a > P.domain_bound())) {
        rep.message = "precondition violated: a must exceed max{3^M, m^2(m+3)}";
        return rep;
    }
    rep.precondition_ok = true;
    FibrationParams P1 = P;
    P1.t = 1;
    rep.bound_a_2_over_M = std::pow(P.a, -2.0 / P.M());
    for (auto& [pt, axis] : critical_points_closed_form(P1))
        rep.max_critical_value = std::max(rep.max_critical_value, std::abs(g_eval(pt)));
    rep.critical_values_ok = rep.max_critical_value <= rep.bound_a_2_over_M * (1 + 1e-12) && rep.bound_a_2_over_M < 1.0 / 9;

    // boundary of Z = X_1 cap D_{1/2}
    Sampler smp(P1, seed);
    smp.s_lo = 0.001;
    smp.s_hi = 0.5;
    rep.chain_ok = true;
    for (int att = 0; rep.boundary_samples < boundary_samples && att < 100 * boundary_samples; ++att) {
        int m = static_cast<int>(smp.uni(0, 3)) % 3;
        double s = smp.uni(smp.s_lo, smp.s_hi);
        auto sd = smp.axis_seed(m, s, 0.5 / std::sqrt(1 + s * s));
        if (!sd) continue;
        auto pr = project_to_level(P1, *sd, P1.target(), cfg, 0.5);
        if (!pr.converged) continue;
        const C3Point& pt = pr.point;
        ++rep.boundary_samples;
        double xyz = std::abs(pt.x * pt.y * pt.z);
        double mn = std::min({std::abs(pt.x), std::abs(pt.y), std::abs(pt.z)});
        rep.max_xyz_times_a = std::max(rep.max_xyz_times_a, xyz * P.a);
        if (!(mn * mn * mn <= xyz * (1 + 1e-12) && xyz < 1 / P.a && 1 / P.a < std::pow(1.0 / 90, 3))) rep.chain_ok = false;
        auto b = triangle_weights(g_eval(pt), 0.25);
        rep.max_edge_distance = std::max(rep.max_edge_distance, 1.5 * std::min({b[0], b[1], b[2]}));
    }
    if (rep.boundary_samples < boundary_samples) rep.chain_ok = false;
    rep.width_ok = rep.max_edge_distance < 1.0 / 4050;

    // spot checks on |pt| = 1/2: a zero coordinate puts g on the boundary, none puts it inside
    bool exact = true;
    for (int k = 0; k < 24; ++k) {
        double th = smp.uni(0.05, 1.5), ph1 = smp.uni(0, 6.28), ph2 = smp.uni(0, 6.28), ph3 = smp.uni(0, 6.28);
        C3Point on_axis_plane{std::polar(0.5 * std::cos(th), ph1), std::polar(0.5 * std::sin(th), ph2), 0.0};
        auto b = triangle_weights(g_eval(on_axis_plane), 0.25);
        if (std::abs(std::min({b[0], b[1], b[2]})) > 1e-15) exact = false;
        double c1 = smp.uni(0.2, 1), c2 = smp.uni(0.2, 1), c3 = smp.uni(0.2, 1);
        double nn = 2 * std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
        C3Point inside{std::polar(c1 / nn, ph1), std::polar(c2 / nn, ph2), std::polar(c3 / nn, ph3)};
        auto bi = triangle_weights(g_eval(inside), 0.25);
        if (!(std::min({bi[0], bi[1], bi[2]}) > 1e-6)) exact = false;
    }
    rep.axis_boundary_exact = exact;
    return rep;
}

struct MilnorSphereAudit {
    int samples = 0;
    double min_independence = 0; // min sine of the angle between grad f and conj(pt) over C
    double min_axis_modulus = 0; // |f(x,0,0)| for |x| = 1
    bool ok() const { return samples > 0 && min_independence > 0 && min_axis_modulus > 0.999999; }
};

// f^{-1}(target) meets the unit sphere transversally: grad f and conj(pt) are C-independent there
inline MilnorSphereAudit milnor_sphere_audit(const FibrationParams& P, int N = 100, unsigned long long seed = 11,
                                             const NumericalConfig& cfg = {})
{
    FibrationParams P0 = P;
    P0.t = 0;
    MilnorSphereAudit rep;
    Sampler smp(P0, seed);
    smp.s_lo = 0.001;
    smp.s_hi = 0.8;
    rep.min_independence = std::numeric_limits<double>::infinity();
    for (int att = 0; rep.samples < N && att < 100 * N; ++att) {
        int m = static_cast<int>(smp.uni(0, 3)) % 3;
        double s = smp.uni(smp.s_lo, smp.s_hi);
        auto sd = smp.axis_seed(m, s, 1.0 / std::sqrt(1 + s * s));
        if (!sd) continue;
        auto pr = project_to_level(P0, *sd, P0.target(), cfg, 1.0);
        if (!pr.converged) continue;
        const C3Point& pt = pr.point;
        Vec3c g = f_grad(P0, pt);
        // |<grad f, pt>| versus |grad f| |pt|, Hermitian product sum g_k x_k
        cplx ip = g[0] * pt.x + g[1] * pt.y + g[2] * pt.z;
        double gn = norm(g), pn = pt.norm();
        double c = std::abs(ip) / (gn * pn);
        rep.min_independence = std::min(rep.min_independence, std::sqrt(std::max(0.0, 1 - c * c)));
        ++rep.samples;
    }
    rep.min_axis_modulus = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 16; ++k) {
        C3Point ax{std::polar(1.0, 2 * std::numbers::pi * k / 16), 0.0, 0.0};
        rep.min_axis_modulus = std::min(rep.min_axis_modulus, std::abs(f_eval(P0, ax)));
    }
    return rep;
}

} // namespace k3fib::num
