/*
 * Copyright 2026 The wilsonrmt authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "wrmt/kernels.hpp"

#include <cmath>
#include <complex>

#include "wrmt/gauss_integrate.hpp"
#include "wrmt/parallel.hpp"
#include "wrmt/pfaffian.hpp"
#include "wrmt/special.hpp"

namespace wrmt {

using cd = std::complex<double>;

LogVal weight_w(double x, const ModelParams& p) {
    return LogVal{1, -x * x / (4.0 * p.a * p.a)};
}

LogVal weight_f(double x, const ModelParams& p) {
    return LogVal{1, -p.m * x / (2.0 * p.a * p.a)};
}

namespace {
inline double bracket_A(const ModelParams& p) {
    return std::sqrt(1.0 - p.a * p.a) / (2.0 * std::sqrt(2.0) * p.a);
}
inline double bracket_B(const ModelParams& p) {
    return p.m / (std::sqrt(2.0) * p.a * std::sqrt(1.0 - p.a * p.a));
}

void check_imag(double re, double im, double scale, const char* what) {
    // the floor keeps antisymmetric zeros (re ~ roundoff * scale) from
    // tripping the residual check
    double tol = 1e-9 * std::max(std::abs(re), 1e-3 * scale);
    if (std::abs(im) > tol && std::abs(im) > 1e-280)
        throw numerical_error(std::string(what) + ": imaginary quadrature residual too large");
}
}  // namespace

LogVal weight_F(double x, const ModelParams& p) {
    LogVal br = erf_bracket(bracket_A(p) * x, bracket_B(p));
    if (br.sign == 0) return br;
    return LogVal{br.sign, br.log + x * x * (1.0 - p.a * p.a) / (8.0 * p.a * p.a)};
}

KernelSet::KernelSet(const ModelParams& p, Path path, int hermite_order, int cd_order)
    : p_(p), path_(path), order_(hermite_order), cd_order_(cd_order) {
    if (p_.nu != 0 && p_.nu != 1)
        throw std::invalid_argument("KernelSet: correlation kernels exist for nu = 0, 1 only");
    if (p_.nu == 1) {
        LogVal s = coeff_s(2 * p_.n, p_);
        logs2n_ = s.log;
        s2n_sign_ = s.sign;
    }
    inv_r_.resize(p_.n);
    for (int j = 0; j < p_.n; ++j) inv_r_[j] = LogVal{1, -norm_r_log(j, p_).log};
}

// dimensionless Christoffel-Darboux double sums:
// cd_combine = sum_{k,l} w_k w_l [L_n(X_k)L_{n-1}(Y_l) - L_{n-1}(X_k)L_n(Y_l)] / (u_k + v_l)
// and, for nu = 1, the correction G(x)P(y) - G(y)P(x) with
// P(v) = sum w_k L_n(Z_k), G(v) = sum w_k (v + 2iar_k + m) L^{(1)}_{n-1}(Z_k).
KernelSet::CDSide KernelSet::cd_side(double v, bool with_corr) const {
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, cd_order_);
    const int q = gh.order;
    const int n = p_.n;
    const double c = 2.0 * (1.0 - p_.a * p_.a);
    CDSide s;
    s.u.resize(q);
    s.ln.resize(q);
    s.lnm1.resize(q);
    std::vector<cd> L(n + 1);
    for (int k = 0; k < q; ++k) {
        cd u(v, 2.0 * p_.a * gh.nodes[k]);
        cd z = (u * u - p_.m * p_.m) / c;
        laguerre_all(n, 0, z, L.data());
        s.u[k] = u;
        s.ln[k] = L[n];
        s.lnm1[k] = L[n - 1];
        if (with_corr) {
            cd l1 = laguerre(n - 1, 1, z);
            s.P += gh.weights[k] * L[n];
            s.G += gh.weights[k] * (u + p_.m) * l1;
        }
    }
    return s;
}

double KernelSet::cd_combine(const CDSide& sx, const CDSide& sy, double* corr_out) const {
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, cd_order_);
    const int q = gh.order;
    const int n = p_.n;
    const double c = 2.0 * (1.0 - p_.a * p_.a);

    cd sum(0.0);
    double scale = 0.0;
    const double dentol = 1e-7;
    for (int k = 0; k < q; ++k) {
        cd a1 = gh.weights[k] * sx.ln[k];
        cd a2 = gh.weights[k] * sx.lnm1[k];
        for (int l = 0; l < q; ++l) {
            cd den = sx.u[k] + sy.u[l];
            cd term;
            if (std::abs(den) < dentol * (1.0 + std::abs(sx.u[k]))) {
                // v -> -u limit of the telescoped ratio
                cd z = (sx.u[k] * sx.u[k] - p_.m * p_.m) / c;
                cd l1nm1 = laguerre(n - 1, 1, z);
                cd l1nm2 = (n >= 2) ? laguerre(n - 2, 1, z) : cd(0.0);
                cd lim = (sx.lnm1[k] * l1nm1 - sx.ln[k] * l1nm2) * (-2.0 * sx.u[k] / c);
                term = gh.weights[k] * gh.weights[l] * lim;
            } else {
                term = (a1 * sy.lnm1[l] - a2 * sy.ln[l]) * gh.weights[l] / den;
            }
            sum += term;
            scale = std::max(scale, std::abs(term));
        }
    }
    check_imag(sum.real(), sum.imag(), scale, "kernel CD sum");

    if (corr_out) {
        cd corr = sx.G * sy.P - sy.G * sx.P;
        check_imag(corr.real(), corr.imag(), std::abs(sx.G * sy.P), "nu=1 kernel correction");
        *corr_out = corr.real();
    }
    return sum.real();
}

namespace {
// constant prefactors of the CD forms
double cd_const(const ModelParams& p) {
    return p.n * std::sqrt(1.0 - p.a * p.a) /
           (4.0 * M_PI * std::sqrt(2.0 * M_PI) * p.a);
}
double corr_const(const ModelParams& p) {
    return 1.0 / (8.0 * p.a * M_PI * std::sqrt(2.0 * M_PI * (1.0 - p.a * p.a)));
}
}  // namespace

LogVal KernelSet::D_cd(double x, double y) const {
    double corr = 0.0;
    bool wc = p_.nu == 1;
    CDSide sx = cd_side(x, wc), sy = cd_side(y, wc);
    double cdsum = cd_combine(sx, sy, wc ? &corr : nullptr);
    double val = cd_const(p_) * cdsum;
    if (p_.nu == 1) val += corr_const(p_) * corr;
    double lp = -(x * x + y * y) / (4.0 * p_.a * p_.a) +
                p_.m * p_.m / (2.0 * (1.0 - p_.a * p_.a));
    LogVal v = LogVal::of(val);
    if (v.sign == 0) return v;
    return LogVal{v.sign, v.log + lp};
}

LogVal KernelSet::S_cd(double x, double y) const {
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, order_);
    const double a2 = p_.a * p_.a;
    const double brA = bracket_A(p_), brB = bracket_B(p_);

    GaussIntegrand f;
    f.A = -(1.0 + a2) / (8.0 * a2);
    f.B = -x * (1.0 - a2) / (4.0 * a2);
    f.C = x * x * (1.0 - a2) / (8.0 * a2) - y * y / (4.0 * a2) +
          p_.m * p_.m / (2.0 * (1.0 - a2));
    f.dims = 1;
    f.peaks = {x - 2.0 * p_.m / (1.0 - a2), x + 2.0 * p_.m / (1.0 - a2)};
    const double cdc = cd_const(p_), coc = corr_const(p_);
    const bool wc = p_.nu == 1;
    CDSide sy = cd_side(y, wc);
    f.g = [&](double z, LogVal* out) {
        LogVal br = erf_bracket(brA * (x - z), brB);
        if (br.sign == 0) {
            out[0] = LogVal::zero();
            return;
        }
        double corr = 0.0;
        CDSide sz = cd_side(z, wc);
        double cdsum = cd_combine(sz, sy, wc ? &corr : nullptr);
        double val = cdc * cdsum + (wc ? coc * corr : 0.0);
        out[0] = br * LogVal::of(val);
    };
    LogVal s = integrate_gaussian(f, gh)[0];

    if (p_.nu == 1) {
        // separable term e^{-(y^2+2xm+m^2)/(4a^2)} (1/(2 pi a)) int ds e^{-s^2} L_n(Y_s)
        cd P(0.0);
        const double c = 2.0 * (1.0 - a2);
        for (int k = 0; k < gh.order; ++k) {
            cd u(y, 2.0 * p_.a * gh.nodes[k]);
            P += gh.weights[k] * laguerre(p_.n, 0, (u * u - p_.m * p_.m) / c);
        }
        check_imag(P.real(), P.imag(), std::abs(P), "S nu=1 separable term");
        LogVal sep = LogVal::of(P.real() / (2.0 * M_PI * p_.a));
        if (sep.sign != 0)
            sep.log += -(y * y + 2.0 * x * p_.m + p_.m * p_.m) / (4.0 * a2);
        s = s + sep;
    }
    return s;
}

KernelSet::Point KernelSet::make_point(double x) const {
    Point pt;
    pt.x = x;
    pt.w = weight_w(x, p_);
    pt.f = weight_f(x, p_);
    if (p_.nu == 0) {
        pt.R = sop_values(p_, 2 * p_.n - 1, x, order_);
        pt.phi = phi_values(p_, 2 * p_.n - 1, x, order_);
    } else {
        pt.R = sop_nu1_values(p_, x, order_);
        pt.phi = phi_nu1_values(p_, x, order_);
    }
    return pt;
}

LogVal KernelSet::S_pt(const Point& X, const Point& Y) const {
    LogSum acc;
    for (int j = 1; j <= p_.n; ++j) {
        const LogVal& invr = inv_r_[j - 1];
        acc.add(X.phi[2 * j - 2] * LogVal::of(Y.R[2 * j - 1]) * invr);
        acc.add(-(X.phi[2 * j - 1] * LogVal::of(Y.R[2 * j - 2]) * invr));
    }
    LogVal s = acc.total() * Y.w;
    if (p_.nu == 1) {
        LogVal extra = X.f * Y.w * LogVal::of(Y.R[2 * p_.n]) * LogVal{s2n_sign_, -logs2n_};
        s = s + extra;
    }
    return s;
}

LogVal KernelSet::D_pt(const Point& X, const Point& Y) const {
    LogSum acc;
    for (int j = 1; j <= p_.n; ++j) {
        const LogVal& invr = inv_r_[j - 1];
        acc.add(LogVal::of(X.R[2 * j - 2] * Y.R[2 * j - 1]) * invr);
        acc.add(LogVal::of(-X.R[2 * j - 1] * Y.R[2 * j - 2]) * invr);
    }
    return acc.total() * X.w * Y.w;
}

LogVal KernelSet::I_pt(const Point& X, const Point& Y) const {
    LogSum acc;
    for (int j = 1; j <= p_.n; ++j) {
        const LogVal& invr = inv_r_[j - 1];
        acc.add(-(X.phi[2 * j - 2] * Y.phi[2 * j - 1] * invr));
        acc.add(X.phi[2 * j - 1] * Y.phi[2 * j - 2] * invr);
    }
    LogVal v = acc.total();
    if (p_.nu == 1) {
        LogVal inv_s = LogVal{s2n_sign_, -logs2n_};
        v = v + (X.phi[2 * p_.n] * Y.f - Y.phi[2 * p_.n] * X.f) * inv_s;
    }
    return v - weight_F(X.x - Y.x, p_);
}

// integral-relation path for I: I(x,y) = -int dz F(y-z) w(z) T(x,z) - F(x-y)
// (+ nu=1 closed extras), with T the polynomial part of the S sum
LogVal KernelSet::I_rel(double x, double y) const {
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, order_);
    const double a2 = p_.a * p_.a;
    const double brA = bracket_A(p_), brB = bracket_B(p_);
    Point X = make_point(x);

    GaussIntegrand f;
    f.A = -(1.0 + a2) / (8.0 * a2);
    f.B = -y * (1.0 - a2) / (4.0 * a2);
    f.C = y * y * (1.0 - a2) / (8.0 * a2);
    f.dims = 1;
    f.peaks = {y - 2.0 * p_.m / (1.0 - a2), y + 2.0 * p_.m / (1.0 - a2)};
    f.g = [&](double z, LogVal* out) {
        LogVal br = erf_bracket(brA * (y - z), brB);
        if (br.sign == 0) {
            out[0] = LogVal::zero();
            return;
        }
        std::vector<double> R =
            (p_.nu == 0) ? sop_values(p_, 2 * p_.n - 1, z, order_) : sop_nu1_values(p_, z, order_);
        LogSum t;
        for (int j = 1; j <= p_.n; ++j) {
            const LogVal& invr = inv_r_[j - 1];
            t.add(X.phi[2 * j - 2] * LogVal::of(R[2 * j - 1]) * invr);
            t.add(-(X.phi[2 * j - 1] * LogVal::of(R[2 * j - 2]) * invr));
        }
        out[0] = br * t.total();
    };
    LogVal integral = integrate_gaussian(f, gh)[0];
    LogVal v = -integral - weight_F(x - y, p_);
    if (p_.nu == 1) {
        LogVal inv_s = LogVal{s2n_sign_, -logs2n_};
        // -(f(x)/s) phi_{2n}(y) + (phi^1_{2n}(x)/s) f(y)
        std::vector<LogVal> phiy = phi_nu1_values(p_, y, order_);
        v = v - weight_f(x, p_) * phiy[2 * p_.n] * inv_s +
            X.phi[2 * p_.n] * weight_f(y, p_) * inv_s;
    }
    return v;
}

LogVal KernelSet::S(double x, double y) const {
    if (path_ == Path::ChristoffelDarboux) return S_cd(x, y);
    Point X = make_point(x), Y = make_point(y);
    return S_pt(X, Y);
}

LogVal KernelSet::D(double x, double y) const {
    if (path_ == Path::ChristoffelDarboux) return D_cd(x, y);
    Point X = make_point(x), Y = make_point(y);
    return D_pt(X, Y);
}

LogVal KernelSet::I(double x, double y) const {
    if (path_ == Path::ChristoffelDarboux) return I_rel(x, y);
    Point X = make_point(x), Y = make_point(y);
    return I_pt(X, Y);
}

double KernelSet::rho1(double x) const { return S(x, x).value(); }

double KernelSet::rho2_pt(const Point& X, const Point& Y) const {
    LogVal v = S_pt(X, X) * S_pt(Y, Y) + I_pt(X, Y) * D_pt(X, Y) - S_pt(X, Y) * S_pt(Y, X);
    return v.value();
}

double KernelSet::rho2(double x, double y) const {
    if (path_ == Path::SumOverPolynomials) {
        Point X = make_point(x), Y = make_point(y);
        return rho2_pt(X, Y);
    }
    LogVal v = S(x, x) * S(y, y) + I(x, y) * D(x, y) - S(x, y) * S(y, x);
    return v.value();
}

double KernelSet::rho_k(const std::vector<double>& points) const {
    const int k = static_cast<int>(points.size());
    if (k < 1) throw std::invalid_argument("rho_k: need at least one point");
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (points[i] == points[j]) return 0.0;  // degenerate rows

    std::vector<Point> pts;
    pts.reserve(k);
    for (double d : points) pts.push_back(make_point(d));

    // one 2x2 block [[I, S], [-S^T, -D]] per point pair, interleaved layout
    const int dim = 2 * k;
    std::vector<LogVal> m(static_cast<size_t>(dim) * dim);
    auto put = [&](int i, int j, const LogVal& v) {
        m[static_cast<size_t>(i) * dim + j] = v;
        m[static_cast<size_t>(j) * dim + i] = -v;
    };
    for (int i = 0; i < k; ++i) {
        put(2 * i, 2 * i + 1, S_pt(pts[i], pts[i]));
        for (int j = i + 1; j < k; ++j) {
            put(2 * i, 2 * j, I_pt(pts[i], pts[j]));
            put(2 * i, 2 * j + 1, S_pt(pts[i], pts[j]));
            put(2 * i + 1, 2 * j, -S_pt(pts[j], pts[i]));
            put(2 * i + 1, 2 * j + 1, -D_pt(pts[i], pts[j]));
        }
    }
    return pfaffian_log(dim, m).value();
}

DensityCurve KernelSet::rho1_curve(const std::vector<double>& grid) const {
    DensityCurve curve;
    curve.grid = grid;
    curve.values.resize(grid.size());
    parallel_for(static_cast<int>(grid.size()),
                 [&](int i) { curve.values[i] = rho1(grid[i]); });
    curve.meta["kind"] = "rho1";
    curve.meta["n"] = std::to_string(p_.n);
    curve.meta["nu"] = std::to_string(p_.nu);
    curve.meta["a"] = std::to_string(p_.a);
    curve.meta["m"] = std::to_string(p_.m);
    return curve;
}

double kernel_D(double x, double y, const ModelParams& p) {
    return KernelSet(p).D(x, y).value();
}
double kernel_S(double x, double y, const ModelParams& p) {
    return KernelSet(p).S(x, y).value();
}
double kernel_I(double x, double y, const ModelParams& p) {
    return KernelSet(p).I(x, y).value();
}

KernelTriple kernels_nu1(double x, double y, const ModelParams& p) {
    if (p.nu != 1) throw std::invalid_argument("kernels_nu1: requires nu = 1");
    KernelSet ks(p);
    return KernelTriple{ks.S(x, y).value(), ks.D(x, y).value(), ks.I(x, y).value()};
}

double rho1(double x, const ModelParams& p) { return KernelSet(p).rho1(x); }
double rho2(double x, double y, const ModelParams& p) { return KernelSet(p).rho2(x, y); }
double rho_k(const std::vector<double>& points, const ModelParams& p) {
    return KernelSet(p, KernelSet::Path::SumOverPolynomials).rho_k(points);
}

double chgue_density_finite(double y, int n, int nu) {
    if (nu != 0 && nu != 1)
        throw std::invalid_argument("chgue_density_finite: nu must be 0 or 1");
    double t = 0.5 * y * y;
    double sum = 0.0;
    if (nu == 0) {
        for (int l = 0; l < n; ++l) {
            double L = laguerre(l, 0, t);
            sum += L * L;
        }
        return std::abs(y) * std::exp(-t) * sum;
    }
    for (int l = 0; l < n; ++l) {
        double L = laguerre(l, 1, t);
        sum += L * L / (2.0 * (l + 1.0));
    }
    return std::abs(y) * y * y * std::exp(-t) * sum;
}

std::function<double(double)> shift_map(std::function<double(double)> base, double m) {
    return [base = std::move(base), m](double x) -> double {
        double ax = std::abs(x);
        if (ax <= m) return 0.0;
        double r = std::sqrt(x * x - m * m);
        return ax / r * base(r);
    };
}

}  // namespace wrmt
