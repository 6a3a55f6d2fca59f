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

#include "wrmt/micro.hpp"

#include <cmath>
#include <complex>

#include "wrmt/gauss_integrate.hpp"
#include "wrmt/kernels.hpp"
#include "wrmt/parallel.hpp"
#include "wrmt/quadrature.hpp"
#include "wrmt/special.hpp"

namespace wrmt {

using cd = std::complex<double>;

namespace {

void check_imag(double re, double im, double scale, const char* what) {
    double tol = 1e-9 * std::max(std::abs(re), 1e-3 * scale);
    if (std::abs(im) > tol && std::abs(im) > 1e-280)
        throw numerical_error(std::string(what) + ": imaginary quadrature residual too large");
}

// per-node data of one integration variable: w = m^2 - (v + 4 i a s)^2
struct MicroSide {
    std::vector<cd> i0;    // Ihat_0(w)
    std::vector<cd> wi1;   // (w/2) Ihat_1(w)  ( = sqrt(w) I_1(sqrt(w)) )
    std::vector<cd> arg;   // v + 4 i a s
};

MicroSide micro_side(double v, const MicroParams& mp, const QuadratureRule& gh) {
    MicroSide s;
    const int q = gh.order;
    s.i0.resize(q);
    s.wi1.resize(q);
    s.arg.resize(q);
    for (int k = 0; k < q; ++k) {
        cd z(v, 4.0 * mp.a_hat * gh.nodes[k]);
        cd w = mp.m_hat * mp.m_hat - z * z;
        cd i0, i1;
        bessel_i_entire01(w, i0, i1);
        s.arg[k] = z;
        s.i0[k] = i0;
        s.wi1[k] = 0.5 * w * i1;
    }
    return s;
}

// inner CD combination (1/pi) sum w_s w_r N / (x + y + 4ia(s+r))
double micro_inner_cd(const MicroSide& sx, const MicroSide& sy, const QuadratureRule& gh) {
    const int q = gh.order;
    cd sum(0.0);
    double scale = 0.0;
    for (int k = 0; k < q; ++k) {
        for (int l = 0; l < q; ++l) {
            cd den = sx.arg[k] + sy.arg[l];
            cd num = sx.wi1[k] * sy.i0[l] - sy.wi1[l] * sx.i0[k];
            cd term = gh.weights[k] * gh.weights[l] * num / den;
            sum += term;
            scale = std::max(scale, std::abs(term));
        }
    }
    check_imag(sum.real(), sum.imag(), scale, "microscopic CD sum");
    return sum.real() / M_PI;
}

}  // namespace

double limit_poly_even(double t, double x_hat, const MicroParams& mp) {
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, kHermiteOrder);
    cd acc(0.0);
    double scale = 0.0;
    for (int k = 0; k < gh.order; ++k) {
        cd z(x_hat, 4.0 * mp.a_hat * gh.nodes[k]);
        cd w = mp.m_hat * mp.m_hat - z * z;
        cd term = gh.weights[k] * bessel_i_entire(0, t * w);
        acc += term;
        scale = std::max(scale, std::abs(term));
    }
    check_imag(acc.real(), acc.imag(), scale, "limit_poly_even");
    return std::exp(-2.0 * t * mp.a_hat * mp.a_hat) * acc.real() / std::sqrt(M_PI);
}

double limit_poly_odd(double t, double x_hat, const MicroParams& mp) {
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, kHermiteOrder);
    cd acc(0.0);
    double scale = 0.0;
    for (int k = 0; k < gh.order; ++k) {
        cd z(x_hat, 4.0 * mp.a_hat * gh.nodes[k]);
        cd w = mp.m_hat * mp.m_hat - z * z;
        cd term = gh.weights[k] * z * bessel_i_entire(0, t * w);
        acc += term;
        scale = std::max(scale, std::abs(term));
    }
    check_imag(acc.real(), acc.imag(), scale, "limit_poly_odd");
    return std::exp(-2.0 * t * mp.a_hat * mp.a_hat) * acc.real() / std::sqrt(M_PI);
}

double rho_s(double x_hat, const MicroParams& mp) {
    if (mp.nu != 0) throw std::invalid_argument("rho_s: requires nu = 0");
    if (!(mp.a_hat > 0.0)) throw std::invalid_argument("rho_s: requires a_hat > 0");
    const QuadratureRule& inner = shared_rule(QuadKind::GaussHermite, 64);
    const QuadratureRule& outer = shared_rule(QuadKind::GaussHermite, kHermiteOrder);
    const double ah2 = mp.a_hat * mp.a_hat;
    MicroSide sx = micro_side(x_hat, mp, inner);

    const double brB = mp.m_hat / (2.0 * std::sqrt(2.0) * mp.a_hat);
    GaussIntegrand f;
    f.A = -1.0 / (32.0 * ah2);
    f.B = -x_hat / (16.0 * ah2);
    f.C = -x_hat * x_hat / (32.0 * ah2) -
          std::log(16.0 * mp.a_hat * std::sqrt(2.0 * M_PI));
    f.dims = 1;
    f.peaks = {x_hat - 2.0 * mp.m_hat, x_hat + 2.0 * mp.m_hat};
    f.g = [&](double y, LogVal* out) {
        LogVal br = erf_bracket((y - x_hat) / (4.0 * std::sqrt(2.0) * mp.a_hat), brB);
        if (br.sign == 0) {
            out[0] = LogVal::zero();
            return;
        }
        MicroSide sy = micro_side(y, mp, inner);
        out[0] = br * LogVal::of(micro_inner_cd(sx, sy, inner));
    };
    return integrate_gaussian(f, outer)[0].value();
}

double rho_s_form1(double x_hat, const MicroParams& mp) {
    if (mp.nu != 0) throw std::invalid_argument("rho_s_form1: requires nu = 0");
    const QuadratureRule& inner = shared_rule(QuadKind::GaussHermite, 64);
    const QuadratureRule& outer = shared_rule(QuadKind::GaussHermite, kHermiteOrder);
    const QuadratureRule& gl = shared_rule(QuadKind::GaussLegendre, kLegendreOrder);
    const double ah2 = mp.a_hat * mp.a_hat;
    const double brB = mp.m_hat / (2.0 * std::sqrt(2.0) * mp.a_hat);

    // series coefficients of Ihat_0(t w) in t per node: c_k = (w/4)^k/(k!)^2
    auto coeffs = [&](double v) {
        std::vector<std::vector<cd>> c(inner.order);
        double wmax = 0.0;
        for (int k = 0; k < inner.order; ++k) {
            cd z(v, 4.0 * mp.a_hat * inner.nodes[k]);
            cd w = mp.m_hat * mp.m_hat - z * z;
            wmax = std::max(wmax, std::abs(w));
        }
        int terms = 12 + static_cast<int>(2.2 * std::sqrt(wmax));
        for (int k = 0; k < inner.order; ++k) {
            cd z(v, 4.0 * mp.a_hat * inner.nodes[k]);
            cd w = mp.m_hat * mp.m_hat - z * z;
            c[k].resize(terms + 1);
            c[k][0] = cd(1.0);
            for (int j = 1; j <= terms; ++j)
                c[k][j] = c[k][j - 1] * w * 0.25 / (static_cast<double>(j) * j);
        }
        return c;
    };
    auto cx = coeffs(x_hat);

    GaussIntegrand f;
    f.A = -1.0 / (32.0 * ah2);
    f.B = -x_hat / (16.0 * ah2);
    f.C = -x_hat * x_hat / (32.0 * ah2) -
          std::log(32.0 * mp.a_hat * std::sqrt(2.0 * M_PI));
    f.dims = 1;
    f.peaks = {x_hat - 2.0 * mp.m_hat, x_hat + 2.0 * mp.m_hat};
    f.g = [&](double y, LogVal* out) {
        LogVal br = erf_bracket((y - x_hat) / (4.0 * std::sqrt(2.0) * mp.a_hat), brB);
        if (br.sign == 0) {
            out[0] = LogVal::zero();
            return;
        }
        auto cy = coeffs(y);
        cd total(0.0);
        for (int it = 0; it < gl.order; ++it) {
            double t = 0.5 * (gl.nodes[it] + 1.0);
            // A0/A1 on the x side, B0/B1 on the y side
            cd A0(0.0), A1(0.0), B0(0.0), B1(0.0);
            for (int k = 0; k < inner.order; ++k) {
                cd v(0.0);
                for (int j = static_cast<int>(cx[k].size()) - 1; j >= 0; --j)
                    v = v * t + cx[k][j];
                A0 += inner.weights[k] * v;
                A1 += inner.weights[k] * cd(0.0, 4.0 * mp.a_hat * inner.nodes[k]) * v;
            }
            for (int k = 0; k < inner.order; ++k) {
                cd v(0.0);
                for (int j = static_cast<int>(cy[k].size()) - 1; j >= 0; --j)
                    v = v * t + cy[k][j];
                B0 += inner.weights[k] * v;
                B1 += inner.weights[k] * cd(0.0, 4.0 * mp.a_hat * inner.nodes[k]) * v;
            }
            // orientation fixed by the CD identity linking the two forms
            // (and by positivity of the density): (y - x + 4ia(s - r)) ...
            cd integrand = (y - x_hat) * A0 * B0 - A1 * B0 + A0 * B1;
            total += 0.5 * gl.weights[it] * integrand;
        }
        check_imag(total.real(), total.imag(), std::abs(total) + 1.0, "rho_s form1");
        out[0] = br * LogVal::of(total.real() / M_PI);
    };
    return integrate_gaussian(f, outer)[0].value();
}

namespace {
// E0(v) = int ds e^{-s^2} Ihat_0(w_v), G1(v) = int dr e^{-r^2} ((m+v+4iar)/2) Ihat_1(w_v)
void nu1_factors(double v, const MicroParams& mp, const QuadratureRule& gh, double& e0,
                 double& g1) {
    cd accE(0.0), accG(0.0);
    for (int k = 0; k < gh.order; ++k) {
        cd z(v, 4.0 * mp.a_hat * gh.nodes[k]);
        cd w = mp.m_hat * mp.m_hat - z * z;
        cd i0, i1;
        bessel_i_entire01(w, i0, i1);
        accE += gh.weights[k] * i0;
        accG += gh.weights[k] * 0.5 * (mp.m_hat + z) * i1;
    }
    check_imag(accE.real(), accE.imag(), std::abs(accE) + 1e-300, "nu1 E0");
    check_imag(accG.real(), accG.imag(), std::abs(accG) + 1e-300, "nu1 G1");
    e0 = accE.real();
    g1 = accG.real();
}
}  // namespace

double rho_s_nu1_zero_term(double x_hat, const MicroParams& mp) {
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, 64);
    double e0, g1;
    nu1_factors(x_hat, mp, gh, e0, g1);
    double d = x_hat + mp.m_hat;
    return std::exp(-d * d / (16.0 * mp.a_hat * mp.a_hat)) * e0 /
           (4.0 * M_PI * mp.a_hat);
}

double rho_s_nu1(double x_hat, const MicroParams& mp) {
    if (mp.nu != 1) throw std::invalid_argument("rho_s_nu1: requires nu = 1");
    if (!(mp.a_hat > 0.0)) throw std::invalid_argument("rho_s_nu1: requires a_hat > 0");
    MicroParams mp0(mp.m_hat, mp.a_hat, mp.z_hat, 0);
    double base = rho_s(x_hat, mp0);

    const QuadratureRule& inner = shared_rule(QuadKind::GaussHermite, 64);
    const QuadratureRule& outer = shared_rule(QuadKind::GaussHermite, kHermiteOrder);
    const double ah2 = mp.a_hat * mp.a_hat;
    const double brB = mp.m_hat / (2.0 * std::sqrt(2.0) * mp.a_hat);
    double e0x, g1x;
    nu1_factors(x_hat, mp, inner, e0x, g1x);

    GaussIntegrand f;
    f.A = -1.0 / (32.0 * ah2);
    f.B = -x_hat / (16.0 * ah2);
    f.C = -x_hat * x_hat / (32.0 * ah2) -
          std::log(16.0 * mp.a_hat * M_PI * std::sqrt(2.0 * M_PI));
    f.dims = 1;
    f.peaks = {x_hat - 2.0 * mp.m_hat, x_hat + 2.0 * mp.m_hat};
    f.g = [&](double z, LogVal* out) {
        LogVal br = erf_bracket((x_hat - z) / (4.0 * std::sqrt(2.0) * mp.a_hat), brB);
        if (br.sign == 0) {
            out[0] = LogVal::zero();
            return;
        }
        double e0z, g1z;
        nu1_factors(z, mp, inner, e0z, g1z);
        out[0] = br * LogVal::of(e0x * g1z - e0z * g1x);
    };
    double corr = integrate_gaussian(f, outer)[0].value();

    return base + corr + rho_s_nu1_zero_term(x_hat, mp);
}

double chgue_density_micro(double x_hat, int nu) {
    double ax = std::abs(x_hat);
    double j0 = bessel_j(0, ax), j1 = bessel_j(1, ax);
    if (nu == 0) return 0.5 * ax * (j0 * j0 + j1 * j1);
    if (nu == 1) {
        double j2 = bessel_j(2, ax);
        return 0.5 * ax * (j1 * j1 - j0 * j2);
    }
    throw std::invalid_argument("chgue_density_micro: nu must be 0 or 1");
}

PartitionResult partition_nf1_micro(const MicroParams& mp) {
    // (i) spectrally accurate periodic trapezoid over theta
    const int M = 512;
    cd acc(0.0);
    for (int j = 0; j < M; ++j) {
        double th = -M_PI + 2.0 * M_PI * j / M;
        double st = std::sin(th), ct = std::cos(th);
        cd expo(mp.m_hat * ct + 4.0 * mp.a_hat * mp.a_hat * st * st, mp.z_hat * st);
        acc += std::exp(cd(0.0, th * mp.nu)) * std::exp(expo);
    }
    double theta_form = std::exp(-2.0 * mp.a_hat * mp.a_hat) * (acc / (double)M).real();
    check_imag((acc / (double)M).real(), (acc / (double)M).imag(),
               std::abs(acc / (double)M) + 1.0, "partition theta form");

    // (ii) Gauss-Hermite with the entire Bessel kernel:
    // e^{-2a^2} int dx e^{-x^2}/sqrt(pi) ((m - (z+4ixa))/2)^nu Ihat_nu(m^2 - (z+4ixa)^2)
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, kHermiteOrder);
    cd acc2(0.0);
    for (int k = 0; k < gh.order; ++k) {
        cd zz(mp.z_hat, 4.0 * mp.a_hat * gh.nodes[k]);
        cd w = mp.m_hat * mp.m_hat - zz * zz;
        cd factor(1.0);
        for (int q = 0; q < mp.nu; ++q) factor *= 0.5 * (mp.m_hat - zz);
        acc2 += gh.weights[k] * factor * bessel_i_entire(mp.nu, w);
    }
    double hermite_form =
        std::exp(-2.0 * mp.a_hat * mp.a_hat) * acc2.real() / std::sqrt(M_PI);
    check_imag(acc2.real(), acc2.imag(), std::abs(acc2) + 1.0, "partition hermite form");

    // measure the discrepancy against the nu=0 scale so that exact zeros of
    // Z_nu (e.g. nu=1 at m_hat = z_hat = 0) do not masquerade as failures
    double z0scale = 0.01 * bessel_i_entire(0, cd(mp.m_hat * mp.m_hat)).real();
    double scale = std::max({std::abs(theta_form), std::abs(hermite_form), z0scale});
    double rel = std::abs(theta_form - hermite_form) / scale;
    return PartitionResult{theta_form, hermite_form, rel, rel <= 1e-8};
}

ConvergenceReport micro_convergence_check(const MicroParams& mp, int nu,
                                          const std::vector<int>& ns,
                                          const std::vector<double>& grid) {
    ConvergenceReport rep;
    rep.ns = ns;
    std::vector<double> target(grid.size());
    MicroParams mpn(mp.m_hat, mp.a_hat, mp.z_hat, nu);
    parallel_for(static_cast<int>(grid.size()), [&](int i) {
        target[i] = (nu == 0) ? rho_s(grid[i], MicroParams(mp.m_hat, mp.a_hat, 0.0, 0))
                              : rho_s_nu1(grid[i], mpn);
    });
    for (int n : ns) {
        ModelParams p = mp.finite_n(n, nu);
        KernelSet ks(p, KernelSet::Path::ChristoffelDarboux);
        double scale = std::sqrt(2.0 * n);
        std::vector<double> d(grid.size());
        parallel_for(static_cast<int>(grid.size()), [&](int i) {
            double fn = ks.rho1(grid[i] / scale) / scale;
            d[i] = std::abs(fn - target[i]);
        });
        double sup = 0.0;
        for (double v : d) sup = std::max(sup, v);
        rep.sup_distance.push_back(sup);
    }
    rep.monotone = true;
    for (size_t i = 1; i < rep.sup_distance.size(); ++i)
        if (rep.sup_distance[i] > rep.sup_distance[i - 1] * 1.05 + 1e-4) rep.monotone = false;
    return rep;
}

DensityCurve rho_s_curve(const MicroParams& mp, const std::vector<double>& grid) {
    DensityCurve curve;
    curve.grid = grid;
    curve.values.resize(grid.size());
    parallel_for(static_cast<int>(grid.size()), [&](int i) {
        curve.values[i] = (mp.nu == 0) ? rho_s(grid[i], mp) : rho_s_nu1(grid[i], mp);
    });
    curve.meta["kind"] = (mp.nu == 0) ? "rho_s" : "rho_s_nu1";
    curve.meta["m_hat"] = std::to_string(mp.m_hat);
    curve.meta["a_hat"] = std::to_string(mp.a_hat);
    curve.meta["nu"] = std::to_string(mp.nu);
    return curve;
}

}  // namespace wrmt
