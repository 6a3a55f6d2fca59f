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

#include "wrmt/sop.hpp"

#include <cmath>
#include <complex>

#include "wrmt/gauss_integrate.hpp"
#include "wrmt/special.hpp"

namespace wrmt {

using cd = std::complex<double>;

namespace {

void check_residual(double re, double im, double scale, const char* what) {
    double tol = 1e-9 * std::max(std::abs(re), 1e-3 * scale);
    if (std::abs(im) > tol && std::abs(im) > 1e-280)
        throw numerical_error(std::string(what) + ": imaginary quadrature residual too large");
}

}  // namespace

std::vector<double> sop_values(const ModelParams& p, int degmax, double x, int order) {
    if (degmax > kDegreeCap)
        throw std::invalid_argument("sop_values: degree beyond the supported cap");
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, order);
    const int jmax = degmax / 2;  // Laguerre degrees needed
    const double c = 2.0 * (1.0 - p.a * p.a);

    std::vector<cd> acc_even(jmax + 1, cd(0.0)), acc_odd(jmax + 1, cd(0.0));
    std::vector<cd> L(jmax + 1);
    double scale = 0.0;
    for (int k = 0; k < gh.order; ++k) {
        cd xs(x, 2.0 * p.a * gh.nodes[k]);
        cd z = (xs * xs - p.m * p.m) / c;
        laguerre_all(jmax, 0, z, L.data());
        for (int j = 0; j <= jmax; ++j) {
            cd t = gh.weights[k] * L[j];
            acc_even[j] += t;
            acc_odd[j] += xs * t;
            scale = std::max(scale, std::abs(t));
        }
    }
    std::vector<double> out(degmax + 1);
    double pref = 1.0 / std::sqrt(M_PI);  // j = 0
    for (int j = 0; j <= jmax; ++j) {
        if (j > 0) pref *= -j * c;  // pref_j = pref_{j-1} * (-1) * j * 2(1-a^2)
        if (2 * j <= degmax) {
            check_residual(acc_even[j].real(), acc_even[j].imag(), scale, "r_even");
            out[2 * j] = pref * acc_even[j].real();
        }
        if (2 * j + 1 <= degmax) {
            check_residual(acc_odd[j].real(), acc_odd[j].imag(), scale * (std::abs(x) + 1.0), "r_odd");
            out[2 * j + 1] = pref * acc_odd[j].real();
        }
    }
    return out;
}

double r_even(int j, double x, const ModelParams& p) { return sop_values(p, 2 * j, x)[2 * j]; }
double r_odd(int j, double x, const ModelParams& p) { return sop_values(p, 2 * j + 1, x)[2 * j + 1]; }

LogVal norm_r_log(int j, const ModelParams& p) {
    double a2 = p.a * p.a;
    double lg = std::log(8.0) + 0.5 * std::log(2.0 * M_PI * a2) +
                (2.0 * j + 0.5) * std::log1p(-a2) + 2.0 * j * std::log(2.0) +
                2.0 * std::lgamma(j + 1.0) - p.m * p.m / (2.0 * (1.0 - a2));
    return LogVal{1, lg};
}

double norm_r(int j, const ModelParams& p) { return norm_r_log(j, p).value(); }

LogVal coeff_s(int j, const ModelParams& p) {
    // s_{2t} = (-1)^t t! 2^{t+1} (1-a^2)^t sqrt(pi) a e^{m^2/(4a^2)},  s_{2t+1} = -m s_{2t}
    int t = j / 2;
    double a2 = p.a * p.a;
    double lg = std::lgamma(t + 1.0) + (t + 1.0) * std::log(2.0) + t * std::log1p(-a2) +
                0.5 * std::log(M_PI) + std::log(p.a) + p.m * p.m / (4.0 * a2);
    int sign = (t % 2 == 0) ? 1 : -1;
    if (j % 2 == 0) return LogVal{sign, lg};
    if (p.m == 0.0) return LogVal::zero();
    return LogVal{-sign, lg + std::log(p.m)};
}

double coeff_s_ratio(int j, const ModelParams& p) {
    // s_j / s_{2n}; the e^{m^2/(4a^2)} factor cancels
    int t = j / 2;
    int n = p.n;
    double lg = std::lgamma(t + 1.0) - std::lgamma(n + 1.0) +
                (t - n) * (std::log(2.0) + std::log1p(-p.a * p.a));
    double r = ((t - n) % 2 == 0 ? 1.0 : -1.0) * std::exp(lg);
    if (j % 2 == 0) return r;
    return -p.m * r;
}

std::vector<double> sop_nu1_values(const ModelParams& p, double x, int order) {
    if (p.nu != 1) throw std::invalid_argument("sop_nu1_values: requires nu = 1");
    const int top = 2 * p.n;  // N - 1
    std::vector<double> base = sop_values(p, top, x, order);
    std::vector<double> out(top + 1);
    for (int j = 0; j < top; ++j) out[j] = base[j] - coeff_s_ratio(j, p) * base[top];
    out[top] = base[top];
    return out;
}

double r_nu1(int j, double x, const ModelParams& p) {
    if (j > 2 * p.n) throw std::invalid_argument("r_nu1: j must be <= N-1");
    return sop_nu1_values(p, x)[j];
}

double char_poly_avg(double z, const ModelParams& p) {
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, kHermiteOrder);
    const double c = 2.0 * (1.0 - p.a * p.a);
    cd acc(0.0);
    double scale = 0.0;
    for (int k = 0; k < gh.order; ++k) {
        cd zt(z, 2.0 * p.a * gh.nodes[k]);
        cd arg = (zt * zt - p.m * p.m) / c;
        cd v = laguerre(p.n, p.nu, arg);
        cd powf(1.0);
        for (int q = 0; q < p.nu; ++q) powf *= (zt - p.m);
        cd t = gh.weights[k] * powf * v;
        acc += t;
        scale = std::max(scale, std::abs(t));
    }
    check_residual(acc.real(), acc.imag(), scale, "char_poly_avg");
    // n! (2(1-a^2))^{n+nu/2} / ((-1)^n sqrt(pi)), the nu/2 power absorbed into
    // the integer (z+2iat-m)^nu factor above
    double pref = std::exp(std::lgamma(p.n + 1.0) + p.n * std::log(c)) / std::sqrt(M_PI);
    if (p.n % 2) pref = -pref;
    return pref * acc.real();
}

std::vector<LogVal> phi_values(const ModelParams& p, int degmax, double x, int order) {
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, order);
    const double a2 = p.a * p.a;
    const double brA = std::sqrt(1.0 - a2) / (2.0 * std::sqrt(2.0) * p.a);
    const double brB = p.m / (std::sqrt(2.0) * p.a * std::sqrt(1.0 - a2));

    GaussIntegrand f;
    f.A = -(1.0 + a2) / (8.0 * a2);
    f.B = -x * (1.0 - a2) / (4.0 * a2);
    f.C = x * x * (1.0 - a2) / (8.0 * a2);
    f.dims = degmax + 1;
    f.peaks = {x - 2.0 * p.m / (1.0 - a2), x + 2.0 * p.m / (1.0 - a2)};
    f.g = [&](double y, LogVal* out) {
        LogVal bracket = erf_bracket(brA * (x - y), brB);
        if (bracket.sign == 0) {
            for (int j = 0; j <= degmax; ++j) out[j] = LogVal::zero();
            return;
        }
        std::vector<double> R = sop_values(p, degmax, y, order);
        for (int j = 0; j <= degmax; ++j) out[j] = bracket * LogVal::of(R[j]);
    };
    // the edge diagnostic inside integrate_gaussian escalates to the adaptive
    // rule when the erf bracket shifts the true peak out of the GH window
    // (only possible for m/a > 20)
    return integrate_gaussian(f, gh, false);
}

std::vector<LogVal> phi_nu1_values(const ModelParams& p, double x, int order) {
    const int top = 2 * p.n;
    std::vector<LogVal> base = phi_values(p, top, x, order);
    std::vector<LogVal> out(top + 1);
    for (int j = 0; j < top; ++j)
        out[j] = base[j] - LogVal::of(coeff_s_ratio(j, p)) * base[top];
    out[top] = base[top];
    return out;
}

std::vector<std::vector<double>> skew_gram(const ModelParams& p, int degmax, int order) {
    // <h,g> = C_F/2 * 4a^2 * integral_m^inf du e^{-u^2/(2(1-a^2))}
    //         [G_g(u) G_h(-u) - G_g(-u) G_h(u)],
    // G_f(u) = sum_k w_k f(u + 2a xi_k), from F's integral representation.
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, order);
    const QuadratureRule& gl = shared_rule(QuadKind::GaussLegendre, kLegendreOrder);
    const double a2 = p.a * p.a;
    const double sig = std::sqrt(1.0 - a2);
    const double cf = 4.0 / std::sqrt(2.0 * M_PI * a2 * (1.0 - a2)) * 4.0 * a2;

    // u panels on [m, m + reach]
    const double reach = sig * (std::sqrt(2.0 * degmax + 1.0) + 10.0);
    const int panels = 8;
    std::vector<double> unodes;
    std::vector<double> uweights;
    for (int pa = 0; pa < panels; ++pa) {
        double lo = p.m + reach * pa / panels, hi = p.m + reach * (pa + 1) / panels;
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int k = 0; k < gl.order; ++k) {
            unodes.push_back(mid + half * gl.nodes[k]);
            uweights.push_back(half * gl.weights[k]);
        }
    }

    const int nu = static_cast<int>(unodes.size());
    // G[d][i] = G_{R_d}(+u_i); parity gives G_{R_d}(-u) = (-1)^d G_{R_d}(u)
    std::vector<std::vector<double>> G(degmax + 1, std::vector<double>(nu, 0.0));
    for (int i = 0; i < nu; ++i) {
        for (int k = 0; k < gh.order; ++k) {
            std::vector<double> R = sop_values(p, degmax, unodes[i] + 2.0 * p.a * gh.nodes[k], order);
            for (int d = 0; d <= degmax; ++d) G[d][i] += gh.weights[k] * R[d];
        }
    }
    std::vector<std::vector<double>> gram(degmax + 1, std::vector<double>(degmax + 1, 0.0));
    for (int dh = 0; dh <= degmax; ++dh) {
        for (int dg = 0; dg <= degmax; ++dg) {
            if ((dh + dg) % 2 == 0) continue;  // same parity vanishes exactly
            double s = 0.0;
            for (int i = 0; i < nu; ++i) {
                double u = unodes[i];
                double w = uweights[i] * std::exp(-u * u / (2.0 * (1.0 - a2)));
                double gg = G[dg][i], hh = G[dh][i];
                double sgn_g = (dg % 2) ? -1.0 : 1.0;  // G_g(-u) = sgn_g G_g(u)
                double sgn_h = (dh % 2) ? -1.0 : 1.0;
                s += w * (gg * hh * sgn_h - sgn_g * gg * hh);
            }
            gram[dh][dg] = 0.5 * cf * s;
        }
    }
    return gram;
}

double skew_product(const ModelParams& p, int deg_i, int deg_j, int order) {
    int degmax = std::max(deg_i, deg_j);
    return skew_gram(p, degmax, order)[deg_i][deg_j];
}

}  // namespace wrmt
