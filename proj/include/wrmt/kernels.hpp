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

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "wrmt/density.hpp"
#include "wrmt/logval.hpp"
#include "wrmt/params.hpp"
#include "wrmt/quadrature.hpp"
#include "wrmt/sop.hpp"

namespace wrmt {

/// Gaussian weight w(x) = e^{-x^2/(4a^2)}.
LogVal weight_w(double x, const ModelParams& p);
/// Mass weight f(x) = e^{-m x/(2a^2)}.
LogVal weight_f(double x, const ModelParams& p);
/// Antisymmetric weight
///   F(x) = e^{x^2(1-a^2)/(8a^2)} [erf(x sqrt(1-a^2)/sqrt(8a^2) + m/sqrt(2a^2(1-a^2)))
///                               + erf(x sqrt(1-a^2)/sqrt(8a^2) - m/sqrt(2a^2(1-a^2)))].
LogVal weight_F(double x, const ModelParams& p);

/// The three kernels S_n, D_n, I_n of the Pfaffian point process, for nu = 0
/// and nu = 1, with two independent evaluation paths:
///   SumOverPolynomials — sums over R_j / phi_j with the closed-form norms;
///   ChristoffelDarboux — the telescoped double Gauss-Hermite form for D plus
///                        the integral relations for S and I.
/// Immutable after construction; evaluations are pure and thread-safe.
class KernelSet {
  public:
    enum class Path { SumOverPolynomials, ChristoffelDarboux };

    /// hermite_order drives the polynomial transforms and z-integrals;
    /// cd_order the double Gauss-Hermite sums of the telescoped kernel forms
    /// (its integrands are low-degree, order 64 is exact to ~1e-10 there).
    explicit KernelSet(const ModelParams& p, Path path = Path::ChristoffelDarboux,
                       int hermite_order = kHermiteOrder, int cd_order = 64);

    const ModelParams& params() const { return p_; }
    Path path() const { return path_; }

    LogVal S(double x, double y) const;
    LogVal D(double x, double y) const;
    LogVal I(double x, double y) const;

    /// Spectral density rho_1(x) = S_n(x,x).
    double rho1(double x) const;
    /// Two-point function rho_2(x,y) = S(x,x)S(y,y) + I(x,y)D(x,y) - S(x,y)S(y,x).
    double rho2(double x, double y) const;
    /// k-point correlator as a 2k x 2k Pfaffian; coincident points give
    /// exactly 0.
    double rho_k(const std::vector<double>& points) const;

    DensityCurve rho1_curve(const std::vector<double>& grid) const;

    /// Precomputed per-point tables for bulk sum-path evaluation.
    struct Point {
        double x;
        LogVal w, f;
        std::vector<double> R;       // R_j(x)  (nu=1: the modified family)
        std::vector<LogVal> phi;     // phi_j(x)
    };
    Point make_point(double x) const;
    LogVal S_pt(const Point& X, const Point& Y) const;
    LogVal D_pt(const Point& X, const Point& Y) const;
    LogVal I_pt(const Point& X, const Point& Y) const;
    double rho2_pt(const Point& X, const Point& Y) const;

  private:
    struct CDSide {
        std::vector<std::complex<double>> u, ln, lnm1;
        std::complex<double> P{0.0}, G{0.0};
    };
    CDSide cd_side(double v, bool with_corr) const;
    double cd_combine(const CDSide& sx, const CDSide& sy, double* corr_out) const;

    LogVal S_cd(double x, double y) const;
    LogVal I_rel(double x, double y) const;
    LogVal D_cd(double x, double y) const;

    ModelParams p_;
    Path path_;
    int order_;
    int cd_order_;
    double logs2n_ = 0.0;  // log |s_{N-1}| for nu=1
    int s2n_sign_ = 1;
    std::vector<LogVal> inv_r_;  // 1/r_j, cached
};

/// Free-function kernels per the nu = 0 contract.
double kernel_D(double x, double y, const ModelParams& p);
double kernel_S(double x, double y, const ModelParams& p);
double kernel_I(double x, double y, const ModelParams& p);

struct KernelTriple {
    double S, D, I;
};
/// nu = 1 kernel triple.
KernelTriple kernels_nu1(double x, double y, const ModelParams& p);

double rho1(double x, const ModelParams& p);
double rho2(double x, double y, const ModelParams& p);
double rho_k(const std::vector<double>& points, const ModelParams& p);

/// Finite-n chGUE reference density (nu = 0 or 1), Laguerre sums.
double chgue_density_finite(double y, int n, int nu);

/// Mass-shift map: rho(x) = |x|/sqrt(x^2-m^2) rho_base(sqrt(x^2-m^2)) for
/// |x| > m, 0 otherwise.
std::function<double(double)> shift_map(std::function<double(double)> base, double m);

}  // namespace wrmt
