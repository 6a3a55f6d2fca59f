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

#include <vector>

#include "wrmt/logval.hpp"
#include "wrmt/params.hpp"
#include "wrmt/quadrature.hpp"

namespace wrmt {

/// Monic skew-orthogonal polynomials of the transition weight, as Gaussian
/// integral transforms of Laguerre polynomials:
///
///   R_{2j}(x)   = pref_j * integral ds e^{-s^2} L_j(((x+2ias)^2 - m^2)/(2(1-a^2)))
///   R_{2j+1}(x) = pref_j * integral ds e^{-s^2} (x+2ias) L_j(...)
///   pref_j      = j! 2^j (1-a^2)^j / ((-1)^j sqrt(pi))
///
/// Supported degree cap (with the default order-128 Hermite rule).
inline constexpr int kDegreeCap = 64;

/// R_0 .. R_degmax at one point, single recurrence pass over the shared
/// Hermite rule. Throws numerical_error if the imaginary quadrature residual
/// exceeds 1e-9 of the result scale.
std::vector<double> sop_values(const ModelParams& p, int degmax, double x,
                               int order = kHermiteOrder);

double r_even(int j, double x, const ModelParams& p);  // R_{2j}
double r_odd(int j, double x, const ModelParams& p);   // R_{2j+1}

/// Squared norm r_j = <R_{2j}, R_{2j+1}>.
double norm_r(int j, const ModelParams& p);
LogVal norm_r_log(int j, const ModelParams& p);

/// nu=1 expansion coefficients s_j = integral dx w(x) f(x) R_j(x), in
/// sign/log form (they carry e^{m^2/(4a^2)}).
LogVal coeff_s(int j, const ModelParams& p);

/// s_j / s_{N-1} with N = 2n+1; the exponential factors cancel.
double coeff_s_ratio(int j, const ModelParams& p);

/// Modified family R_j^{nu=1} = R_j - (s_j/s_{N-1}) R_{N-1} (top one unchanged).
double r_nu1(int j, double x, const ModelParams& p);
std::vector<double> sop_nu1_values(const ModelParams& p, double x, int order = kHermiteOrder);

/// <det(z + D5)>_N for any nu >= 0 (equals R_{2n}(z) at nu = 0).
double char_poly_avg(double z, const ModelParams& p);

/// Integral transforms phi_j(x) = integral dy w(y) F(x-y) R_j(y), j = 0..degmax,
/// in sign/log form.
std::vector<LogVal> phi_values(const ModelParams& p, int degmax, double x,
                               int order = kHermiteOrder);
/// nu=1 transforms phi_j^{nu=1}; degmax fixed to N-1 = 2n.
std::vector<LogVal> phi_nu1_values(const ModelParams& p, double x, int order = kHermiteOrder);

/// Gram matrix of the skew product <R_i, R_j> for i,j <= degmax, evaluated
/// through the integral representation of F (outer u-integral over Gaussian
/// transforms of the polynomials). Independent of the closed-form norms.
std::vector<std::vector<double>> skew_gram(const ModelParams& p, int degmax,
                                           int order = kHermiteOrder);

/// One skew product <R_di, R_dj> from the same machinery.
double skew_product(const ModelParams& p, int deg_i, int deg_j, int order = kHermiteOrder);

}  // namespace wrmt
