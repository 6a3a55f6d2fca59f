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
#include <vector>

#include "wrmt/logval.hpp"

namespace wrmt {

/// Generalized Laguerre polynomial L_n^{(alpha)}(z) by the three-term
/// recurrence. Total function; overflows to inf for arguments far outside the
/// documented degree/argument ranges.
std::complex<double> laguerre(int degree, int alpha, std::complex<double> z);
double laguerre(int degree, int alpha, double z);

/// All L_j^{(alpha)}(z) for j = 0..degmax in one recurrence pass.
void laguerre_all(int degmax, int alpha, std::complex<double> z,
                  std::complex<double>* out);

/// Bessel function of the first kind, integer order >= 0.
/// Power series for |x| <= 12 (the series is the reference oracle there),
/// Miller downward recurrence above.
double bessel_j(int order, double x);
inline constexpr double kBesselJSeriesCut = 12.0;

/// Entire modified-Bessel kernel
///   Ihat_nu(u) = sum_k (u/4)^k / (k! (k+nu)!),
/// so that I_nu(sqrt(u)) = (u/4)^{nu/2} Ihat_nu(u). Every sqrt(m^2 - w^2) of
/// complex argument in the model is routed through Ihat, which has no branch
/// cut. Ihat_nu(0) = 1/nu!.
std::complex<double> bessel_i_entire(int order, std::complex<double> u);

/// Ihat_0(u) and Ihat_1(u) together (shared series pass).
void bessel_i_entire01(std::complex<double> u, std::complex<double>& i0,
                       std::complex<double>& i1);

/// Error function; odd symmetry holds exactly by construction.
double erf(double x);

/// Scaled complementary error function exp(t^2) erfc(t) for t >= 0.
/// Direct product for t <= 25, asymptotic series above.
double erfc_scaled(double t);
inline constexpr double kErfcScaledCut = 25.0;

/// erf(A+B) + erf(A-B) for B >= 0, the bracket of the antisymmetric weight F.
/// Returned in sign/log form; evaluated through scaled erfc differences (or a
/// Taylor expansion around A=0) when both erf arguments would cancel.
LogVal erf_bracket(double A, double B);

}  // namespace wrmt
