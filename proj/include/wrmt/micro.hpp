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

#include "wrmt/density.hpp"
#include "wrmt/params.hpp"

namespace wrmt {

/// Limiting polynomials of the weakly non-chiral origin limit, with j = t n,
/// t in [0,1]; every sqrt(m^2 - w^2) routed through the entire Bessel kernel.
double limit_poly_even(double t, double x_hat, const MicroParams& mp);
double limit_poly_odd(double t, double x_hat, const MicroParams& mp);

/// Quenched nu=0 microscopic density rho_S(x_hat). Default path is the
/// telescoped (Christoffel-Darboux) double-integral form; rho_s_form1 is the
/// independent t-integral form used for cross-checks.
double rho_s(double x_hat, const MicroParams& mp);
double rho_s_form1(double x_hat, const MicroParams& mp);

/// nu=1 microscopic density: rho_S plus the erf-bracket correction plus the
/// broadened zero mode. rho_s_nu1_zero_term exposes the Gaussian zero-mode
/// term alone (it integrates to 1).
double rho_s_nu1(double x_hat, const MicroParams& mp);
double rho_s_nu1_zero_term(double x_hat, const MicroParams& mp);

/// Microscopic chGUE reference laws:
///   nu=0: (|x|/2)(J_0^2 + J_1^2),  nu=1: (|x|/2)(J_1^2 - J_0 J_2).
double chgue_density_micro(double x_hat, int nu);

/// N_f = 1 partition function in the microscopic limit, computed through both
/// representations (theta integral / Gauss-Hermite with entire Bessel kernels).
struct PartitionResult {
    double theta_form;
    double hermite_form;
    double rel_discrepancy;
    bool ok;  // discrepancy <= 1e-8
};
PartitionResult partition_nf1_micro(const MicroParams& mp);

/// Convergence of the rescaled finite-n density towards the microscopic one.
struct ConvergenceReport {
    std::vector<int> ns;
    std::vector<double> sup_distance;  // per n, on the given grid
    bool monotone;                     // distances decrease (within noise)
};
ConvergenceReport micro_convergence_check(const MicroParams& mp, int nu,
                                          const std::vector<int>& ns,
                                          const std::vector<double>& grid);

/// Microscopic density curve (nu = 0 or 1) on a grid.
DensityCurve rho_s_curve(const MicroParams& mp, const std::vector<double>& grid);

}  // namespace wrmt
