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

#include <functional>
#include <vector>

#include "wrmt/logval.hpp"
#include "wrmt/quadrature.hpp"

namespace wrmt {

/// Integrand exp(A z^2 + B z + C) * g(z) with A < 0. The Gaussian exponent is
/// carried analytically; g supplies bounded-or-log-valued residual factors
/// (erf brackets, polynomial quadrature sums).
struct GaussIntegrand {
    double A, B, C;
    std::function<void(double z, LogVal* out)> g;  // fills `dims` components
    int dims = 1;
    /// Additional exponent peaks (erf-bracket transition points); the adaptive
    /// fallback widens its window to cover them.
    std::vector<double> peaks;
};

/// integral over the real line of exp(A z^2 + B z + C) g(z) dz, one LogVal per
/// component. Gauss-Hermite after completing the square; escalates to an
/// adaptive log-domain Simpson rule when the edge nodes still carry weight
/// (shifted true peak) or when force_adaptive is set (the documented m/a > 20
/// fallback).
std::vector<LogVal> integrate_gaussian(const GaussIntegrand& f, const QuadratureRule& gh,
                                       bool force_adaptive = false);

/// Composite Gauss-Legendre integral of a plain double integrand on [lo, hi].
double integrate_panels(const std::function<double(double)>& f, double lo, double hi,
                        int panels, int order = kLegendreOrder);

}  // namespace wrmt
