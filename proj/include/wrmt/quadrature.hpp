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

#include <stdexcept>
#include <vector>

namespace wrmt {

enum class QuadKind { GaussHermite, GaussLegendre };

/// Gaussian quadrature rule. Immutable after construction.
///   GaussHermite:  integral e^{-x^2} f(x) dx      ~ sum w_k f(x_k)
///   GaussLegendre: integral_{-1}^{1} f(x) dx      ~ sum w_k f(x_k)
struct QuadratureRule {
    QuadKind kind;
    int order;
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // all positive
};

/// Maximum supported order; above this the smallest Gauss-Hermite weights
/// underflow double precision and the rule cannot satisfy its invariants.
inline constexpr int kMaxQuadOrder = 512;

/// Build a rule by Golub-Welsch (symmetric tridiagonal eigenvalue problem).
/// Throws std::invalid_argument for order < 1 or order > kMaxQuadOrder, and
/// std::runtime_error if a computed weight is not strictly positive.
QuadratureRule gauss_rule(QuadKind kind, int order);

/// Process-wide cached rules (thread-safe, shared read-only).
const QuadratureRule& shared_rule(QuadKind kind, int order);

/// Default orders used throughout the analytic formulas.
inline constexpr int kHermiteOrder = 128;
inline constexpr int kLegendreOrder = 64;

}  // namespace wrmt
