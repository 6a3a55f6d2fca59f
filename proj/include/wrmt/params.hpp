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

#include <cmath>
#include <stdexcept>

namespace wrmt {

/// Raised when a quadrature residual, truncation window or eigensolver
/// diagnostic indicates an untrustworthy numerical result.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ensemble configuration of the chGUE-GUE transition model.
/// The operator dimension is N = 2n + nu. The transition parameter a lies
/// strictly inside (0,1); the a -> 0 and a -> 1 endpoints are served by the
/// dedicated chGUE / GUE limit formulas, because the weights carry 1/a^2 and
/// 1/(1-a^2) singularities.
struct ModelParams {
    int n;       // half matrix size, > 0
    int nu;      // index (zero modes of the a=0 limit), >= 0
    double a;    // transition parameter, 0 < a < 1
    double m;    // quark mass, >= 0

    ModelParams(int n_, int nu_, double a_, double m_) : n(n_), nu(nu_), a(a_), m(m_) {
        if (n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
        if (nu < 0) throw std::invalid_argument("ModelParams: nu must be >= 0");
        if (!(a > 0.0 && a < 1.0))
            throw std::invalid_argument("ModelParams: a must lie strictly in (0,1)");
        if (!(m >= 0.0)) throw std::invalid_argument("ModelParams: m must be >= 0");
    }

    int N() const { return 2 * n + nu; }

    /// Microscopic counterparts under the origin rescaling:
    /// m_hat = m sqrt(N), a_hat = (a/2) sqrt(2n).
    double m_hat() const { return m * std::sqrt(static_cast<double>(N())); }
    double a_hat() const { return 0.5 * a * std::sqrt(2.0 * n); }
};

/// Microscopic (weakly non-chiral) parameters. In the effective-theory
/// dictionary m_hat = m_p Sigma V and a_hat^2 = a_p^2 V W_8; on the matrix
/// side m_hat = m sqrt(N), a_hat = (a/2) sqrt(2n), z_hat = z sqrt(N).
struct MicroParams {
    double m_hat;  // >= 0
    double a_hat;  // >= 0 (> 0 for the transition densities)
    double z_hat = 0.0;
    int nu = 0;

    MicroParams(double mh, double ah, double zh = 0.0, int nu_ = 0)
        : m_hat(mh), a_hat(ah), z_hat(zh), nu(nu_) {
        if (!(m_hat >= 0.0)) throw std::invalid_argument("MicroParams: m_hat must be >= 0");
        if (!(a_hat >= 0.0)) throw std::invalid_argument("MicroParams: a_hat must be >= 0");
        if (nu < 0) throw std::invalid_argument("MicroParams: nu must be >= 0");
    }

    /// Finite-n parameters reproducing (m_hat, a_hat) at given (n, nu).
    ModelParams finite_n(int n, int nu_) const {
        double a = 2.0 * a_hat / std::sqrt(2.0 * n);
        double m = m_hat / std::sqrt(2.0 * n + nu_);
        return ModelParams(n, nu_, a, m);
    }
};

}  // namespace wrmt
