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

#include "wrmt/pfaffian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wrmt {

AntisymmetricMatrix AntisymmetricMatrix::from_upper(int dim, const std::vector<double>& upper) {
    if (static_cast<int>(upper.size()) != dim * (dim - 1) / 2)
        throw std::invalid_argument("AntisymmetricMatrix: wrong upper-triangle size");
    AntisymmetricMatrix m(dim);
    size_t p = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) m.set(i, j, upper[p++]);
    return m;
}

namespace {
constexpr double kPivotRel = 1e-13;
}

LogVal pfaffian(AntisymmetricMatrix a) {
    const int n = a.dim();
    if (n == 0) return LogVal::one();
    if (n % 2) return LogVal::zero();
    double* m = a.data().data();
    auto at = [&](int i, int j) -> double& { return m[static_cast<size_t>(i) * n + j]; };

    double scale0 = 0.0;
    for (size_t i = 0; i < a.data().size(); ++i) scale0 = std::max(scale0, std::abs(a.data()[i]));
    if (scale0 == 0.0) return LogVal::zero();

    int sign = 1;
    double logmag = 0.0;
    for (int k = 0; k + 1 < n; k += 2) {
        // pivot: largest |A(i,k)| for i > k
        int kp = k + 1;
        for (int i = k + 2; i < n; ++i)
            if (std::abs(at(i, k)) > std::abs(at(kp, k))) kp = i;
        if (kp != k + 1) {
            for (int j = 0; j < n; ++j) std::swap(at(k + 1, j), at(kp, j));
            for (int i = 0; i < n; ++i) std::swap(at(i, k + 1), at(i, kp));
            sign = -sign;
        }
        double submax = 0.0;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) submax = std::max(submax, std::abs(at(i, j)));
        double piv = at(k + 1, k);
        if (std::abs(piv) <= kPivotRel * submax) return LogVal::zero();

        sign *= (piv > 0) ? -1 : 1;  // Pf contribution is A(k,k+1) = -A(k+1,k)
        logmag += std::log(std::abs(piv));

        // eliminate column k below row k+1 (and the mirrored row entries)
        for (int i = k + 2; i < n; ++i) {
            double tau = at(i, k) / piv;
            if (tau == 0.0) continue;
            for (int j = k; j < n; ++j) at(i, j) -= tau * at(k + 1, j);
            for (int j = k; j < n; ++j) at(j, i) -= tau * at(j, k + 1);
        }
    }
    return LogVal{sign, logmag};
}

LogVal pfaffian_bordered(const AntisymmetricMatrix& f_block,
                         const std::vector<std::vector<double>>& border) {
    const int base = f_block.dim();
    const int cols = static_cast<int>(border.empty() ? 0 : border[0].size());
    if (!border.empty() && static_cast<int>(border.size()) != base)
        throw std::invalid_argument("pfaffian_bordered: border must have one row per base row");
    if ((base + cols) % 2)
        throw std::invalid_argument("pfaffian_bordered: assembled dimension must be even");
    if (cols == 0) return pfaffian(f_block);

    AntisymmetricMatrix full(base + cols);
    for (int i = 0; i < base; ++i)
        for (int j = i + 1; j < base; ++j) full.set(i, j, f_block(i, j));
    for (int i = 0; i < base; ++i)
        for (int q = 0; q < cols; ++q) full.set(i, base + q, border[i][q]);
    return pfaffian(std::move(full));
}

namespace {
// recursive expansion over perfect matchings, exact in sign/log arithmetic;
// used for the small Pfaffians of the jpdf and correlator blocks
LogVal pfaffian_log_small(int dim, const std::vector<LogVal>& e, unsigned mask) {
    if (mask == 0) return LogVal::one();
    int i = 0;
    while (!(mask & (1u << i))) ++i;
    LogSum acc;
    int between = 0;
    for (int j = i + 1; j < dim; ++j) {
        if (!(mask & (1u << j))) continue;
        const LogVal& a = e[static_cast<size_t>(i) * dim + j];
        if (a.sign != 0) {
            LogVal sub = pfaffian_log_small(dim, e, mask & ~(1u << i) & ~(1u << j));
            LogVal term = a * sub;
            if (between % 2) term = -term;
            acc.add(term);
        }
        ++between;
    }
    return acc.total();
}
}  // namespace

LogVal pfaffian_log(int dim, const std::vector<LogVal>& entries) {
    if (dim % 2) return LogVal::zero();
    if (dim == 0) return LogVal::one();
    if (dim <= 8) return pfaffian_log_small(dim, entries, (1u << dim) - 1);
    // equilibrate by a diagonal congruence D A D, d_i = exp(-c_i), with the
    // c_i balanced iteratively so every row maximum lands near 1
    auto ent = [&](int i, int j) -> const LogVal& {
        return entries[static_cast<size_t>(i) * dim + j];
    };
    std::vector<double> c(dim, 0.0);
    for (int pass = 0; pass < 60; ++pass) {
        double worst = 0.0;
        for (int i = 0; i < dim; ++i) {
            double rmax = -std::numeric_limits<double>::infinity();
            for (int j = 0; j < dim; ++j)
                if (ent(i, j).sign != 0) rmax = std::max(rmax, ent(i, j).log - c[i] - c[j]);
            if (!std::isfinite(rmax)) return LogVal::zero();  // zero row
            c[i] += 0.5 * rmax;
            worst = std::max(worst, std::abs(rmax));
        }
        if (worst < 0.5) break;
    }
    AntisymmetricMatrix scaled(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            const LogVal& e = ent(i, j);
            if (e.sign == 0) continue;
            scaled.set(i, j, e.sign * std::exp(e.log - c[i] - c[j]));
        }
    LogVal pf = pfaffian(std::move(scaled));
    if (pf.sign == 0) return pf;
    double shift = 0.0;
    for (int i = 0; i < dim; ++i) shift += c[i];
    return LogVal{pf.sign, pf.log + shift};
}

}  // namespace wrmt
