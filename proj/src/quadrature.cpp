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

#include "wrmt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "wrmt/linalg.hpp"

namespace wrmt {

QuadratureRule gauss_rule(QuadKind kind, int order) {
    if (order < 1 || order > kMaxQuadOrder)
        throw std::invalid_argument("gauss_rule: order must be in [1, 512]");
    const int n = order;
    std::vector<double> d(n, 0.0), e(n, 0.0);
    double mu0;
    if (kind == QuadKind::GaussHermite) {
        mu0 = std::sqrt(M_PI);
        for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(k / 2.0);
    } else {
        mu0 = 2.0;
        for (int k = 1; k < n; ++k) e[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    }
    std::vector<double> z(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) z[i * n + i] = 1.0;
    tridiag_ql(d, e, z.data());

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });

    QuadratureRule rule{kind, order, std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = d[idx[i]];
        double v = z[0 * n + idx[i]];
        rule.weights[i] = mu0 * v * v;
    }
    // both rules are symmetric about 0; enforce the symmetry exactly
    for (int i = 0, j = n - 1; i < j; ++i, --j) {
        double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = rule.weights[j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;

    for (int i = 0; i < n; ++i) {
        if (!(rule.weights[i] > 0.0))
            throw std::runtime_error("gauss_rule: weight underflow, order beyond stability cap");
        if (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1]))
            throw std::runtime_error("gauss_rule: nodes not strictly increasing");
    }
    return rule;
}

const QuadratureRule& shared_rule(QuadKind kind, int order) {
    static std::map<std::pair<int, int>, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(static_cast<int>(kind), order);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, gauss_rule(kind, order)).first;
    return it->second;
}

}  // namespace wrmt
