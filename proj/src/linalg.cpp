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

#include "wrmt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wrmt {

namespace {
inline double hypot2(double a, double b) { return std::hypot(a, b); }
}  // namespace

void tridiag_ql(std::vector<double>& d, std::vector<double>& e, double* z) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n, 0.0);  // e[n-1] used as workspace
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m == l) break;
            if (++iter >= 60) throw eigensolver_error("tridiag_ql: no convergence");
            // Wilkinson shift
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = hypot2(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = hypot2(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (z) {
                    for (int k = 0; k < n; ++k) {
                        double zk1 = z[k * n + i + 1];
                        double zk0 = z[k * n + i];
                        z[k * n + i + 1] = s * zk0 + c * zk1;
                        z[k * n + i] = c * zk0 - s * zk1;
                    }
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
}

void hermitian_tridiagonalize(std::vector<std::complex<double>>& a, int n,
                              std::vector<double>& diag, std::vector<double>& sub,
                              std::vector<std::complex<double>>* q) {
    using cd = std::complex<double>;
    diag.assign(n, 0.0);
    sub.assign(std::max(n - 1, 0), 0.0);
    if (q) {
        q->assign(static_cast<size_t>(n) * n, cd(0.0));
        for (int i = 0; i < n; ++i) (*q)[i * n + i] = cd(1.0);
    }
    if (n == 1) {
        diag[0] = a[0].real();
        return;
    }
    std::vector<cd> esub(n - 1);  // complex subdiagonal before the phase sweep
    std::vector<cd> v(n), p(n);
    for (int k = 0; k < n - 2; ++k) {
        double s2 = 0.0;
        for (int i = k + 1; i < n; ++i) s2 += std::norm(a[i * n + k]);
        double s = std::sqrt(s2);
        cd alpha = a[(k + 1) * n + k];
        if (s == 0.0) {
            esub[k] = cd(0.0);
            continue;
        }
        cd phase = (std::abs(alpha) == 0.0) ? cd(1.0) : alpha / std::abs(alpha);
        cd beta = -phase * s;
        // Householder vector u = x - beta e1, scaled to ||v||^2 = 2 so that
        // P = I - v v^dagger is unitary with P x = beta e1
        double un2 = 2.0 * (s2 + s * std::abs(alpha));
        double scale = std::sqrt(2.0 / un2);
        for (int i = k + 1; i < n; ++i) v[i] = a[i * n + k] * scale;
        v[k + 1] -= beta * scale;

        // p = A v on the trailing block, K = (1/2) v^dagger p, q_vec = p - K v
        for (int i = k + 1; i < n; ++i) {
            cd acc(0.0);
            for (int j = k + 1; j < n; ++j) acc += a[i * n + j] * v[j];
            p[i] = acc;
        }
        cd K(0.0);
        for (int i = k + 1; i < n; ++i) K += std::conj(v[i]) * p[i];
        K *= 0.5;
        for (int i = k + 1; i < n; ++i) p[i] -= K * v[i];
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i * n + j] -= v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]);

        esub[k] = beta;
        a[(k + 1) * n + k] = beta;
        a[k * n + (k + 1)] = std::conj(beta);
        for (int i = k + 2; i < n; ++i) {
            a[i * n + k] = cd(0.0);
            a[k * n + i] = cd(0.0);
        }
        if (q) {
            // Q <- Q (I - v v^dagger), acting on columns k+1..n-1
            for (int r = 0; r < n; ++r) {
                cd acc(0.0);
                for (int j = k + 1; j < n; ++j) acc += (*q)[r * n + j] * v[j];
                for (int j = k + 1; j < n; ++j) (*q)[r * n + j] -= acc * std::conj(v[j]);
            }
        }
    }
    esub[n - 2] = a[(n - 1) * n + (n - 2)];
    for (int i = 0; i < n; ++i) diag[i] = a[i * n + i].real();

    // diagonal phase similarity making the subdiagonal real non-negative
    std::vector<cd> t(n, cd(1.0));
    for (int i = 0; i + 1 < n; ++i) {
        double m = std::abs(esub[i]);
        sub[i] = m;
        t[i + 1] = (m == 0.0) ? t[i] : t[i] * (esub[i] / m);
    }
    if (q) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) (*q)[r * n + c] *= t[c];
    }
}

std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> a, int n) {
    std::vector<double> d, e;
    hermitian_tridiagonalize(a, n, d, e);
    tridiag_ql(d, e);
    std::sort(d.begin(), d.end());
    return d;
}

void hermitian_eigen(std::vector<std::complex<double>> a, int n,
                     std::vector<double>& w, std::vector<std::complex<double>>& v) {
    using cd = std::complex<double>;
    std::vector<double> d, e;
    std::vector<cd> q;
    hermitian_tridiagonalize(a, n, d, e, &q);
    std::vector<double> z(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) z[i * n + i] = 1.0;
    tridiag_ql(d, e, z.data());
    // v = q * z, then sort columns by eigenvalue
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });
    w.resize(n);
    v.assign(static_cast<size_t>(n) * n, cd(0.0));
    for (int c = 0; c < n; ++c) {
        int src = idx[c];
        w[c] = d[src];
        for (int r = 0; r < n; ++r) {
            cd acc(0.0);
            for (int k = 0; k < n; ++k) acc += q[r * n + k] * z[k * n + src];
            v[r * n + c] = acc;
        }
    }
}

}  // namespace wrmt
