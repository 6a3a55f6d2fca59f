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

#include "wrmt/gauss_integrate.hpp"

#include <algorithm>
#include <cmath>

namespace wrmt {

namespace {

// composite Simpson in the log domain over [lo, hi] with npan panels
std::vector<LogVal> simpson_log(const GaussIntegrand& f, double lo, double hi, int npan) {
    const int n = 2 * npan;  // even number of intervals
    const double h = (hi - lo) / n;
    std::vector<LogSum> acc(f.dims);
    std::vector<LogVal> g(f.dims);
    for (int i = 0; i <= n; ++i) {
        double z = lo + h * i;
        double coef = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        f.g(z, g.data());
        LogVal envelope{1, f.A * z * z + f.B * z + f.C + std::log(coef * h / 3.0)};
        for (int c = 0; c < f.dims; ++c) acc[c].add(envelope * g[c]);
    }
    std::vector<LogVal> out(f.dims);
    for (int c = 0; c < f.dims; ++c) out[c] = acc[c].total();
    return out;
}

bool close_enough(const std::vector<LogVal>& a, const std::vector<LogVal>& b, double rel) {
    double ref = -std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < a.size(); ++c)
        ref = std::max(ref, std::max(a[c].log, b[c].log));
    if (!std::isfinite(ref)) return true;
    for (size_t c = 0; c < a.size(); ++c) {
        LogVal d = a[c] - b[c];
        if (d.sign != 0 && d.log > ref + std::log(rel)) return false;
    }
    return true;
}

std::vector<LogVal> adaptive(const GaussIntegrand& f, double center, double sigma) {
    double lo = center - 14.0 * sigma, hi = center + 14.0 * sigma;
    for (double p : f.peaks) {
        lo = std::min(lo, p - 14.0 * sigma);
        hi = std::max(hi, p + 14.0 * sigma);
    }
    // resolve the narrowest Gaussian scale across the whole window
    int npan = std::max(96, static_cast<int>((hi - lo) / sigma));
    std::vector<LogVal> prev = simpson_log(f, lo, hi, npan);
    for (int it = 0; it < 3; ++it) {
        npan *= 2;
        std::vector<LogVal> cur = simpson_log(f, lo, hi, npan);
        if (close_enough(prev, cur, 1e-8)) return cur;
        prev = std::move(cur);
    }
    return prev;
}

}  // namespace

std::vector<LogVal> integrate_gaussian(const GaussIntegrand& f, const QuadratureRule& gh,
                                       bool force_adaptive) {
    const double sigma = 1.0 / std::sqrt(-f.A);
    const double center = -f.B / (2.0 * f.A);
    if (force_adaptive) return adaptive(f, center, sigma);

    // exp(A z^2 + B z + C) = exp(C - B^2/(4A)) exp(-u^2) with z = center + sigma u
    const double logpref = f.C - f.B * f.B / (4.0 * f.A) + std::log(sigma);
    std::vector<LogSum> acc(f.dims);
    std::vector<LogVal> g(f.dims);
    double edge = -std::numeric_limits<double>::infinity();
    double peak = -std::numeric_limits<double>::infinity();
    const int q = gh.order;
    for (int k = 0; k < q; ++k) {
        double z = center + sigma * gh.nodes[k];
        f.g(z, g.data());
        double lw = std::log(gh.weights[k]);
        double tmag = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < f.dims; ++c) {
            LogVal t = LogVal{1, lw} * g[c];
            acc[c].add(t);
            if (t.sign != 0) tmag = std::max(tmag, t.log);
        }
        peak = std::max(peak, tmag);
        if (k == 0 || k == q - 1) edge = std::max(edge, tmag);
    }
    // edge nodes still carrying weight means the true peak lies outside the
    // completed-square window (the erf bracket shifted it); re-do adaptively
    if (std::isfinite(edge) && edge > peak - 23.0) return adaptive(f, center, sigma);

    std::vector<LogVal> out(f.dims);
    for (int c = 0; c < f.dims; ++c) {
        out[c] = acc[c].total();
        if (out[c].sign != 0) out[c].log += logpref;
    }
    return out;
}

double integrate_panels(const std::function<double(double)>& f, double lo, double hi,
                        int panels, int order) {
    const QuadratureRule& gl = shared_rule(QuadKind::GaussLegendre, order);
    double total = 0.0;
    double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = lo + p * h, mid = a + 0.5 * h, half = 0.5 * h;
        double s = 0.0;
        for (int k = 0; k < gl.order; ++k) s += gl.weights[k] * f(mid + half * gl.nodes[k]);
        total += s * half;
    }
    return total;
}

}  // namespace wrmt
