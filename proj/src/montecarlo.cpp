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

#include "wrmt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "wrmt/kernels.hpp"
#include "wrmt/linalg.hpp"
#include "wrmt/logval.hpp"
#include "wrmt/parallel.hpp"
#include "wrmt/pfaffian.hpp"
#include "wrmt/quadrature.hpp"

namespace wrmt {

using cd = std::complex<double>;

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::atomic<std::uint64_t> g_retry_count{0};

}  // namespace

std::uint64_t eigensolver_retry_count() { return g_retry_count.load(); }

GaussianStream::GaussianStream(std::uint64_t master_seed, std::uint32_t stream_id) {
    std::uint64_t st = master_seed;
    std::uint64_t a = splitmix64(st);
    st ^= (0x9E3779B97F4A7C15ull * (stream_id + 1ull));
    std::uint64_t b = splitmix64(st);
    rng_.seed(a ^ (b + 0x632BE59BD9B4E019ull));
}

double GaussianStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = (rng_() >> 11) * 0x1.0p-53;
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double u2 = (rng_() >> 11) * 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double c = std::cos(2.0 * M_PI * u2), s = std::sin(2.0 * M_PI * u2);
    spare_ = r * s;
    have_spare_ = true;
    return r * c;
}

std::complex<double> GaussianStream::cnormal() {
    double re = normal();
    double im = normal();
    return {re, im};
}

namespace {

std::vector<double> eigen_with_retry(std::vector<cd>& mat, int N, GaussianStream& g,
                                     const std::function<void(std::vector<cd>&)>& fill) {
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            return hermitian_eigenvalues(mat, N);
        } catch (const eigensolver_error&) {
            g_retry_count.fetch_add(1);
            fill(mat);
        }
    }
    throw eigensolver_error("sample: eigensolver failed repeatedly");
}

}  // namespace

SpectrumSample sample_d5(const ModelParams& p, GaussianStream& g) {
    const int n = p.n, N = p.N();
    const double sw = std::sqrt(1.0 - p.a * p.a);
    std::vector<cd> d5(static_cast<size_t>(N) * N, cd(0.0));
    auto fill = [&](std::vector<cd>& m) {
        std::fill(m.begin(), m.end(), cd(0.0));
        // H: full GUE block, E H_ii^2 = 2a^2, E|H_ij|^2 = 2a^2
        for (int i = 0; i < N; ++i) m[i * N + i] = cd(p.a * std::sqrt(2.0) * g.normal(), 0.0);
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                cd h = p.a * g.cnormal();
                m[i * N + j] += h;
                m[j * N + i] += std::conj(h);
            }
        // chiral part: [[m, W], [W^dag, -m]], E|W_ij|^2 = 2(1-a^2)
        for (int i = 0; i < n; ++i) m[i * N + i] += p.m;
        for (int i = n; i < N; ++i) m[i * N + i] -= p.m;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n + p.nu; ++j) {
                cd w = sw * g.cnormal();
                m[i * N + (n + j)] += w;
                m[(n + j) * N + i] += std::conj(w);
            }
    };
    fill(d5);
    SpectrumSample s;
    s.eigenvalues = eigen_with_retry(d5, N, g, fill);
    return s;
}

SpectrumSample sample_d5_model2(const Model2Params& p, GaussianStream& g) {
    const int n = p.n, N = 2 * p.n + p.nu, np = p.n + p.nu;
    std::vector<cd> d5(static_cast<size_t>(N) * N, cd(0.0));
    auto fill = [&](std::vector<cd>& m) {
        std::fill(m.begin(), m.end(), cd(0.0));
        // A block (n x n) and B block (n+nu x n+nu): E diag^2 = 2, E|offdiag|^2 = 2
        for (int i = 0; i < n; ++i) m[i * N + i] = cd(p.m + p.a * std::sqrt(2.0) * g.normal(), 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                cd h = p.a * g.cnormal();
                m[i * N + j] += h;
                m[j * N + i] += std::conj(h);
            }
        for (int i = 0; i < np; ++i)
            m[(n + i) * N + (n + i)] = cd(-p.m - p.a * std::sqrt(2.0) * g.normal(), 0.0);
        for (int i = 0; i < np; ++i)
            for (int j = i + 1; j < np; ++j) {
                cd h = -p.a * g.cnormal();
                m[(n + i) * N + (n + j)] += h;
                m[(n + j) * N + (n + i)] += std::conj(h);
            }
        // W: E|W_ij|^2 = 2
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < np; ++j) {
                cd w = g.cnormal();
                m[i * N + (n + j)] += w;
                m[(n + j) * N + i] += std::conj(w);
            }
    };
    fill(d5);
    SpectrumSample s;
    s.eigenvalues = eigen_with_retry(d5, N, g, fill);
    return s;
}

HistogramAccumulator::HistogramAccumulator(const HistogramSpec& spec)
    : spec_(spec), counts_(spec.bins, 0) {
    if (spec.bins < 1) throw std::invalid_argument("histogram: need at least one bin");
    if (!(spec.lo < spec.hi)) throw std::invalid_argument("histogram: invalid window");
}

void HistogramAccumulator::add(const std::vector<double>& eigenvalues) {
    if (eigenvalues.empty()) throw std::invalid_argument("histogram: empty sample");
    const double width = (spec_.hi - spec_.lo) / spec_.bins;
    for (double ev : eigenvalues) {
        double x = ev * spec_.rescale;
        if (x < spec_.lo || x >= spec_.hi) continue;
        int b = static_cast<int>((x - spec_.lo) / width);
        if (b >= 0 && b < spec_.bins) {
            ++counts_[b];
            ++inside_;
        }
    }
    ++draws_;
}

void HistogramAccumulator::merge(const HistogramAccumulator& other) {
    for (int b = 0; b < spec_.bins; ++b) counts_[b] += other.counts_[b];
    draws_ += other.draws_;
    inside_ += other.inside_;
}

DensityCurve HistogramAccumulator::finalize() const {
    DensityCurve c;
    const double width = (spec_.hi - spec_.lo) / spec_.bins;
    c.grid.resize(spec_.bins);
    c.values.resize(spec_.bins);
    c.stderrs.resize(spec_.bins);
    double norm = 1.0 / (static_cast<double>(draws_) * width);
    for (int b = 0; b < spec_.bins; ++b) {
        c.grid[b] = spec_.lo + (b + 0.5) * width;
        c.values[b] = counts_[b] * norm;
        c.stderrs[b] = std::sqrt(static_cast<double>(counts_[b])) * norm;
    }
    c.meta["kind"] = "mc_histogram";
    c.meta["draws"] = std::to_string(draws_);
    c.meta["inside"] = std::to_string(inside_);
    c.meta["rescale"] = std::to_string(spec_.rescale);
    return c;
}

namespace {

template <typename Sampler>
DensityCurve run_histogram(const RngConfig& rng, std::uint64_t draws, const HistogramSpec& spec,
                           int N, Sampler sampler, std::vector<double>* archive) {
    const int S = std::max(1, rng.streams);
    std::vector<HistogramAccumulator> acc(S, HistogramAccumulator(spec));
    if (archive) archive->assign(draws * static_cast<size_t>(N), 0.0);
    parallel_for(S, [&](int s) {
        GaussianStream g(rng.seed, static_cast<std::uint32_t>(s));
        for (std::uint64_t d = s; d < draws; d += S) {
            SpectrumSample sample = sampler(g);
            sample.stream = static_cast<std::uint32_t>(s);
            sample.index = d / S;
            acc[s].add(sample.eigenvalues);
            if (archive)
                std::copy(sample.eigenvalues.begin(), sample.eigenvalues.end(),
                          archive->begin() + d * static_cast<size_t>(N));
        }
    });
    for (int s = 1; s < S; ++s) acc[0].merge(acc[s]);
    return acc[0].finalize();
}

}  // namespace

DensityCurve mc_histogram(const ModelParams& p, const RngConfig& rng, std::uint64_t draws,
                          const HistogramSpec& spec,
                          const std::optional<std::string>& archive_path) {
    std::vector<double> archive;
    DensityCurve c = run_histogram(
        rng, draws, spec, p.N(), [&](GaussianStream& g) { return sample_d5(p, g); },
        archive_path ? &archive : nullptr);
    c.meta["model"] = "I";
    c.meta["n"] = std::to_string(p.n);
    c.meta["nu"] = std::to_string(p.nu);
    c.meta["a"] = std::to_string(p.a);
    c.meta["m"] = std::to_string(p.m);
    c.meta["seed"] = std::to_string(rng.seed);
    c.meta["streams"] = std::to_string(rng.streams);
    if (archive_path) write_spectra(*archive_path, p, draws, archive);
    return c;
}

DensityCurve mc_histogram_model2(const Model2Params& p, const RngConfig& rng,
                                 std::uint64_t draws, const HistogramSpec& spec) {
    DensityCurve c = run_histogram(
        rng, draws, spec, 2 * p.n + p.nu,
        [&](GaussianStream& g) { return sample_d5_model2(p, g); }, nullptr);
    c.meta["model"] = "II";
    c.meta["n"] = std::to_string(p.n);
    c.meta["nu"] = std::to_string(p.nu);
    c.meta["a"] = std::to_string(p.a);
    c.meta["m"] = std::to_string(p.m);
    return c;
}

MCDetResult mc_expect_det(double z, const ModelParams& p, std::uint64_t draws,
                          const RngConfig& rng) {
    if (draws < 1000) throw std::invalid_argument("mc_expect_det: need at least 10^3 draws");
    const int S = std::max(1, rng.streams);
    // per-stream (shift, sum, sumsq) in log space, merged afterwards
    struct Part {
        double shift = 0.0, sum = 0.0, sum2 = 0.0;
        bool init = false;
    };
    std::vector<Part> parts(S);
    parallel_for(S, [&](int s) {
        GaussianStream g(rng.seed, static_cast<std::uint32_t>(s));
        Part& pt = parts[s];
        for (std::uint64_t d = s; d < draws; d += S) {
            SpectrumSample sample = sample_d5(p, g);
            double lg = 0.0;
            int sign = 1;
            for (double ev : sample.eigenvalues) {
                double t = z + ev;
                if (t == 0.0) {
                    sign = 0;
                    break;
                }
                lg += std::log(std::abs(t));
                if (t < 0) sign = -sign;
            }
            if (sign == 0) continue;
            if (!pt.init) {
                pt.shift = lg;
                pt.init = true;
            }
            if (lg - pt.shift > 40.0) {
                double f = std::exp(pt.shift - lg);
                pt.sum *= f;
                pt.sum2 *= f * f;
                pt.shift = lg;
            }
            pt.sum += sign * std::exp(lg - pt.shift);
            pt.sum2 += std::exp(2.0 * (lg - pt.shift));
            if (std::abs(pt.sum2) > 1e250) {
                pt.sum *= 1e-100;
                pt.sum2 *= 1e-200;
                pt.shift += std::log(1e100);
            }
        }
    });
    double shift = 0.0;
    for (const Part& pt : parts)
        if (pt.init) shift = std::max(shift, pt.shift);
    double sum = 0.0, sum2 = 0.0;
    for (const Part& pt : parts) {
        if (!pt.init) continue;
        double f = std::exp(pt.shift - shift);
        sum += pt.sum * f;
        sum2 += pt.sum2 * f * f;
    }
    double D = static_cast<double>(draws);
    double mean = sum / D * std::exp(shift);
    double ex2 = sum2 / D * std::exp(2.0 * shift);
    double var = std::max(0.0, ex2 - mean * mean);
    return MCDetResult{mean, std::sqrt(var / D), draws};
}

DensityCurve jpdf_density_smalln(const ModelParams& p, const std::vector<double>& grid,
                                 int order, int norm_order) {
    if (p.n != 1) throw std::invalid_argument("jpdf_density_smalln: requires n = 1");
    const int N = p.N();
    const int dims = N - 1;
    const int nu = p.nu;
    const double inv2a2 = 1.0 / (2.0 * p.a * p.a);

    // log-domain integrand: Vandermonde * bordered Pfaffian (weights are
    // carried by the Gauss-Hermite substitution d = 2a u, or explicitly for
    // the fixed coordinate)
    auto integrand = [&](const std::vector<double>& d) -> LogVal {
        LogVal v = LogVal::one();
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) v = v * LogVal::of(d[j] - d[i]);
        const int dim = N + nu;
        std::vector<LogVal> m(static_cast<size_t>(dim) * dim);
        auto put = [&](int i, int j, const LogVal& val) {
            m[static_cast<size_t>(i) * dim + j] = val;
            m[static_cast<size_t>(j) * dim + i] = -val;
        };
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) put(i, j, weight_F(d[j] - d[i], p));
        for (int i = 0; i < N; ++i) {
            for (int q = 1; q <= nu; ++q) {
                LogVal b = weight_f(d[i], p) * pow_int(LogVal::of(d[i]), q - 1);
                put(i, N + q - 1, b);
            }
        }
        return v * pfaffian_log(dim, m);
    };

    // the integrand is symmetric in the free coordinates and vanishes on
    // their diagonals, so it is enough to visit strictly increasing node
    // tuples and weight by (free count)!
    auto sweep = [&](int qorder, int fixed, double xfix) -> LogVal {
        const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, qorder);
        int free_dims = (fixed >= 0) ? N - 1 : N;
        std::vector<int> idx(free_dims);
        for (int c = 0; c < free_dims; ++c) idx[c] = c;
        std::vector<double> d(N);
        double logfree = std::lgamma(free_dims + 1.0);
        LogSum acc;
        while (true) {
            double lw = 0.0;
            int fi = 0;
            for (int c = 0; c < N; ++c) {
                if (c == fixed) {
                    d[c] = xfix;
                } else {
                    d[c] = 2.0 * p.a * gh.nodes[idx[fi]];
                    lw += std::log(gh.weights[idx[fi]]);
                    ++fi;
                }
            }
            LogVal t = integrand(d);
            if (t.sign != 0) acc.add(LogVal{t.sign, t.log + lw + logfree});
            // next strictly increasing tuple
            int c = free_dims - 1;
            while (c >= 0 && idx[c] == qorder - free_dims + c) --c;
            if (c < 0) break;
            ++idx[c];
            for (int r = c + 1; r < free_dims; ++r) idx[r] = idx[r - 1] + 1;
        }
        LogVal total = acc.total();
        if (total.sign == 0) return total;
        total.log += free_dims * std::log(2.0 * p.a);
        if (fixed >= 0) total.log += -xfix * xfix * inv2a2 * 0.5;  // w(xfix)
        return total;
    };

    LogVal Z = sweep(norm_order, -1, 0.0);
    if (Z.sign == 0) throw numerical_error("jpdf_density_smalln: vanishing normalization");

    DensityCurve curve;
    curve.grid = grid;
    curve.values.resize(grid.size());
    parallel_for(static_cast<int>(grid.size()), [&](int i) {
        // the marginal is symmetric in which coordinate is fixed
        LogVal marg = sweep(order, 0, grid[i]);
        LogVal val = marg / Z;
        curve.values[i] = static_cast<double>(N) * val.value();
    });
    curve.meta["kind"] = "jpdf_density";
    curve.meta["n"] = std::to_string(p.n);
    curve.meta["nu"] = std::to_string(p.nu);
    curve.meta["a"] = std::to_string(p.a);
    curve.meta["m"] = std::to_string(p.m);
    return curve;
}

double gue_hermite_density(double x, int N, double c) {
    // rho(x) = (1/c) sum_{k<N} psi_k(x/c)^2 with orthonormal Hermite functions
    // psi_k(t) = He_k(t) e^{-t^2/4} / sqrt(k! sqrt(2 pi))
    double t = x / c;
    double sum = 0.0;
    double hkm1 = 0.0, hk = 1.0;
    double logfact = 0.0;  // log k!
    for (int k = 0; k < N; ++k) {
        double psik = hk * std::exp(-0.25 * t * t - 0.5 * logfact - 0.25 * std::log(2.0 * M_PI));
        sum += psik * psik;
        double next = t * hk - k * hkm1;
        hkm1 = hk;
        hk = next;
        logfact += std::log(k + 1.0);
    }
    return sum / c;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        double fa = static_cast<double>(i) / a.size();
        double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

void write_spectra(const std::string& path, const ModelParams& p, std::uint64_t draws,
                   const std::vector<double>& eigenvalues) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_spectra: cannot open " + path);
    const char magic[4] = {'W', 'R', 'M', 'T'};
    out.write(magic, 4);
    std::uint32_t v = kArchiveVersion, n = p.n, nu = p.nu;
    double a = p.a, m = p.m;
    out.write(reinterpret_cast<const char*>(&v), 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&nu), 4);
    out.write(reinterpret_cast<const char*>(&a), 8);
    out.write(reinterpret_cast<const char*>(&m), 8);
    out.write(reinterpret_cast<const char*>(&draws), 8);
    out.write(reinterpret_cast<const char*>(eigenvalues.data()),
              static_cast<std::streamsize>(eigenvalues.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_spectra: short write to " + path);
}

SpectraFile read_spectra(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_spectra: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (std::memcmp(magic, "WRMT", 4) != 0)
        throw std::runtime_error("read_spectra: bad magic");
    std::uint32_t v, n, nu;
    SpectraFile f;
    in.read(reinterpret_cast<char*>(&v), 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&nu), 4);
    in.read(reinterpret_cast<char*>(&f.a), 8);
    in.read(reinterpret_cast<char*>(&f.m), 8);
    in.read(reinterpret_cast<char*>(&f.draws), 8);
    if (v != kArchiveVersion) throw std::runtime_error("read_spectra: unsupported version");
    f.n = static_cast<int>(n);
    f.nu = static_cast<int>(nu);
    std::uint64_t total = f.draws * (2 * f.n + f.nu);
    f.eigenvalues.resize(total);
    in.read(reinterpret_cast<char*>(f.eigenvalues.data()),
            static_cast<std::streamsize>(total * sizeof(double)));
    if (!in) throw std::runtime_error("read_spectra: truncated file");
    return f;
}

}  // namespace wrmt
