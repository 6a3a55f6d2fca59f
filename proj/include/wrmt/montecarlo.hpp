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
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wrmt/density.hpp"
#include "wrmt/params.hpp"

namespace wrmt {

/// Reproducibility contract: identical (seed, streams, draws) produce
/// identical output bit for bit, independent of the worker count. Draw d is
/// assigned to stream d % streams at position d / streams.
struct RngConfig {
    std::uint64_t seed = 20260811;
    int streams = 8;
};

/// One draw: the N = 2n + nu eigenvalues, ascending, plus its seed lineage.
struct SpectrumSample {
    std::vector<double> eigenvalues;
    std::uint32_t stream = 0;
    std::uint64_t index = 0;  // position within the stream
};

/// Deterministic per-stream Gaussian generator: mt19937_64 seeded by a
/// splitmix64 chain on (master seed, stream id), Box-Muller on top. The
/// mt19937_64 bitstream is pinned by the standard, so samples are
/// reproducible across platforms.
class GaussianStream {
  public:
    GaussianStream(std::uint64_t master_seed, std::uint32_t stream_id);
    double normal();
    std::complex<double> cnormal();  // independent N(0,1) real and imaginary parts

  private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Model II parameters (the gamma_5(D_W + m) construction): the lattice
/// parameter a is unscaled there, any a >= 0 is meaningful.
struct Model2Params {
    int n;
    int nu;
    double a;
    double m;
};

/// Draw eigenvalues of D5 = [[m, W], [W^dag, -m]] + H with
/// E|W_ij|^2 = 2(1-a^2) and E H_ii^2 = E|H_ij|^2 = 2a^2.
SpectrumSample sample_d5(const ModelParams& p, GaussianStream& g);

/// Draw eigenvalues of D5 = [[m + aA, W], [W^dag, -m - aB]] with
/// E|W_ij|^2 = 2, E A_ii^2 = E|A_ij|^2 = 2 (likewise B).
SpectrumSample sample_d5_model2(const Model2Params& p, GaussianStream& g);

/// Count of eigensolver non-convergence events since process start (draws are
/// retried with fresh randomness and counted here).
std::uint64_t eigensolver_retry_count();

/// Histogram request. rescale multiplies eigenvalues before binning (the
/// microscopic map uses sqrt(2n)); density is normalized per draw per unit x,
/// so the total integral over an all-covering window is N.
struct HistogramSpec {
    double lo, hi;
    int bins;
    double rescale = 1.0;
};

/// Accumulate eigenvalue draws into a density histogram with per-bin standard
/// errors. Merging accumulators is associative and commutative.
class HistogramAccumulator {
  public:
    HistogramAccumulator(const HistogramSpec& spec);
    void add(const std::vector<double>& eigenvalues);
    void merge(const HistogramAccumulator& other);
    std::uint64_t draws() const { return draws_; }
    DensityCurve finalize() const;

  private:
    HistogramSpec spec_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t draws_ = 0;
    std::uint64_t inside_ = 0;
};

/// Parallel Monte Carlo histogram over independent streams; optionally
/// persists every draw to the binary archive at archive_path.
DensityCurve mc_histogram(const ModelParams& p, const RngConfig& rng, std::uint64_t draws,
                          const HistogramSpec& spec,
                          const std::optional<std::string>& archive_path = std::nullopt);
DensityCurve mc_histogram_model2(const Model2Params& p, const RngConfig& rng,
                                 std::uint64_t draws, const HistogramSpec& spec);

/// <det(z + D5)> by Monte Carlo, with the streaming mean kept in log space.
struct MCDetResult {
    double estimate;
    double stderr;
    std::uint64_t draws;
};
MCDetResult mc_expect_det(double z, const ModelParams& p, std::uint64_t draws,
                          const RngConfig& rng = RngConfig{});

/// Single-eigenvalue density from the general-nu jpdf at n = 1 by direct
/// low-dimensional quadrature of the Pfaffian-weighted integrand,
/// self-normalized to N. Works for any nu >= 0 (cost grows with nu).
DensityCurve jpdf_density_smalln(const ModelParams& p, const std::vector<double>& grid,
                                 int order = 64, int norm_order = 48);

/// Finite-N GUE density with per-eigenvalue weight e^{-x^2/(2 c^2)}
/// (Hermite-kernel oracle for the a -> 1 limit, where c^2 = 2a^2).
double gue_hermite_density(double x, int N, double c);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Binary spectrum archive:
/// header {magic "WRMT", version u32, n u32, nu u32, a f64, m f64, draws u64},
/// little-endian, followed by draws x N f64 eigenvalues in draw order.
inline constexpr std::uint32_t kArchiveVersion = 1;
void write_spectra(const std::string& path, const ModelParams& p, std::uint64_t draws,
                   const std::vector<double>& eigenvalues);
struct SpectraFile {
    int n, nu;
    double a, m;
    std::uint64_t draws;
    std::vector<double> eigenvalues;  // draws x N
};
SpectraFile read_spectra(const std::string& path);

}  // namespace wrmt
