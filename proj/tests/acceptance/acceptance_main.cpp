// Acceptance suite: every release criterion, one PASS/FAIL line each.
// Heavy Monte Carlo sizes can be reduced for development through
// WRMT_ACCEPT_DRAWS (a global scale factor in percent, default 100).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "wrmt/gauss_integrate.hpp"
#include "wrmt/kernels.hpp"
#include "wrmt/linalg.hpp"
#include "wrmt/micro.hpp"
#include "wrmt/montecarlo.hpp"
#include "wrmt/parallel.hpp"
#include "wrmt/pfaffian.hpp"
#include "wrmt/quadrature.hpp"
#include "wrmt/sop.hpp"
#include "wrmt/special.hpp"

using namespace wrmt;

namespace {

int g_failures = 0;
double g_scale = 1.0;  // MC draw scale

std::uint64_t scaled(std::uint64_t draws) {
    return std::max<std::uint64_t>(2000, static_cast<std::uint64_t>(draws * g_scale));
}

void report(int id, const std::string& label, bool pass, const std::string& detail,
            double seconds) {
    std::printf("%s criterion %2d: %s (%s) [%.1fs]\n", pass ? "PASS" : "FAIL", id,
                label.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

template <typename Fn>
void criterion(int id, const std::string& label, Fn body) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, label, pass, detail, secs);
}

double spectrum_halfwidth(const ModelParams& p) {
    double N = p.N();
    double tr2 = N * p.m * p.m + 4.0 * p.n * (p.n + p.nu) * (1.0 - p.a * p.a) +
                 2.0 * p.a * p.a * N * N;
    return p.m + 2.2 * std::sqrt(tr2 / N) + 0.8;
}

// MC histogram vs a bin-averaged analytic density; returns the fraction of
// tested bins within 3 sigma (bins with expected count < 25 are skipped)
struct BinTest {
    int tested = 0, within3 = 0;
    double worst_z = 0.0;
};
BinTest bin_compare(const DensityCurve& hist, const std::vector<double>& analytic_edges_vals,
                    std::uint64_t draws) {
    const size_t bins = hist.grid.size();
    const double width = hist.grid[1] - hist.grid[0];
    BinTest r;
    for (size_t b = 0; b < bins; ++b) {
        double avg = (analytic_edges_vals[2 * b] + 4.0 * analytic_edges_vals[2 * b + 1] +
                      analytic_edges_vals[2 * b + 2]) / 6.0;
        double expected_count = avg * draws * width;
        if (expected_count < 25.0) continue;
        double sigma = (hist.stderrs[b] > 0.0)
                           ? hist.stderrs[b]
                           : std::sqrt(avg / (static_cast<double>(draws) * width));
        double z = std::abs(hist.values[b] - avg) / sigma;
        ++r.tested;
        if (z <= 3.0) ++r.within3;
        r.worst_z = std::max(r.worst_z, z);
    }
    return r;
}

std::vector<double> edge_grid(const DensityCurve& hist) {
    const size_t bins = hist.grid.size();
    const double width = hist.grid[1] - hist.grid[0];
    std::vector<double> pts(2 * bins + 1);
    for (size_t b = 0; b < bins; ++b) {
        pts[2 * b] = hist.grid[b] - 0.5 * width;
        pts[2 * b + 1] = hist.grid[b];
    }
    pts[2 * bins] = hist.grid[bins - 1] + 0.5 * width;
    return pts;
}

void c1_skew_orthogonality(std::string& detail, bool& pass) {
    double worst_diag = 0.0, worst_cross = 0.0, worst_same = 0.0;
    for (double a : {0.1, 0.3, 0.5}) {
        for (double m : {0.0, 0.5, 1.0}) {
            ModelParams p(5, 0, a, m);
            auto gram = skew_gram(p, 9);
            for (int j = 0; j <= 4; ++j) {
                for (int l = 0; l <= 4; ++l) {
                    double scale = std::max(norm_r(j, p), norm_r(l, p));
                    if (2 * l + 1 <= 9) {
                        double got = gram[2 * j][2 * l + 1];
                        if (j == l)
                            worst_diag = std::max(worst_diag,
                                                  std::abs(got - norm_r(j, p)) / norm_r(j, p));
                        else
                            worst_cross = std::max(worst_cross, std::abs(got) / scale);
                    }
                    worst_same = std::max(worst_same, std::abs(gram[2 * j][2 * l]) / scale);
                    if (2 * j + 1 <= 9 && 2 * l + 1 <= 9)
                        worst_same = std::max(worst_same,
                                              std::abs(gram[2 * j + 1][2 * l + 1]) / scale);
                }
            }
        }
    }
    pass = worst_diag <= 1e-5 && worst_cross <= 1e-5 && worst_same <= 1e-8;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "diag %.2e (tol 1e-5), cross %.2e (1e-5), same-parity %.2e (1e-8)",
                  worst_diag, worst_cross, worst_same);
    detail = buf;
}

void c2_normalization(std::string& detail, bool& pass) {
    double worst_norm = 0.0, worst_marg = 0.0;
    const double a = 0.3, m = 0.5;
    for (int nu : {0, 1}) {
        for (int n : {2, 4, 8}) {
            ModelParams p(n, nu, a, m);
            KernelSet ks(p, KernelSet::Path::SumOverPolynomials);
            double L = spectrum_halfwidth(p);
            int panels = std::max(14, static_cast<int>(L * 1.6));
            const QuadratureRule& gl = shared_rule(QuadKind::GaussLegendre, 48);
            // precompute point tables on all composite nodes
            std::vector<double> ynodes, yweights;
            for (int pa = 0; pa < panels; ++pa) {
                double lo = -L + 2.0 * L * pa / panels, hi = -L + 2.0 * L * (pa + 1) / panels;
                double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
                for (int k = 0; k < gl.order; ++k) {
                    ynodes.push_back(mid + half * gl.nodes[k]);
                    yweights.push_back(half * gl.weights[k]);
                }
            }
            std::vector<KernelSet::Point> pts(ynodes.size());
            parallel_for(static_cast<int>(ynodes.size()),
                         [&](int i) { pts[i] = ks.make_point(ynodes[i]); });
            double total = 0.0;
            for (size_t i = 0; i < ynodes.size(); ++i)
                total += yweights[i] * ks.S_pt(pts[i], pts[i]).value();
            worst_norm = std::max(worst_norm, std::abs(total - p.N()) / p.N());

            if (n == 4) {
                for (double x : {-1.8, -0.6, 0.0, 0.7, 1.9}) {
                    auto X = ks.make_point(x);
                    std::vector<double> vals(ynodes.size());
                    parallel_for(static_cast<int>(ynodes.size()), [&](int i) {
                        vals[i] = ks.rho2_pt(X, pts[i]);
                    });
                    double tot2 = 0.0;
                    for (size_t i = 0; i < ynodes.size(); ++i) tot2 += yweights[i] * vals[i];
                    double expect = (p.N() - 1.0) * ks.S_pt(X, X).value();
                    worst_marg = std::max(worst_marg, std::abs(tot2 - expect) / expect);
                }
            }
        }
    }
    pass = worst_norm <= 1e-4 && worst_marg <= 1e-3;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "norm %.2e (tol 1e-4), marginalization %.2e (1e-3), nu in {0,1}, n in {2,4,8}",
                  worst_norm, worst_marg);
    detail = buf;
}

void c3_chgue_limit(std::string& detail, bool& pass) {
    double worst = 0.0;
    for (int nu : {0, 1}) {
        for (double m : {0.4, 1.0}) {
            ModelParams p(4, nu, 1e-3, m);
            KernelSet ks(p, KernelSet::Path::ChristoffelDarboux);
            auto ref = shift_map([&](double y) { return chgue_density_finite(y, p.n, nu); }, m);
            for (double x = m + 0.2; x <= 3.0; x += 0.1) {
                worst = std::max(worst, std::abs(ks.rho1(x) - ref(x)));
                worst = std::max(worst, std::abs(ks.rho1(-x) - ref(-x)));
            }
        }
    }
    pass = worst < 5e-2;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "sup distance %.3e (tol 5e-2) on |x| in [m+0.2, 3]", worst);
    detail = buf;
}

void c4_gue_limit(std::string& detail, bool& pass) {
    ModelParams p(4, 0, 0.99, 0.0);
    std::uint64_t draws = scaled(1000000);
    double W = spectrum_halfwidth(p);
    HistogramSpec spec{-W, W, 80};
    DensityCurve hist = mc_histogram(p, RngConfig{4242, 8}, draws, spec);
    // Hermite-kernel oracle with the scale matched to E[tr D5^2]/N^2
    double N = p.N();
    double tr2 = N * p.m * p.m + 4.0 * p.n * (p.n + p.nu) * (1.0 - p.a * p.a) +
                 2.0 * p.a * p.a * N * N;
    double c = std::sqrt(tr2) / N;
    std::vector<double> pts = edge_grid(hist);
    std::vector<double> vals(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) vals[i] = gue_hermite_density(pts[i], p.N(), c);
    BinTest r = bin_compare(hist, vals, draws);
    double frac = r.tested ? static_cast<double>(r.within3) / r.tested : 0.0;
    pass = frac >= 0.95;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d/%d bins within 3 sigma (%.1f%%, worst z=%.2f), %llu draws",
                  r.within3, r.tested, 100.0 * frac, r.worst_z,
                  static_cast<unsigned long long>(draws));
    detail = buf;
}

void c5_mc_vs_analytic(std::string& detail, bool& pass) {
    struct Setting {
        int n, nu;
        double a, m;
    };
    pass = true;
    std::string all;
    for (Setting s : {Setting{4, 0, 0.3, 0.4}, Setting{4, 1, 0.3, 1.0}, Setting{4, 0, 0.1, 0.0}}) {
        ModelParams p(s.n, s.nu, s.a, s.m);
        std::uint64_t draws = scaled(1000000);
        double W = spectrum_halfwidth(p);
        HistogramSpec spec{-W, W, 80};
        DensityCurve hist = mc_histogram(p, RngConfig{static_cast<std::uint64_t>(1111 + s.nu), 8}, draws, spec);
        KernelSet ks(p, KernelSet::Path::SumOverPolynomials);
        std::vector<double> pts = edge_grid(hist);
        std::vector<double> vals(pts.size());
        parallel_for(static_cast<int>(pts.size()), [&](int i) { vals[i] = ks.rho1(pts[i]); });
        BinTest r = bin_compare(hist, vals, draws);
        double frac = r.tested ? static_cast<double>(r.within3) / r.tested : 0.0;
        if (frac < 0.95) pass = false;
        char buf[120];
        std::snprintf(buf, sizeof(buf), "(%d,%d,%.1f,%.1f): %.1f%% ", s.n, s.nu, s.a, s.m,
                      100.0 * frac);
        all += buf;
    }
    detail = all + "(each needs >= 95% of bins within 3 sigma)";
}

void c6_char_poly(std::string& detail, bool& pass) {
    pass = true;
    double worst = 0.0;
    for (int nu : {0, 1}) {
        ModelParams p(4, nu, 0.3, 0.5);
        for (double z : {0.0, 0.5, 1.5}) {
            MCDetResult r = mc_expect_det(z, p, scaled(100000), RngConfig{static_cast<std::uint64_t>(97 + nu), 8});
            double expect = char_poly_avg(z, p);
            double zscore = std::abs(r.estimate - expect) / r.stderr;
            worst = std::max(worst, zscore);
            if (zscore > 3.0) pass = false;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "worst deviation %.2f standard errors (tol 3)", worst);
    detail = buf;
}

void c7_moments(std::string& detail, bool& pass) {
    pass = true;
    double worst = 0.0;
    struct Setting {
        int n, nu;
        double a, m;
    };
    for (Setting s : {Setting{4, 0, 0.3, 0.4}, Setting{3, 1, 0.5, 1.0}}) {
        ModelParams p(s.n, s.nu, s.a, s.m);
        std::uint64_t draws = scaled(100000);
        GaussianStream g(static_cast<std::uint64_t>(31337 + s.nu), 0);
        double s1 = 0, s1sq = 0, s2 = 0, s2sq = 0;
        for (std::uint64_t d = 0; d < draws; ++d) {
            SpectrumSample sm = sample_d5(p, g);
            double t1 = std::accumulate(sm.eigenvalues.begin(), sm.eigenvalues.end(), 0.0);
            double t2 = 0;
            for (double ev : sm.eigenvalues) t2 += ev * ev;
            s1 += t1;
            s1sq += t1 * t1;
            s2 += t2;
            s2sq += t2 * t2;
        }
        double D = static_cast<double>(draws);
        double mean1 = s1 / D, se1 = std::sqrt((s1sq / D - mean1 * mean1) / D);
        double mean2 = s2 / D, se2 = std::sqrt((s2sq / D - mean2 * mean2) / D);
        double N = p.N();
        double e1 = -p.m * p.nu;
        double e2 = N * p.m * p.m + 4.0 * p.n * (p.n + p.nu) * (1.0 - p.a * p.a) +
                    2.0 * p.a * p.a * N * N;
        double z1 = std::abs(mean1 - e1) / se1, z2 = std::abs(mean2 - e2) / se2;
        worst = std::max({worst, z1, z2});
        if (z1 > 3.0 || z2 > 3.0) pass = false;
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "worst deviation %.2f standard errors (tol 3)", worst);
    detail = buf;
}

void c8_micro_convergence(std::string& detail, bool& pass) {
    struct Setting {
        double mhat, ahat;
        int nu;
    };
    pass = true;
    std::string all;
    for (Setting s : {Setting{1.0, 0.1, 0}, Setting{3.0, 0.25, 0}, Setting{0.0, 0.1, 0},
                      Setting{0.0, 0.1, 1}, Setting{3.0, 0.25, 1}}) {
        std::vector<double> grid;
        if (s.nu == 0) {
            for (double x = 0.25; x <= 8.0; x += 0.75) grid.push_back(x);
        } else {
            for (double x = -8.0; x <= 8.0; x += 0.8) grid.push_back(x);
        }
        MicroParams mp(s.mhat, s.ahat, 0.0, s.nu);
        ConvergenceReport rep = micro_convergence_check(mp, s.nu, {8, 16, 32}, grid);
        bool ok = rep.monotone && rep.sup_distance.back() < 5e-2 &&
                  rep.sup_distance.back() < rep.sup_distance.front();
        if (!ok) pass = false;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "(m=%g,a=%g,nu=%d): %.3f->%.3f->%.3f%s ", s.mhat,
                      s.ahat, s.nu, rep.sup_distance[0], rep.sup_distance[1],
                      rep.sup_distance[2], rep.monotone ? "" : " NOT MONOTONE");
        all += buf;
    }
    detail = all + "(final < 5e-2, decreasing)";
}

void c9_micro_degeneration(std::string& detail, bool& pass) {
    double worst = 0.0;
    for (double mhat : {0.0, 1.0}) {
        MicroParams mp(mhat, 1e-3);
        auto ref = shift_map([](double y) { return chgue_density_micro(y, 0); }, mhat);
        for (double x = mhat + 0.3; x <= 8.0; x += 0.5)
            worst = std::max(worst, std::abs(rho_s(x, mp) - ref(x)));
    }
    double worst_mass = 0.0;
    for (double mhat : {0.0, 2.0}) {
        MicroParams mp(mhat, 0.1, 0.0, 1);
        double mass = integrate_panels(
            [&](double x) { return rho_s_nu1_zero_term(x, mp); },
            -mhat - 2.4, -mhat + 2.4, 12);
        worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    }
    pass = worst < 5e-3 && worst_mass < 2e-2;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "Bessel sup %.2e (tol 5e-3), zero-mode mass error %.2e (tol 2e-2)", worst,
                  worst_mass);
    detail = buf;
}

void c10_partition(std::string& detail, bool& pass) {
    double worst_rel = 0.0, worst_abs = 0.0;
    for (double mh : {0.0, 0.9, 2.7})
        for (double zh : {0.0, 1.1, 3.1})
            for (double ah : {0.05, 0.4, 0.8})
                for (int nu : {0, 1})
                    worst_rel = std::max(worst_rel,
                                         partition_nf1_micro(MicroParams(mh, ah, zh, nu))
                                             .rel_discrepancy);
    for (double mh : {0.0, 0.9, 2.7})
        for (int nu : {0, 1}) {
            PartitionResult r = partition_nf1_micro(MicroParams(mh, 0.0, 0.0, nu));
            double expect = std::cyl_bessel_i(nu, mh);
            worst_abs = std::max({worst_abs, std::abs(r.theta_form - expect),
                                  std::abs(r.hermite_form - expect)});
        }
    pass = worst_rel <= 1e-10 && worst_abs <= 1e-12;
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "dual-form rel %.2e (tol 1e-10), a_hat=0 Bessel abs %.2e (tol 1e-12)",
                  worst_rel, worst_abs);
    detail = buf;
}

void c11_pfaffian(std::string& detail, bool& pass) {
    std::mt19937_64 rng(606);
    std::normal_distribution<double> g(0.0, 1.0);
    double worst = 0.0;
    for (int n : {8, 16, 32, 64}) {
        for (int rep = 0; rep < 3; ++rep) {
            AntisymmetricMatrix a(n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) a.set(i, j, g(rng));
            std::vector<double> m(a.data());
            double dlog = 0.0;
            for (int k = 0; k < n; ++k) {
                int piv = k;
                for (int i = k + 1; i < n; ++i)
                    if (std::abs(m[i * n + k]) > std::abs(m[piv * n + k])) piv = i;
                if (piv != k)
                    for (int j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
                double d = m[k * n + k];
                dlog += std::log(std::abs(d));
                for (int i = k + 1; i < n; ++i) {
                    double t = m[i * n + k] / d;
                    for (int j = k; j < n; ++j) m[i * n + j] -= t * m[k * n + j];
                }
            }
            LogVal pf = pfaffian(a);
            worst = std::max(worst, std::abs(2.0 * pf.log - dlog) / std::max(1.0, std::abs(dlog)));
        }
    }
    ModelParams p(3, 0, 0.35, 0.4);
    KernelSet ks(p, KernelSet::Path::SumOverPolynomials);
    double worst_rho = 0.0;
    for (auto [x, y] : {std::pair{0.6, -0.9}, std::pair{1.4, 0.2}}) {
        double r2 = ks.rho2(x, y);
        double rk = ks.rho_k({x, y});
        worst_rho = std::max(worst_rho, std::abs(rk - r2) / std::abs(r2));
    }
    pass = worst <= 1e-10 && worst_rho <= 1e-10;
    char buf[140];
    std::snprintf(buf, sizeof(buf), "Pf^2=det rel %.2e (tol 1e-10), rho_2 expansion rel %.2e",
                  worst, worst_rho);
    detail = buf;
}

void c12_jpdf(std::string& detail, bool& pass) {
    double worst = 0.0;
    for (int nu : {0, 1}) {
        ModelParams p(1, nu, 0.4, 0.3);
        std::vector<double> grid;
        for (double x = -2.5; x <= 2.5; x += 0.25) grid.push_back(x);
        DensityCurve c = jpdf_density_smalln(p, grid, 56, 56);
        KernelSet ks(p, KernelSet::Path::SumOverPolynomials);
        for (size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(c.values[i] - ks.rho1(grid[i])));
    }
    // nu = 2: Monte Carlo is the only reference
    ModelParams p2(1, 2, 0.4, 0.3);
    std::uint64_t draws = scaled(500000);
    HistogramSpec spec{-3.6, 3.6, 24};
    DensityCurve hist = mc_histogram(p2, RngConfig{808, 8}, draws, spec);
    std::vector<double> pts = edge_grid(hist);
    DensityCurve an = jpdf_density_smalln(p2, pts, 48, 40);
    BinTest r = bin_compare(hist, an.values, draws);
    double frac = r.tested ? static_cast<double>(r.within3) / r.tested : 0.0;
    bool mc_ok = (r.within3 == r.tested) || (frac >= 0.95 && r.worst_z <= 4.0);
    pass = worst < 1e-4 && mc_ok;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "kernel distance %.2e (tol 1e-4); nu=2 MC: %d/%d bins in 3 sigma, worst z=%.2f",
                  worst, r.within3, r.tested, r.worst_z);
    detail = buf;
}

}  // namespace

int main() {
    if (const char* env = std::getenv("WRMT_ACCEPT_DRAWS")) {
        g_scale = std::atof(env) / 100.0;
        if (g_scale <= 0.0) g_scale = 1.0;
        std::printf("note: Monte Carlo draw counts scaled to %.0f%%\n", 100.0 * g_scale);
    }
    criterion(1, "skew-orthogonality suite", [](std::string& d) {
        bool p;
        c1_skew_orthogonality(d, p);
        return p;
    });
    criterion(2, "density normalization and marginalization", [](std::string& d) {
        bool p;
        c2_normalization(d, p);
        return p;
    });
    criterion(3, "chGUE limit of the finite-n density", [](std::string& d) {
        bool p;
        c3_chgue_limit(d, p);
        return p;
    });
    criterion(4, "GUE limit vs Hermite-kernel oracle", [](std::string& d) {
        bool p;
        c4_gue_limit(d, p);
        return p;
    });
    criterion(5, "Monte Carlo vs analytic density", [](std::string& d) {
        bool p;
        c5_mc_vs_analytic(d, p);
        return p;
    });
    criterion(6, "characteristic-polynomial oracle", [](std::string& d) {
        bool p;
        c6_char_poly(d, p);
        return p;
    });
    criterion(7, "trace moment oracles", [](std::string& d) {
        bool p;
        c7_moments(d, p);
        return p;
    });
    criterion(8, "microscopic convergence", [](std::string& d) {
        bool p;
        c8_micro_convergence(d, p);
        return p;
    });
    criterion(9, "microscopic chGUE degeneration", [](std::string& d) {
        bool p;
        c9_micro_degeneration(d, p);
        return p;
    });
    criterion(10, "partition function dual forms", [](std::string& d) {
        bool p;
        c10_partition(d, p);
        return p;
    });
    criterion(11, "Pfaffian library", [](std::string& d) {
        bool p;
        c11_pfaffian(d, p);
        return p;
    });
    criterion(12, "general-nu jpdf at n=1", [](std::string& d) {
        bool p;
        c12_jpdf(d, p);
        return p;
    });
    std::printf("%s: %d/12 criteria passed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                12 - g_failures);
    return g_failures;
}
