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

#include "wrmt/verify.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "wrmt/gauss_integrate.hpp"
#include "wrmt/kernels.hpp"
#include "wrmt/micro.hpp"
#include "wrmt/montecarlo.hpp"
#include "wrmt/pfaffian.hpp"
#include "wrmt/quadrature.hpp"
#include "wrmt/sop.hpp"
#include "wrmt/special.hpp"

namespace wrmt {

namespace {

void push(std::vector<CheckResult>& out, const std::string& name, double measured,
          double tolerance, const std::string& detail = "") {
    out.push_back(CheckResult{name, measured <= tolerance, measured, tolerance, detail});
}

void check_quadrature(std::vector<CheckResult>& out) {
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, 64);
    double sw = 0.0;
    for (double w : gh.weights) sw += w;
    push(out, "quadrature.hermite_weight_sum",
         std::abs(sw / std::sqrt(M_PI) - 1.0), 1e-12);
    double worst = 0.0;
    for (int pdeg = 0; pdeg <= 2 * gh.order - 1; pdeg += 7) {
        double s = 0.0;
        for (int k = 0; k < gh.order; ++k) s += gh.weights[k] * std::pow(gh.nodes[k], pdeg);
        double exact = (pdeg % 2) ? 0.0 : std::tgamma(0.5 * (pdeg + 1));
        double scale = (pdeg % 2) ? std::tgamma(0.5 * pdeg + 1.0) : exact;
        worst = std::max(worst, std::abs(s - exact) / scale);
    }
    push(out, "quadrature.monomial_exactness", worst, 1e-10);
    const QuadratureRule& gl = shared_rule(QuadKind::GaussLegendre, 32);
    double swl = 0.0;
    for (double w : gl.weights) swl += w;
    push(out, "quadrature.legendre_weight_sum", std::abs(swl - 2.0), 1e-12);
}

void check_special(std::vector<CheckResult>& out) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ux(-15.0, 15.0);
    double worst = 0.0;
    for (int it = 0; it < 60; ++it) {
        int k = 1 + static_cast<int>(rng() % 30);
        int alpha = static_cast<int>(rng() % 2);
        double x = ux(rng);
        double resid = (k + 1.0) * laguerre(k + 1, alpha, x) -
                       (2.0 * k + 1.0 + alpha - x) * laguerre(k, alpha, x) +
                       (k + alpha) * laguerre(k - 1, alpha, x);
        double scale = std::max({std::abs(laguerre(k + 1, alpha, x)), 1.0});
        worst = std::max(worst, std::abs(resid) / scale);
    }
    push(out, "special.laguerre_recurrence", worst, 1e-10);

    double worst_i = 0.0;
    for (double u : {0.5, 4.0, 25.0, 100.0}) {
        double ref = std::cyl_bessel_i(0.0, std::sqrt(u));
        worst_i = std::max(worst_i,
                           std::abs(bessel_i_entire(0, {u, 0.0}).real() - ref) / ref);
    }
    push(out, "special.bessel_entire_vs_real_series", worst_i, 1e-12);

    double worst_e = 0.0;
    for (double x : {0.3, 1.7, 4.2}) worst_e = std::max(worst_e, std::abs(erf(x) + erf(-x)));
    push(out, "special.erf_odd_symmetry", worst_e, 0.0);
    push(out, "special.erf_tail", std::abs(erf(6.5) - 1.0), 1e-15);
}

void check_sop(std::vector<CheckResult>& out) {
    ModelParams p(4, 0, 0.35, 0.6);
    double worst_parity = 0.0;
    for (double x : {0.4, 1.3, 2.2}) {
        auto plus = sop_values(p, 7, x);
        auto minus = sop_values(p, 7, -x);
        for (int d = 0; d <= 7; ++d) {
            double expect = (d % 2 ? -1.0 : 1.0) * plus[d];
            double scale = std::max(std::abs(plus[d]), 1e-8);
            worst_parity = std::max(worst_parity, std::abs(minus[d] - expect) / scale);
        }
    }
    push(out, "sop.parity", worst_parity, 1e-12);

    auto gram = skew_gram(p, 5);
    double worst = 0.0, worst_same = 0.0;
    for (int j = 0; j <= 2; ++j)
        for (int l = 0; l <= 2; ++l) {
            double scale = norm_r(std::max(j, l), p);
            double expect = (j == l) ? norm_r(j, p) : 0.0;
            worst = std::max(worst, std::abs(gram[2 * j][2 * l + 1] - expect) / scale);
            worst_same = std::max(worst_same, std::abs(gram[2 * j][2 * l]) / scale);
        }
    push(out, "sop.skew_orthogonality", worst, 2e-5);
    push(out, "sop.same_parity_products", worst_same, 1e-8);

    // normint identity
    const QuadratureRule& gh = shared_rule(QuadKind::GaussHermite, 128);
    double worst_ni = 0.0;
    double c = 2.0 * (1.0 - p.a * p.a);
    for (int j : {0, 1, 2}) {
        double s = 0.0;
        for (int k = 0; k < gh.order; ++k)
            s += gh.weights[k] * sop_values(p, 2 * j, p.m + 2.0 * p.a * gh.nodes[k])[2 * j];
        s *= 2.0 * p.a;
        double pref = std::exp(std::lgamma(j + 1.0) + j * std::log(c)) / std::sqrt(M_PI);
        if (j % 2) pref = -pref;
        double expect = pref * 2.0 * p.a * M_PI;
        worst_ni = std::max(worst_ni, std::abs(s - expect) / std::abs(expect));
    }
    push(out, "sop.normint_identity", worst_ni, 1e-6);
}

void check_kernels(std::vector<CheckResult>& out) {
    for (int nu : {0, 1}) {
        ModelParams p(3, nu, 0.3, 0.5);
        KernelSet cd(p, KernelSet::Path::ChristoffelDarboux);
        KernelSet sp(p, KernelSet::Path::SumOverPolynomials);
        double worst_path = 0.0, worst_anti = 0.0;
        for (double x : {-0.8, 1.1}) {
            for (double y : {0.4, 1.9}) {
                double d1 = cd.D(x, y).value(), d2 = sp.D(x, y).value();
                double s1 = cd.S(x, y).value(), s2 = sp.S(x, y).value();
                worst_path = std::max(worst_path, std::abs(d1 - d2) / std::max(std::abs(d2), 1e-12));
                worst_path = std::max(worst_path, std::abs(s1 - s2) / std::max(std::abs(s2), 1e-12));
                LogVal dxy = sp.D(x, y), dyx = sp.D(y, x);
                worst_anti = std::max(worst_anti, std::abs((dxy + dyx).value()) /
                                                      std::max(std::abs(dxy.value()), 1e-12));
            }
        }
        std::string tag = (nu == 0) ? "nu0" : "nu1";
        push(out, "kernels.path_independence." + tag, worst_path, 1e-5);
        push(out, "kernels.antisymmetry." + tag, worst_anti, 1e-10);

        double total = integrate_panels([&](double x) { return sp.rho1(x); }, -7.0, 7.0, 16);
        push(out, "kernels.rho1_normalization." + tag,
             std::abs(total - p.N()) / p.N(), 1e-4);
    }

    ModelParams p2(2, 0, 0.4, 0.5);
    KernelSet ks(p2, KernelSet::Path::SumOverPolynomials);
    double worst_marg = 0.0;
    for (double x : {0.0, 1.2}) {
        auto X = ks.make_point(x);
        double total = integrate_panels(
            [&](double y) { return ks.rho2_pt(X, ks.make_point(y)); }, -6.5, 6.5, 14);
        double expect = (p2.N() - 1.0) * ks.rho1(x);
        worst_marg = std::max(worst_marg, std::abs(total - expect) / expect);
    }
    push(out, "kernels.rho2_marginalization", worst_marg, 1e-3);

    // nu=1 zero-mode mass at small a
    ModelParams pz(3, 1, 0.01, 0.5);
    KernelSet kz(pz, KernelSet::Path::ChristoffelDarboux);
    double mass = integrate_panels([&](double x) { return kz.rho1(x); }, -pz.m - 0.3,
                                   -pz.m + 0.3, 20);
    auto bgf = shift_map([&](double y) { return chgue_density_finite(y, pz.n, 1); }, pz.m);
    double bg = integrate_panels(bgf, -pz.m - 0.3, -pz.m + 0.3, 8);
    push(out, "kernels.nu1_zero_mode_mass", std::abs(mass - bg - 1.0), 5e-2);
}

void check_pfaffian(std::vector<CheckResult>& out) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g(0.0, 1.0);
    double worst = 0.0;
    for (int n : {8, 16, 32, 64}) {
        AntisymmetricMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) a.set(i, j, g(rng));
        // LU determinant oracle
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
    push(out, "pfaffian.square_equals_det", worst, 1e-10);

    ModelParams p(2, 0, 0.4, 0.3);
    KernelSet ks(p, KernelSet::Path::SumOverPolynomials);
    double r2 = ks.rho2(0.6, -0.9);
    double rk = ks.rho_k({0.6, -0.9});
    push(out, "pfaffian.rho_k_matches_rho2", std::abs(rk - r2) / std::abs(r2), 1e-10);
}

void check_micro(std::vector<CheckResult>& out) {
    MicroParams mp(1.0, 0.2);
    double worst = 0.0;
    for (double x : {0.8, 2.9}) {
        double f1 = rho_s_form1(x, mp), f2 = rho_s(x, mp);
        worst = std::max(worst, std::abs(f1 - f2) / std::abs(f2));
    }
    push(out, "micro.rho_s_dual_forms", worst, 1e-5);
    push(out, "micro.rho_s_symmetry",
         std::abs(rho_s(1.3, mp) - rho_s(-1.3, mp)) / rho_s(1.3, mp), 1e-8);

    MicroParams tiny(1.0, 1e-3);
    double worst_b = 0.0;
    for (double x : {1.4, 3.0, 6.0}) {
        double r = std::sqrt(x * x - 1.0);
        double ref = std::abs(x) / r * chgue_density_micro(r, 0);
        worst_b = std::max(worst_b, std::abs(rho_s(x, tiny) - ref));
    }
    push(out, "micro.bessel_degeneration", worst_b, 5e-3);

    double worst_p = 0.0;
    for (double mh : {0.0, 1.5})
        for (double ah : {0.1, 0.6})
            for (int nu : {0, 1})
                worst_p = std::max(worst_p,
                                   partition_nf1_micro(MicroParams(mh, ah, 0.0, nu)).rel_discrepancy);
    push(out, "micro.partition_dual_forms", worst_p, 1e-10);

    MicroParams mz(0.0, 0.1, 0.0, 1);
    double mass = integrate_panels([&](double x) { return rho_s_nu1_zero_term(x, mz); },
                                   -2.4, 2.4, 12);
    push(out, "micro.nu1_zero_mode_mass", std::abs(mass - 1.0), 2e-2);
}

void check_montecarlo(std::vector<CheckResult>& out) {
    ModelParams p(3, 1, 0.35, 0.7);
    const std::uint64_t draws = 10000;
    GaussianStream g(4242, 0);
    double s1 = 0, s1sq = 0, s2 = 0, s2sq = 0;
    for (std::uint64_t d = 0; d < draws; ++d) {
        SpectrumSample s = sample_d5(p, g);
        double t1 = std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0);
        double t2 = 0;
        for (double ev : s.eigenvalues) t2 += ev * ev;
        s1 += t1;
        s1sq += t1 * t1;
        s2 += t2;
        s2sq += t2 * t2;
    }
    double D = static_cast<double>(draws);
    double mean1 = s1 / D, se1 = std::sqrt((s1sq / D - mean1 * mean1) / D);
    double mean2 = s2 / D, se2 = std::sqrt((s2sq / D - mean2 * mean2) / D);
    double N = p.N();
    double expect2 = N * p.m * p.m + 4.0 * p.n * (p.n + p.nu) * (1.0 - p.a * p.a) +
                     2.0 * p.a * p.a * N * N;
    push(out, "montecarlo.trace_moment", std::abs(mean1 + p.m * p.nu) / (3.0 * se1), 1.0,
         "in units of 3 standard errors");
    push(out, "montecarlo.trace_square_moment", std::abs(mean2 - expect2) / (3.0 * se2), 1.0,
         "in units of 3 standard errors");

    // bit reproducibility
    RngConfig rc{99, 3};
    HistogramSpec spec{-6.0, 6.0, 30};
    DensityCurve c1 = mc_histogram(p, rc, 300, spec);
    DensityCurve c2 = mc_histogram(p, rc, 300, spec);
    double diff = 0.0;
    for (size_t i = 0; i < c1.values.size(); ++i)
        diff = std::max(diff, std::abs(c1.values[i] - c2.values[i]));
    push(out, "montecarlo.bit_reproducibility", diff, 0.0);

    MCDetResult det = mc_expect_det(0.5, p, 10000, RngConfig{7, 2});
    double expect = char_poly_avg(0.5, p);
    push(out, "montecarlo.char_poly_oracle", std::abs(det.estimate - expect) / (3.0 * det.stderr),
         1.0, "in units of 3 standard errors");
}

}  // namespace

std::vector<CheckResult> run_verify() {
    std::vector<CheckResult> out;
    check_quadrature(out);
    check_special(out);
    check_sop(out);
    check_kernels(out);
    check_pfaffian(out);
    check_micro(out);
    check_montecarlo(out);
    return out;
}

std::string verify_report_text(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    int failed = 0;
    for (const auto& r : results) {
        os << (r.pass ? "PASS " : "FAIL ") << r.name << "  measured=" << r.measured
           << " tolerance=" << r.tolerance;
        if (!r.detail.empty()) os << "  (" << r.detail << ")";
        os << "\n";
        if (!r.pass) ++failed;
    }
    os << (failed == 0 ? "verify: all checks passed" : "verify: FAILURES") << " ("
       << (results.size() - failed) << "/" << results.size() << ")\n";
    return os.str();
}

std::string verify_report_json(const std::vector<CheckResult>& results) {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    int failed = 0;
    for (const auto& r : results) {
        j["checks"].push_back({{"name", r.name},
                               {"pass", r.pass},
                               {"measured", r.measured},
                               {"tolerance", r.tolerance},
                               {"detail", r.detail}});
        if (!r.pass) ++failed;
    }
    j["total"] = results.size();
    j["failed"] = failed;
    return j.dump(2) + "\n";
}

}  // namespace wrmt
