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

#include "wrmt/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wrmt/density_io.hpp"
#include "wrmt/kernels.hpp"
#include "wrmt/linalg.hpp"
#include "wrmt/micro.hpp"
#include "wrmt/montecarlo.hpp"
#include "wrmt/verify.hpp"
#include "wrmt/version.hpp"

namespace wrmt {

namespace {

void emit(const RunConfig& cfg, const DensityCurve& curve) {
    std::string text = (cfg.format == "json") ? to_json(curve) : to_csv(curve);
    if (cfg.out.empty())
        std::cout << text;
    else
        write_text(cfg.out, text);
}

// analytic rho1 averaged over each histogram bin (3-point Simpson)
std::vector<double> bin_averaged_rho1(const KernelSet& ks, const DensityCurve& hist) {
    const size_t bins = hist.grid.size();
    const double width = (bins > 1) ? hist.grid[1] - hist.grid[0] : 1.0;
    std::vector<double> edges(2 * bins + 1);
    for (size_t b = 0; b < bins; ++b) {
        edges[2 * b] = hist.grid[b] - 0.5 * width;
        edges[2 * b + 1] = hist.grid[b];
    }
    edges[2 * bins] = hist.grid[bins - 1] + 0.5 * width;
    DensityCurve vals = ks.rho1_curve(edges);
    std::vector<double> avg(bins);
    for (size_t b = 0; b < bins; ++b)
        avg[b] = (vals.values[2 * b] + 4.0 * vals.values[2 * b + 1] + vals.values[2 * b + 2]) / 6.0;
    return avg;
}

int cmd_density(const RunConfig& cfg) {
    ModelParams p(cfg.n, cfg.nu, cfg.a, cfg.m);
    KernelSet ks(p, KernelSet::Path::ChristoffelDarboux);
    if (!cfg.points.empty()) {
        // rho_k at the given points
        double v = ks.rho_k(cfg.points);
        DensityCurve c;
        c.grid = cfg.points;
        c.values.assign(cfg.points.size(), v);
        c.meta["kind"] = "rho_k";
        c.meta["k"] = std::to_string(cfg.points.size());
        std::printf("rho_%zu = %.12g\n", cfg.points.size(), v);
        if (!cfg.out.empty()) emit(cfg, c);
        return kExitOk;
    }
    std::vector<double> grid = make_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points);
    if (cfg.k == 2) {
        // rho2 slice along x at fixed y (first entry of --points, else 0)
        double y = cfg.points.empty() ? 0.0 : cfg.points[0];
        DensityCurve c;
        c.grid = grid;
        c.values.resize(grid.size());
        KernelSet sp(p, KernelSet::Path::SumOverPolynomials);
        auto Y = sp.make_point(y);
        for (size_t i = 0; i < grid.size(); ++i)
            c.values[i] = sp.rho2_pt(sp.make_point(grid[i]), Y);
        c.meta["kind"] = "rho2_slice";
        c.meta["y"] = std::to_string(y);
        emit(cfg, c);
        return kExitOk;
    }
    emit(cfg, ks.rho1_curve(grid));
    return kExitOk;
}

int cmd_density_micro(const RunConfig& cfg) {
    MicroParams mp(cfg.mhat, cfg.ahat, cfg.zhat, cfg.nu);
    std::vector<double> grid = make_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points);
    emit(cfg, rho_s_curve(mp, grid));
    return kExitOk;
}

int cmd_mc(const RunConfig& cfg) {
    ModelParams p(cfg.n, cfg.nu, cfg.a, cfg.m);
    RngConfig rng{cfg.seed, cfg.streams};
    HistogramSpec spec{cfg.grid_min, cfg.grid_max, cfg.grid_points};
    DensityCurve c = mc_histogram(p, rng, cfg.draws, spec, cfg.archive);
    emit(cfg, c);
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
    ModelParams p(cfg.n, cfg.nu, cfg.a, cfg.m);
    RngConfig rng{cfg.seed, cfg.streams};
    HistogramSpec spec{cfg.grid_min, cfg.grid_max, cfg.grid_points};
    DensityCurve hist = mc_histogram(p, rng, cfg.draws, spec);
    KernelSet ks(p, KernelSet::Path::SumOverPolynomials);
    std::vector<double> analytic = bin_averaged_rho1(ks, hist);

    int tested = 0, within = 0;
    std::vector<double> z(hist.grid.size(), 0.0);
    for (size_t b = 0; b < hist.grid.size(); ++b) {
        if (hist.stderrs[b] <= 0.0) continue;
        z[b] = (hist.values[b] - analytic[b]) / hist.stderrs[b];
        ++tested;
        if (std::abs(z[b]) <= 3.0) ++within;
    }
    double frac = tested ? static_cast<double>(within) / tested : 1.0;
    bool pass = frac >= 0.95;

    if (cfg.format == "json") {
        nlohmann::json j;
        j["grid"] = hist.grid;
        j["mc"] = hist.values;
        j["stderr"] = hist.stderrs;
        j["analytic"] = analytic;
        j["z"] = z;
        j["bins_tested"] = tested;
        j["bins_within_3sigma"] = within;
        j["pass"] = pass;
        j["meta"] = {{"n", p.n}, {"nu", p.nu}, {"a", p.a}, {"m", p.m},
                     {"draws", cfg.draws}, {"seed", cfg.seed}, {"tool_version", kVersion}};
        if (cfg.out.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_text(cfg.out, j.dump(2) + "\n");
    } else {
        std::string text = "x,rho_mc,stderr,rho_analytic,z\n";
        char buf[160];
        for (size_t b = 0; b < hist.grid.size(); ++b) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", hist.grid[b],
                          hist.values[b], hist.stderrs[b], analytic[b], z[b]);
            text += buf;
        }
        if (cfg.out.empty())
            std::cout << text;
        else
            write_text(cfg.out, text);
    }
    std::printf("compare: %d/%d bins within 3 sigma (%.1f%%) %s\n", within, tested,
                100.0 * frac, pass ? "PASS" : "FAIL");
    return pass ? kExitOk : kExitVerifyFailed;
}

int cmd_partition(const RunConfig& cfg) {
    MicroParams mp(cfg.mhat, cfg.ahat, cfg.zhat, cfg.nu);
    PartitionResult r = partition_nf1_micro(mp);
    std::printf("Z_nu^(Nf=1): theta form = %.15g, hermite form = %.15g, rel diff = %.3e\n",
                r.theta_form, r.hermite_form, r.rel_discrepancy);
    if (!cfg.out.empty()) {
        nlohmann::json j = {{"theta_form", r.theta_form},
                            {"hermite_form", r.hermite_form},
                            {"rel_discrepancy", r.rel_discrepancy},
                            {"ok", r.ok},
                            {"m_hat", cfg.mhat},
                            {"a_hat", cfg.ahat},
                            {"z_hat", cfg.zhat},
                            {"nu", cfg.nu}};
        write_text(cfg.out, j.dump(2) + "\n");
    }
    if (!r.ok) throw numerical_error("partition dual forms disagree beyond 1e-8");
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<CheckResult> results = run_verify();
    std::cout << verify_report_text(results);
    if (!cfg.out.empty()) write_text(cfg.out, verify_report_json(results));
    for (const auto& r : results)
        if (!r.pass) return kExitVerifyFailed;
    return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg) {
    try {
        if (cfg.command == "density") return cmd_density(cfg);
        if (cfg.command == "density-micro") return cmd_density_micro(cfg);
        if (cfg.command == "mc") return cmd_mc(cfg);
        if (cfg.command == "compare") return cmd_compare(cfg);
        if (cfg.command == "partition") return cmd_partition(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        std::cerr << "unknown command: " << cfg.command << "\n";
        return kExitUsage;
    } catch (const numerical_error& e) {
        std::cerr << "numerical diagnostic failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const eigensolver_error& e) {
        std::cerr << "numerical diagnostic failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"chGUE-GUE transition ensemble of the Hermitian Wilson Dirac operator: "
                 "densities, Pfaffian correlators, microscopic limits and Monte Carlo"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunConfig cfg;
    std::string grid_spec;

    auto add_common = [&](CLI::App* sub, bool micro) {
        sub->add_option("--nu", cfg.nu, "index nu");
        if (micro) {
            sub->add_option("--mhat", cfg.mhat, "microscopic mass m-hat");
            sub->add_option("--ahat", cfg.ahat, "microscopic lattice parameter a-hat");
            sub->add_option("--zhat", cfg.zhat, "microscopic source z-hat");
        } else {
            sub->add_option("--n", cfg.n, "half matrix size n");
            sub->add_option("--a", cfg.a, "transition parameter a in (0,1)");
            sub->add_option("--m", cfg.m, "quark mass m");
        }
        sub->add_option("--grid", grid_spec, "grid as min:max:points");
        sub->add_option("--out", cfg.out, "output path (stdout if omitted)");
        sub->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* density = app.add_subcommand("density", "finite-n spectral density rho1 "
                                                      "(or a rho2 slice / rho_k value)");
    add_common(density, false);
    density->add_option("--k", cfg.k, "correlator order (2 for a rho2 slice)");
    density->add_option("--points", cfg.points, "comma list of points for rho_k")
        ->delimiter(',');

    CLI::App* dmicro = app.add_subcommand("density-micro",
                                          "microscopic density rho_S or rho_S^(nu=1)");
    add_common(dmicro, true);

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo sampling and histogram");
    add_common(mc, false);
    mc->add_option("--draws", cfg.draws, "number of draws");
    mc->add_option("--seed", cfg.seed, "master seed");
    mc->add_option("--streams", cfg.streams, "independent stream count");
    std::string archive;
    mc->add_option("--archive", archive, "write every draw to this binary archive");

    CLI::App* compare = app.add_subcommand("compare",
                                           "Monte Carlo histogram against analytic rho1 "
                                           "with per-bin z-scores");
    add_common(compare, false);
    compare->add_option("--draws", cfg.draws, "number of draws");
    compare->add_option("--seed", cfg.seed, "master seed");
    compare->add_option("--streams", cfg.streams, "independent stream count");

    CLI::App* partition = app.add_subcommand("partition",
                                             "Nf=1 microscopic partition function, both forms");
    add_common(partition, true);

    CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite");
    verify->add_option("--out", cfg.out, "write a JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (!grid_spec.empty()) {
        double mn, mx;
        int pts;
        if (std::sscanf(grid_spec.c_str(), "%lf:%lf:%d", &mn, &mx, &pts) != 3 || pts < 2 ||
            !(mn < mx)) {
            std::cerr << "invalid --grid, expected min:max:points\n";
            return kExitUsage;
        }
        cfg.grid_min = mn;
        cfg.grid_max = mx;
        cfg.grid_points = pts;
    }
    if (!archive.empty()) cfg.archive = archive;

    for (CLI::App* sub : {density, dmicro, mc, compare, partition, verify})
        if (sub->parsed()) cfg.command = sub->get_name();
    return run(cfg);
}

}  // namespace wrmt
