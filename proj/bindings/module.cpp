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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wrmt/cli.hpp"
#include "wrmt/density_io.hpp"
#include "wrmt/kernels.hpp"
#include "wrmt/micro.hpp"
#include "wrmt/montecarlo.hpp"
#include "wrmt/pfaffian.hpp"
#include "wrmt/quadrature.hpp"
#include "wrmt/sop.hpp"
#include "wrmt/special.hpp"
#include "wrmt/verify.hpp"
#include "wrmt/version.hpp"

namespace py = pybind11;
using namespace wrmt;

namespace {

py::dict curve_to_dict(const DensityCurve& c) {
    py::dict d;
    d["grid"] = c.grid;
    d["values"] = c.values;
    if (!c.stderrs.empty()) d["stderr"] = c.stderrs;
    py::dict meta;
    for (const auto& [k, v] : c.meta) meta[py::str(k)] = v;
    d["meta"] = meta;
    return d;
}

}  // namespace

PYBIND11_MODULE(_wrmt, m) {
    m.doc() = "chGUE-GUE transition ensemble: finite-n Pfaffian correlators, "
              "microscopic densities and Monte Carlo sampling";
    m.attr("__version__") = kVersion;

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<int, int, double, double>(), py::arg("n"), py::arg("nu"),
             py::arg("a"), py::arg("m"))
        .def_readonly("n", &ModelParams::n)
        .def_readonly("nu", &ModelParams::nu)
        .def_readonly("a", &ModelParams::a)
        .def_readonly("m", &ModelParams::m)
        .def_property_readonly("N", &ModelParams::N)
        .def("m_hat", &ModelParams::m_hat)
        .def("a_hat", &ModelParams::a_hat);

    py::class_<MicroParams>(m, "MicroParams")
        .def(py::init<double, double, double, int>(), py::arg("m_hat"), py::arg("a_hat"),
             py::arg("z_hat") = 0.0, py::arg("nu") = 0)
        .def_readonly("m_hat", &MicroParams::m_hat)
        .def_readonly("a_hat", &MicroParams::a_hat)
        .def_readonly("z_hat", &MicroParams::z_hat)
        .def_readonly("nu", &MicroParams::nu);

    // special functions and quadrature
    m.def("laguerre",
          [](int degree, int alpha, std::complex<double> z) { return laguerre(degree, alpha, z); },
          py::arg("degree"), py::arg("alpha"), py::arg("z"));
    m.def("bessel_j", &bessel_j, py::arg("order"), py::arg("x"));
    m.def("bessel_i_entire", &bessel_i_entire, py::arg("order"), py::arg("u"));
    m.def("erf", &wrmt::erf, py::arg("x"));
    m.def("gauss_rule", [](const std::string& kind, int order) {
        QuadKind k = (kind == "hermite") ? QuadKind::GaussHermite : QuadKind::GaussLegendre;
        QuadratureRule r = gauss_rule(k, order);
        return py::make_tuple(r.nodes, r.weights);
    }, py::arg("kind"), py::arg("order"));

    // skew-orthogonal polynomials
    m.def("r_even", &r_even, py::arg("j"), py::arg("x"), py::arg("params"));
    m.def("r_odd", &r_odd, py::arg("j"), py::arg("x"), py::arg("params"));
    m.def("r_nu1", &r_nu1, py::arg("j"), py::arg("x"), py::arg("params"));
    m.def("norm_r", &norm_r, py::arg("j"), py::arg("params"));
    m.def("coeff_s", [](int j, const ModelParams& p) {
        LogVal s = coeff_s(j, p);
        return py::make_tuple(s.sign, s.log);
    }, py::arg("j"), py::arg("params"), "s_j as (sign, log magnitude)");
    m.def("char_poly_avg", &char_poly_avg, py::arg("z"), py::arg("params"));
    m.def("skew_product", &skew_product, py::arg("params"), py::arg("deg_i"), py::arg("deg_j"),
          py::arg("order") = kHermiteOrder);

    // weights and kernels
    m.def("weight_F", [](double x, const ModelParams& p) {
        LogVal v = weight_F(x, p);
        return py::make_tuple(v.sign, v.log);
    }, py::arg("x"), py::arg("params"), "antisymmetric weight as (sign, log magnitude)");
    m.def("kernel_S", &kernel_S, py::arg("x"), py::arg("y"), py::arg("params"));
    m.def("kernel_D", &kernel_D, py::arg("x"), py::arg("y"), py::arg("params"));
    m.def("kernel_I", &kernel_I, py::arg("x"), py::arg("y"), py::arg("params"));
    m.def("rho1", [](double x, const ModelParams& p) { return rho1(x, p); }, py::arg("x"),
          py::arg("params"));
    m.def("rho2", [](double x, double y, const ModelParams& p) { return rho2(x, y, p); },
          py::arg("x"), py::arg("y"), py::arg("params"));
    m.def("rho_k", [](const std::vector<double>& pts, const ModelParams& p) {
        return rho_k(pts, p);
    }, py::arg("points"), py::arg("params"));
    m.def("rho1_curve", [](const ModelParams& p, const std::vector<double>& grid) {
        KernelSet ks(p);
        return curve_to_dict(ks.rho1_curve(grid));
    }, py::arg("params"), py::arg("grid"));
    m.def("chgue_density_finite", &chgue_density_finite, py::arg("y"), py::arg("n"),
          py::arg("nu"));

    // microscopic limit
    m.def("rho_s", &rho_s, py::arg("x_hat"), py::arg("micro"));
    m.def("rho_s_nu1", &rho_s_nu1, py::arg("x_hat"), py::arg("micro"));
    m.def("chgue_density_micro", &chgue_density_micro, py::arg("x_hat"), py::arg("nu"));
    m.def("limit_poly_even", &limit_poly_even, py::arg("t"), py::arg("x_hat"), py::arg("micro"));
    m.def("limit_poly_odd", &limit_poly_odd, py::arg("t"), py::arg("x_hat"), py::arg("micro"));
    m.def("partition_nf1_micro", [](const MicroParams& mp) {
        PartitionResult r = partition_nf1_micro(mp);
        py::dict d;
        d["theta_form"] = r.theta_form;
        d["hermite_form"] = r.hermite_form;
        d["rel_discrepancy"] = r.rel_discrepancy;
        d["ok"] = r.ok;
        return d;
    }, py::arg("micro"));

    // Pfaffian
    m.def("pfaffian", [](const std::vector<std::vector<double>>& rows) {
        int n = static_cast<int>(rows.size());
        AntisymmetricMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) a.set(i, j, rows[i][j]);
        LogVal v = pfaffian(a);
        return py::make_tuple(v.sign, v.log);
    }, py::arg("matrix"), "Pfaffian of an antisymmetric matrix as (sign, log magnitude)");

    // Monte Carlo
    m.def("sample_d5", [](const ModelParams& p, std::uint64_t seed, std::uint32_t stream) {
        GaussianStream g(seed, stream);
        return sample_d5(p, g).eigenvalues;
    }, py::arg("params"), py::arg("seed") = 20260811, py::arg("stream") = 0);
    m.def("mc_histogram", [](const ModelParams& p, std::uint64_t draws, double lo, double hi,
                             int bins, std::uint64_t seed, int streams, double rescale) {
        return curve_to_dict(mc_histogram(p, RngConfig{seed, streams}, draws,
                                          HistogramSpec{lo, hi, bins, rescale}));
    }, py::arg("params"), py::arg("draws"), py::arg("lo"), py::arg("hi"), py::arg("bins"),
       py::arg("seed") = 20260811, py::arg("streams") = 8, py::arg("rescale") = 1.0);
    m.def("mc_expect_det", [](double z, const ModelParams& p, std::uint64_t draws,
                              std::uint64_t seed) {
        MCDetResult r = mc_expect_det(z, p, draws, RngConfig{seed, 8});
        return py::make_tuple(r.estimate, r.stderr);
    }, py::arg("z"), py::arg("params"), py::arg("draws") = 100000,
       py::arg("seed") = 20260811);
    m.def("jpdf_density_smalln", [](const ModelParams& p, const std::vector<double>& grid,
                                    int order, int norm_order) {
        return curve_to_dict(jpdf_density_smalln(p, grid, order, norm_order));
    }, py::arg("params"), py::arg("grid"), py::arg("order") = 64, py::arg("norm_order") = 48);
    m.def("gue_hermite_density", &gue_hermite_density, py::arg("x"), py::arg("N"), py::arg("c"));

    // verification + CLI entry
    m.def("verify", [] {
        auto results = run_verify();
        py::list out;
        for (const auto& r : results) {
            py::dict d;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["measured"] = r.measured;
            d["tolerance"] = r.tolerance;
            out.append(d);
        }
        return out;
    });
    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<const char*> argv;
        argv.push_back("wrmt");
        for (const auto& a : args) argv.push_back(a.c_str());
        return run_cli(static_cast<int>(argv.size()), argv.data());
    }, py::arg("args"));
}
