#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "wrmt/quadrature.hpp"
#include "wrmt/special.hpp"

using namespace wrmt;
using cd = std::complex<double>;

namespace {
// independent high-order power series for J_n, the oracle near the roots
double bessel_series_oracle(int n, double x) {
    long double u = -0.25L * (long double)x * x;
    long double term = 1.0L;
    for (int j = 1; j <= n; ++j) term /= j;
    long double sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= u / ((long double)k * (k + n));
        sum += term;
    }
    return (double)(sum * powl(0.5L * x, n));
}

double binom(int n, int k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}
}  // namespace

TEST_CASE("laguerre base cases and values at zero") {
    CHECK(laguerre(0, 0, cd(3.7, -1.2)) == cd(1.0));
    cd z(0.4, 0.9);
    cd l1 = laguerre(1, 0, z);
    CHECK(std::abs(l1 - (cd(1.0) - z)) < 1e-15);
    // L_n^{(alpha)}(0) = binomial(n+alpha, n)
    CHECK(laguerre(2, 1, 0.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(laguerre(3, 2, 0.0) == doctest::Approx(binom(5, 3)).epsilon(1e-13));
    CHECK(laguerre(5, 0, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("laguerre recurrence residual") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-20.0, 20.0);
    for (int it = 0; it < 200; ++it) {
        int k = 1 + static_cast<int>(rng() % 40);
        int alpha = static_cast<int>(rng() % 3);
        double x = ux(rng);
        double lm1 = laguerre(k - 1, alpha, x);
        double lk = laguerre(k, alpha, x);
        double lp1 = laguerre(k + 1, alpha, x);
        double resid = (k + 1.0) * lp1 - (2.0 * k + 1.0 + alpha - x) * lk + (k + alpha) * lm1;
        double scale = std::max({std::abs(lp1), std::abs(lk), std::abs(lm1), 1.0});
        CHECK(std::abs(resid) < 1e-10 * scale);
    }
}

TEST_CASE("bessel_j basics") {
    CHECK(bessel_j(0, 0.0) == doctest::Approx(1.0));
    CHECK(bessel_j(1, 0.0) == doctest::Approx(0.0));
    // near the first four roots of J_0 the series oracle pins the value
    for (double x : {2.404, 5.520, 8.654, 11.79}) {
        CHECK(bessel_j(0, x) == doctest::Approx(bessel_series_oracle(0, x)).epsilon(1e-12));
    }
    // regression across the series/recurrence switchover
    for (double x : {11.9, 12.1, 15.0, 30.0, 80.0}) {
        for (int n : {0, 1, 2}) {
            double ref = std::cyl_bessel_j(static_cast<double>(n), x);
            CHECK(std::abs(bessel_j(n, x) - ref) < 1e-11 * std::max(1.0, std::abs(ref)));
        }
    }
    // parity
    CHECK(bessel_j(1, -3.3) == doctest::Approx(-bessel_j(1, 3.3)));
    CHECK(bessel_j(2, -3.3) == doctest::Approx(bessel_j(2, 3.3)));
}

TEST_CASE("bessel_i_entire") {
    CHECK(bessel_i_entire(0, cd(0.0)).real() == doctest::Approx(1.0));
    CHECK(bessel_i_entire(1, cd(0.0)).real() == doctest::Approx(1.0));  // 1/1!
    CHECK(bessel_i_entire(2, cd(0.0)).real() == doctest::Approx(0.5));  // 1/2!
    // real u > 0: I_0(sqrt(u)) oracle
    for (double u : {0.3, 1.0, 9.0, 42.0, 100.0}) {
        double ref = std::cyl_bessel_i(0.0, std::sqrt(u));
        CHECK(bessel_i_entire(0, cd(u)).real() == doctest::Approx(ref).epsilon(1e-12));
        double ref1 = std::cyl_bessel_i(1.0, std::sqrt(u)) / (0.5 * std::sqrt(u));
        CHECK(bessel_i_entire(1, cd(u)).real() == doctest::Approx(ref1).epsilon(1e-12));
    }
    // negative u: Ihat_0(-v) = J_0(sqrt(v))
    for (double v : {1.0, 16.0, 64.0}) {
        CHECK(bessel_i_entire(0, cd(-v)).real() ==
              doctest::Approx(bessel_j(0, std::sqrt(v))).epsilon(1e-10));
    }
    // paired evaluation consistent with the single one
    cd u(17.0, -23.0);
    cd i0, i1;
    bessel_i_entire01(u, i0, i1);
    CHECK(std::abs(i0 - bessel_i_entire(0, u)) < 1e-13 * std::abs(i0));
    CHECK(std::abs(i1 - bessel_i_entire(1, u)) < 1e-13 * std::abs(i1));
}

TEST_CASE("erf wrapper") {
    CHECK(wrmt::erf(0.0) == 0.0);
    for (double x : {0.17, 1.3, 2.9, 5.5}) CHECK(wrmt::erf(-x) == -wrmt::erf(x));
    for (double x : {6.0, 7.5, 10.0}) CHECK(std::abs(wrmt::erf(x) - 1.0) < 1e-15);
}

TEST_CASE("erfc_scaled continuity at the switchover") {
    double lo = erfc_scaled(24.999);
    double hi = erfc_scaled(25.001);
    CHECK(std::abs(lo - hi) < 1e-4 * lo);
    // asymptotic vs direct at the cut
    double direct = std::exp(25.0 * 25.0) * std::erfc(25.0);
    CHECK(erfc_scaled(25.0) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(erfc_scaled(40.0) == doctest::Approx(1.0 / (40.0 * std::sqrt(M_PI)) *
                                               (1.0 - 1.0 / 3200.0)).epsilon(1e-4));
}

TEST_CASE("erf_bracket agrees with the direct expression") {
    for (double A : {0.03, 0.4, 1.7, 4.0}) {
        for (double B : {0.0, 0.5, 2.0, 4.5}) {
            double direct = std::erf(A + B) + std::erf(A - B);
            LogVal got = erf_bracket(A, B);
            if (std::abs(direct) > 1e-280)
                CHECK(got.value() == doctest::Approx(direct).epsilon(1e-9));
            LogVal neg = erf_bracket(-A, B);
            CHECK(neg.sign == -got.sign);
            CHECK(neg.log == doctest::Approx(got.log));
        }
    }
    // deep cancellation region: leading Taylor behavior (4A/sqrt(pi)) e^{-B^2}
    double A = 1e-4, B = 30.0;
    LogVal v = erf_bracket(A, B);
    double expect_log = std::log(4.0 * A / std::sqrt(M_PI)) - B * B;
    CHECK(v.sign == 1);
    CHECK(v.log == doctest::Approx(expect_log).epsilon(1e-6));
    // erfc-difference branch vs Taylor branch near their boundary
    LogVal t1 = erf_bracket(0.049 / (2.0 * 3.0), 3.0);  // 2AB just below 0.1 -> Taylor
    double a2 = 0.051 / (2.0 * 3.0);
    LogVal t2 = erf_bracket(a2, 3.0);                   // just above -> erfc diff
    double direct2 = std::erfc(3.0 - a2) - std::erfc(3.0 + a2);
    CHECK(t2.value() == doctest::Approx(direct2).epsilon(1e-10));
    CHECK(t1.sign == 1);
}

TEST_CASE("gauss_rule invariants and examples") {
    // order-1 Hermite rule
    QuadratureRule h1 = gauss_rule(QuadKind::GaussHermite, 1);
    CHECK(h1.nodes[0] == doctest::Approx(0.0));
    CHECK(h1.weights[0] == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));

    for (int q : {2, 8, 33, 128, 256}) {
        QuadratureRule gh = gauss_rule(QuadKind::GaussHermite, q);
        double sw = 0.0, s2 = 0.0;
        for (int k = 0; k < q; ++k) {
            CHECK(gh.weights[k] > 0.0);
            if (k) CHECK(gh.nodes[k] > gh.nodes[k - 1]);
            sw += gh.weights[k];
            s2 += gh.weights[k] * gh.nodes[k] * gh.nodes[k];
        }
        CHECK(sw == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
        if (q >= 2) CHECK(s2 == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));
    }

    for (int q : {2, 9, 64}) {
        QuadratureRule gl = gauss_rule(QuadKind::GaussLegendre, q);
        double sw = 0.0, st = 0.0;
        for (int k = 0; k < q; ++k) {
            sw += gl.weights[k];
            // integral of t over [0,1] after the affine map
            double t = 0.5 * (gl.nodes[k] + 1.0);
            st += 0.5 * gl.weights[k] * t;
        }
        CHECK(sw == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(st == doctest::Approx(0.5).epsilon(1e-12));
    }

    CHECK_THROWS_AS(gauss_rule(QuadKind::GaussHermite, 0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_rule(QuadKind::GaussHermite, 513), std::invalid_argument);
}

TEST_CASE("quadrature exactness on monomials up to 2q-1") {
    // Hermite moments: int e^{-x^2} x^{2k} = Gamma(k+1/2); odd vanish
    for (int q : {4, 11, 40}) {
        QuadratureRule gh = gauss_rule(QuadKind::GaussHermite, q);
        for (int pdeg = 0; pdeg <= 2 * q - 1; pdeg += 3) {
            double s = 0.0;
            for (int k = 0; k < q; ++k) s += gh.weights[k] * std::pow(gh.nodes[k], pdeg);
            double exact = (pdeg % 2) ? 0.0 : std::tgamma(0.5 * (pdeg + 1));
            if (pdeg % 2) {
                CHECK(std::abs(s) < 1e-10 * std::tgamma(0.5 * pdeg + 1.0));
            } else {
                CHECK(s == doctest::Approx(exact).epsilon(1e-10));
            }
        }
        QuadratureRule gl = gauss_rule(QuadKind::GaussLegendre, q);
        for (int pdeg = 0; pdeg <= 2 * q - 1; pdeg += 5) {
            double s = 0.0;
            for (int k = 0; k < q; ++k) s += gl.weights[k] * std::pow(gl.nodes[k], pdeg);
            double exact = (pdeg % 2) ? 0.0 : 2.0 / (pdeg + 1.0);
            if (pdeg % 2) {
                CHECK(std::abs(s) < 1e-12);
            } else {
                CHECK(s == doctest::Approx(exact).epsilon(1e-10));
            }
        }
    }
}
