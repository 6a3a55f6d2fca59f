#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "wrmt/pfaffian.hpp"

using namespace wrmt;

namespace {

AntisymmetricMatrix random_antisym(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    AntisymmetricMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a.set(i, j, g(rng));
    return a;
}

// plain LU determinant with partial pivoting, the independent oracle
double log_abs_det(const AntisymmetricMatrix& a, int& sign) {
    int n = a.dim();
    std::vector<double> m(a.data());
    sign = 1;
    double lg = 0.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m[i * n + k]) > std::abs(m[piv * n + k])) piv = i;
        if (m[piv * n + k] == 0.0) {
            sign = 0;
            return -std::numeric_limits<double>::infinity();
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
            sign = -sign;
        }
        double d = m[k * n + k];
        sign *= (d > 0) ? 1 : -1;
        lg += std::log(std::abs(d));
        for (int i = k + 1; i < n; ++i) {
            double t = m[i * n + k] / d;
            for (int j = k; j < n; ++j) m[i * n + j] -= t * m[k * n + j];
        }
    }
    return lg;
}

}  // namespace

TEST_CASE("pfaffian 2x2 and 4x4 textbook values") {
    AntisymmetricMatrix a2(2);
    a2.set(0, 1, 3.25);
    LogVal p2 = pfaffian(a2);
    CHECK(p2.value() == doctest::Approx(3.25).epsilon(1e-14));

    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int it = 0; it < 50; ++it) {
        AntisymmetricMatrix a4(4);
        double a01 = g(rng), a02 = g(rng), a03 = g(rng), a12 = g(rng), a13 = g(rng), a23 = g(rng);
        a4 = AntisymmetricMatrix::from_upper(4, {a01, a02, a03, a12, a13, a23});
        double expect = a01 * a23 - a02 * a13 + a03 * a12;
        LogVal p4 = pfaffian(a4);
        CHECK(p4.value() == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("Pf^2 = det against LU oracle up to dimension 64") {
    std::mt19937_64 rng(99);
    for (int n : {4, 8, 16, 32, 64}) {
        for (int rep = 0; rep < 3; ++rep) {
            AntisymmetricMatrix a = random_antisym(n, rng);
            int dsign;
            double dlog = log_abs_det(a, dsign);
            LogVal pf = pfaffian(a);
            REQUIRE(pf.sign != 0);
            CHECK(dsign == 1);  // det of real antisymmetric is a perfect square
            CHECK(2.0 * pf.log == doctest::Approx(dlog).epsilon(1e-10));
        }
    }
}

TEST_CASE("odd dimension and structural zeros") {
    AntisymmetricMatrix a3(3);
    a3.set(0, 1, 1.0);
    a3.set(1, 2, 2.0);
    CHECK(pfaffian(a3).sign == 0);

    // zero row => Pf = 0
    AntisymmetricMatrix a4(4);
    a4.set(0, 1, 1.5);
    // rows 2,3 zero against everything except each other
    CHECK(pfaffian(a4).sign == 0);
}

TEST_CASE("row/column swap flips the sign, pair scaling scales Pf") {
    std::mt19937_64 rng(5);
    AntisymmetricMatrix a = random_antisym(8, rng);
    LogVal p = pfaffian(a);

    AntisymmetricMatrix b = a;
    // swap indices 2 and 5 (row and column simultaneously)
    for (int j = 0; j < 8; ++j) {
        double t = b.data()[2 * 8 + j];
        b.data()[2 * 8 + j] = b.data()[5 * 8 + j];
        b.data()[5 * 8 + j] = t;
    }
    for (int i = 0; i < 8; ++i) {
        double t = b.data()[i * 8 + 2];
        b.data()[i * 8 + 2] = b.data()[i * 8 + 5];
        b.data()[i * 8 + 5] = t;
    }
    LogVal q = pfaffian(b);
    CHECK(q.sign == -p.sign);
    CHECK(q.log == doctest::Approx(p.log).epsilon(1e-12));

    // scaling row+column i by lambda scales Pf by lambda
    double lambda = 3.7;
    AntisymmetricMatrix c = a;
    for (int j = 0; j < 8; ++j) c.data()[3 * 8 + j] *= lambda;
    for (int i = 0; i < 8; ++i) c.data()[i * 8 + 3] *= lambda;
    LogVal r = pfaffian(c);
    CHECK(r.sign == p.sign);
    CHECK(r.log == doctest::Approx(p.log + std::log(lambda)).epsilon(1e-12));
}

TEST_CASE("bordered Pfaffian") {
    std::mt19937_64 rng(17);
    // nu' = 0 reduces to the plain Pfaffian
    AntisymmetricMatrix f0 = random_antisym(6, rng);
    LogVal direct = pfaffian(f0);
    LogVal bord = pfaffian_bordered(f0, {});
    CHECK(bord.sign == direct.sign);
    CHECK(bord.log == doctest::Approx(direct.log).epsilon(1e-13));

    // nu' = 1 with odd base: equals the direct (base+1)-dimensional Pfaffian
    AntisymmetricMatrix f1 = random_antisym(5, rng);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<double>> border(5, std::vector<double>(1));
    for (int i = 0; i < 5; ++i) border[i][0] = g(rng);
    AntisymmetricMatrix full(6);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) full.set(i, j, f1(i, j));
    for (int i = 0; i < 5; ++i) full.set(i, 5, border[i][0]);
    LogVal lhs = pfaffian_bordered(f1, border);
    LogVal rhs = pfaffian(full);
    CHECK(lhs.sign == rhs.sign);
    CHECK(lhs.log == doctest::Approx(rhs.log).epsilon(1e-12));

    // duplicated border column => 0
    AntisymmetricMatrix f2 = random_antisym(4, rng);
    std::vector<std::vector<double>> bdup(4, std::vector<double>(2));
    for (int i = 0; i < 4; ++i) bdup[i][0] = bdup[i][1] = g(rng);
    CHECK(pfaffian_bordered(f2, bdup).sign == 0);

    // parity violation
    AntisymmetricMatrix f3 = random_antisym(4, rng);
    std::vector<std::vector<double>> b1(4, std::vector<double>(1, 1.0));
    CHECK_THROWS_AS(pfaffian_bordered(f3, b1), std::invalid_argument);
}

TEST_CASE("log-domain Pfaffian handles huge entry spreads") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0.0, 1.0);
    int n = 6;
    // entries e^{s_i + s_j} * base: Pf scales by e^{sum s} relative to base
    std::vector<double> s{300.0, -200.0, 150.0, 0.0, -350.0, 100.0};
    AntisymmetricMatrix base = random_antisym(n, rng);
    std::vector<LogVal> entries(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = base(i, j);
            if (i != j)
                entries[i * n + j] = LogVal{v > 0 ? 1 : (v < 0 ? -1 : 0),
                                            std::log(std::abs(v)) + s[i] + s[j]};
        }
    LogVal pf_big = pfaffian_log(n, entries);
    LogVal pf_base = pfaffian(base);
    double stot = 0.0;
    for (double v : s) stot += v;
    CHECK(pf_big.sign == pf_base.sign);
    CHECK(pf_big.log == doctest::Approx(pf_base.log + stot).epsilon(1e-10));
}
