#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "wrmt/linalg.hpp"

using namespace wrmt;
using cd = std::complex<double>;

namespace {
std::vector<cd> random_hermitian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cd> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        a[i * n + i] = cd(g(rng), 0.0);
        for (int j = i + 1; j < n; ++j) {
            cd v(g(rng), g(rng));
            a[i * n + j] = v;
            a[j * n + i] = std::conj(v);
        }
    }
    return a;
}
}  // namespace

TEST_CASE("tridiagonal QL reproduces known 2x2 eigenvalues") {
    std::vector<double> d{1.0, 3.0}, e{2.0};
    tridiag_ql(d, e);
    std::sort(d.begin(), d.end());
    // eigenvalues of [[1,2],[2,3]] are 2 -+ sqrt(5)
    CHECK(d[0] == doctest::Approx(2.0 - std::sqrt(5.0)).epsilon(1e-13));
    CHECK(d[1] == doctest::Approx(2.0 + std::sqrt(5.0)).epsilon(1e-13));
}

TEST_CASE("hermitian eigensolver residuals and trace identities") {
    std::mt19937_64 rng(42);
    for (int n : {2, 5, 16, 48}) {
        std::vector<cd> a = random_hermitian(n, rng);
        std::vector<cd> acopy = a;

        double tr = 0.0, tr2 = 0.0, nrm = 0.0;
        for (int i = 0; i < n; ++i) tr += a[i * n + i].real();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                tr2 += (a[i * n + j] * a[j * n + i]).real();
                nrm += std::norm(a[i * n + j]);
            }
        nrm = std::sqrt(nrm);

        std::vector<double> w;
        std::vector<cd> v;
        hermitian_eigen(acopy, n, w, v);

        double sw = 0.0, sw2 = 0.0;
        for (int i = 0; i < n; ++i) {
            sw += w[i];
            sw2 += w[i] * w[i];
            if (i) CHECK(w[i] >= w[i - 1]);
        }
        CHECK(sw == doctest::Approx(tr).epsilon(1e-11));
        CHECK(sw2 == doctest::Approx(tr2).epsilon(1e-11));

        // residual ||A v - lambda v|| <= 1e-10 ||A|| per pair
        for (int c = 0; c < n; ++c) {
            double resid = 0.0;
            for (int r = 0; r < n; ++r) {
                cd acc(0.0);
                for (int k = 0; k < n; ++k) acc += a[r * n + k] * v[k * n + c];
                acc -= w[c] * v[r * n + c];
                resid += std::norm(acc);
            }
            CHECK(std::sqrt(resid) <= 1e-10 * nrm);
        }
    }
}

TEST_CASE("eigenvalues-only path matches the eigenpair path") {
    std::mt19937_64 rng(3);
    int n = 12;
    std::vector<cd> a = random_hermitian(n, rng);
    std::vector<double> w1 = hermitian_eigenvalues(a, n);
    std::vector<double> w2;
    std::vector<cd> v;
    hermitian_eigen(a, n, w2, v);
    for (int i = 0; i < n; ++i) CHECK(w1[i] == doctest::Approx(w2[i]).epsilon(1e-12));
}
