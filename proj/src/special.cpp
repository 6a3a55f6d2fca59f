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

#include "wrmt/special.hpp"

#include <cmath>
#include <stdexcept>

namespace wrmt {

std::complex<double> laguerre(int degree, int alpha, std::complex<double> z) {
    using cd = std::complex<double>;
    if (degree == 0) return cd(1.0);
    cd lm1(1.0);
    cd l(1.0 + alpha - z.real(), -z.imag());
    for (int j = 1; j < degree; ++j) {
        cd next = ((cd(2.0 * j + 1.0 + alpha) - z) * l - cd(j + alpha * 1.0) * lm1) / cd(j + 1.0);
        lm1 = l;
        l = next;
    }
    return l;
}

double laguerre(int degree, int alpha, double z) {
    return laguerre(degree, alpha, std::complex<double>(z)).real();
}

void laguerre_all(int degmax, int alpha, std::complex<double> z, std::complex<double>* out) {
    using cd = std::complex<double>;
    out[0] = cd(1.0);
    if (degmax == 0) return;
    out[1] = cd(1.0 + alpha) - z;
    for (int j = 1; j < degmax; ++j)
        out[j + 1] = ((cd(2.0 * j + 1.0 + alpha) - z) * out[j] - cd(j + alpha * 1.0) * out[j - 1]) / cd(j + 1.0);
}

namespace {

double bessel_j_series(int n, double x) {
    // J_n(x) = (x/2)^n sum_k (-x^2/4)^k / (k! (k+n)!)
    double u = -0.25 * x * x;
    double term = 1.0;
    for (int j = 1; j <= n; ++j) term /= j;  // 1/n!
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= u / (static_cast<double>(k) * (k + n));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && k > 4) break;
    }
    return sum * std::pow(0.5 * x, n);
}

double bessel_j_miller(int n, double x) {
    // downward recurrence normalized with J_0 + 2 J_2 + 2 J_4 + ... = 1
    int m = n + static_cast<int>(1.4 * x) + 40;
    if (m % 2) ++m;
    double jp = 0.0, jc = 1e-300, norm = 0.0, jn = 0.0;
    for (int k = m; k >= 0; --k) {
        if (k == n) jn = jc;
        if (k % 2 == 0) norm += (k == 0) ? jc : 2.0 * jc;
        double jm = (k == 0) ? 0.0 : (2.0 * k / x) * jc - jp;
        jp = jc;
        jc = jm;
        if (std::abs(jp) > 1e250) {
            jc /= 1e250;
            jp /= 1e250;
            jn /= 1e250;
            norm /= 1e250;
        }
    }
    return jn / norm;
}

}  // namespace

double bessel_j(int order, double x) {
    if (order < 0) throw std::invalid_argument("bessel_j: order must be >= 0");
    double ax = std::abs(x);
    double v;
    if (ax <= kBesselJSeriesCut)
        v = bessel_j_series(order, ax);
    else
        v = bessel_j_miller(order, ax);
    if (x < 0 && (order % 2)) v = -v;
    return v;
}

std::complex<double> bessel_i_entire(int order, std::complex<double> u) {
    using cd = std::complex<double>;
    cd q = u * 0.25;
    double fact = 1.0;
    for (int j = 1; j <= order; ++j) fact *= j;
    cd term = cd(1.0 / fact);
    cd sum = term;
    double qmag = std::abs(q);
    for (int k = 1; k < 800; ++k) {
        term *= q / (static_cast<double>(k) * (k + order));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && static_cast<double>(k) * k > qmag) break;
    }
    return sum;
}

void bessel_i_entire01(std::complex<double> u, std::complex<double>& i0, std::complex<double>& i1) {
    using cd = std::complex<double>;
    cd q = u * 0.25;
    cd t0(1.0), t1(1.0);
    i0 = t0;
    i1 = t1;
    double qmag = std::abs(q);
    for (int k = 1; k < 800; ++k) {
        t0 *= q / (static_cast<double>(k) * k);
        t1 *= q / (static_cast<double>(k) * (k + 1));
        i0 += t0;
        i1 += t1;
        if (std::abs(t0) < 1e-17 * std::abs(i0) && std::abs(t1) < 1e-17 * std::abs(i1) &&
            static_cast<double>(k) * k > qmag)
            break;
    }
}

double erf(double x) {
    double v = std::erf(std::abs(x));
    return x < 0 ? -v : v;
}

double erfc_scaled(double t) {
    if (t <= kErfcScaledCut) return std::exp(t * t) * std::erfc(t);
    // asymptotic: erfc(t) e^{t^2} ~ 1/(t sqrt(pi)) (1 - 1/(2t^2) + 3/(4t^4) - ...)
    double inv2 = 1.0 / (2.0 * t * t);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 20; ++k) {
        term *= -(2.0 * k - 1.0) * inv2;
        sum += term;
        if (std::abs(term) < 1e-17) break;
    }
    return sum / (t * std::sqrt(M_PI));
}

LogVal erf_bracket(double A, double B) {
    if (A == 0.0) return LogVal::zero();
    if (A < 0.0) return -erf_bracket(-A, B);
    if (A >= B) {
        double v = 2.0 - std::erfc(A + B) - std::erfc(A - B);
        return LogVal::of(v);
    }
    // 0 < A < B: erf cancellation region, bracket = erfc(B-A) - erfc(B+A)
    if (2.0 * A * B <= 0.1 && A <= 0.1) {
        // Taylor around A = 0: (4A/sqrt(pi)) e^{-B^2} [1 + ...]
        double A2 = A * A, B2 = B * B;
        double c1 = A2 * (2.0 * B2 - 1.0) / 3.0;
        double c2 = A2 * A2 * (4.0 * B2 * B2 - 12.0 * B2 + 3.0) / 30.0;
        double c3 = A2 * A2 * A2 *
                    (8.0 * B2 * B2 * B2 - 60.0 * B2 * B2 + 90.0 * B2 - 15.0) / 630.0;
        double series = 1.0 + c1 + c2 + c3;
        return LogVal{series > 0 ? 1 : -1,
                      std::log(4.0 * A / std::sqrt(M_PI)) - B * B + std::log(std::abs(series))};
    }
    if (B - A <= kErfcScaledCut) {
        double v = std::erfc(B - A) - std::erfc(B + A);
        return LogVal::of(v);
    }
    double inner = erfc_scaled(B - A) - std::exp(-4.0 * A * B) * erfc_scaled(B + A);
    if (inner <= 0.0) return LogVal::zero();
    return LogVal{1, -(B - A) * (B - A) + std::log(inner)};
}

}  // namespace wrmt
