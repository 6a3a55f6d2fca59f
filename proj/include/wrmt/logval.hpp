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

#include <cmath>
#include <cstdlib>
#include <limits>

namespace wrmt {

/// Signed value stored as sign * exp(log). Weight factors in this model span
/// hundreds of decades (exp(m^2/(4a^2)) and friends), so products and ratios
/// are combined at the exponent level and exponentiated at most once.
struct LogVal {
    int sign = 0;  // -1, 0, +1
    double log = -std::numeric_limits<double>::infinity();

    LogVal() = default;
    LogVal(int s, double l)
        : sign(s), log(s == 0 ? -std::numeric_limits<double>::infinity() : l) {}

    static LogVal of(double v) {
        if (v == 0.0 || !std::isfinite(v)) {
            if (std::isnan(v)) return LogVal{0, 0.0};
            if (std::isinf(v)) return LogVal{v > 0 ? 1 : -1, std::numeric_limits<double>::infinity()};
            return LogVal{};
        }
        return LogVal{v > 0 ? 1 : -1, std::log(std::abs(v))};
    }
    static LogVal one() { return LogVal{1, 0.0}; }
    static LogVal zero() { return LogVal{}; }
    static LogVal exp_of(double lg) { return LogVal{1, lg}; }

    bool is_zero() const { return sign == 0; }
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log); }

    LogVal operator-() const { return LogVal{-sign, log}; }

    friend LogVal operator*(const LogVal& a, const LogVal& b) {
        if (a.sign == 0 || b.sign == 0) return LogVal{};
        return LogVal{a.sign * b.sign, a.log + b.log};
    }
    friend LogVal operator/(const LogVal& a, const LogVal& b) {
        if (a.sign == 0) return LogVal{};
        return LogVal{a.sign * b.sign, a.log - b.log};
    }
    friend LogVal operator+(const LogVal& a, const LogVal& b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        const LogVal& hi = (a.log >= b.log) ? a : b;
        const LogVal& lo = (a.log >= b.log) ? b : a;
        double r = hi.sign * 1.0 + lo.sign * std::exp(lo.log - hi.log);
        if (r == 0.0) return LogVal{};
        return LogVal{r > 0 ? 1 : -1, hi.log + std::log(std::abs(r))};
    }
    friend LogVal operator-(const LogVal& a, const LogVal& b) { return a + (-b); }

    friend bool operator==(const LogVal& a, const LogVal& b) {
        return a.sign == b.sign && (a.sign == 0 || a.log == b.log);
    }
};

inline LogVal pow_int(const LogVal& v, long k) {
    if (k == 0) return LogVal::one();
    if (v.sign == 0) return LogVal{};
    int s = (k % 2 == 0) ? 1 : v.sign;
    return LogVal{s, v.log * static_cast<double>(k)};
}

/// Streaming signed log-sum-exp accumulator for quadrature sums whose terms
/// span many decades. Tracks the running maximum exponent and a rescaled sum.
class LogSum {
  public:
    void add(const LogVal& t) {
        if (t.sign == 0) return;
        if (t.log > max_abs_) max_abs_ = t.log;
        if (acc_ == 0.0) {
            shift_ = t.log;
            acc_ = static_cast<double>(t.sign);
            return;
        }
        if (t.log - shift_ > 40.0) {
            // rebase onto the larger term
            acc_ = acc_ * std::exp(shift_ - t.log) + t.sign;
            shift_ = t.log;
        } else {
            acc_ += t.sign * std::exp(t.log - shift_);
        }
        if (std::abs(acc_) > 1e280) {
            shift_ += std::log(std::abs(acc_));
            acc_ = acc_ > 0 ? 1.0 : -1.0;
        }
    }
    void add(int sign, double lg) { add(LogVal{sign, lg}); }

    LogVal total() const {
        if (acc_ == 0.0) return LogVal{};
        return LogVal{acc_ > 0 ? 1 : -1, shift_ + std::log(std::abs(acc_))};
    }
    /// Largest |term| seen, as a log; -inf if nothing was added.
    double max_term_log() const { return max_abs_; }

  private:
    double shift_ = 0.0;
    double acc_ = 0.0;
    double max_abs_ = -std::numeric_limits<double>::infinity();
};

}  // namespace wrmt
