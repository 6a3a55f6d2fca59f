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

#include "wrmt/density_io.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "wrmt/version.hpp"

namespace wrmt {

std::vector<double> make_grid(double min, double max, int points) {
    if (points < 2) throw std::invalid_argument("make_grid: need at least 2 points");
    if (!(min < max)) throw std::invalid_argument("make_grid: min must be < max");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = min + (max - min) * static_cast<double>(i) / (points - 1);
    return g;
}

namespace {

// shortest round-trip decimal representation
std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double clip(double v) { return (v < 0.0 && v >= -1e-10) ? 0.0 : v; }

std::string timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

std::string to_csv(const DensityCurve& c) {
    std::string out = "x,rho\n";
    for (size_t i = 0; i < c.grid.size(); ++i) {
        out += fmt(c.grid[i]);
        out += ',';
        out += fmt(clip(c.values[i]));
        out += '\n';
    }
    return out;
}

std::string to_json(const DensityCurve& c) {
    nlohmann::json j;
    j["grid"] = c.grid;
    std::vector<double> vals(c.values.size());
    for (size_t i = 0; i < c.values.size(); ++i) vals[i] = clip(c.values[i]);
    j["values"] = vals;
    if (!c.stderrs.empty()) j["stderr"] = c.stderrs;
    nlohmann::json meta;
    for (const auto& [k, v] : c.meta) meta[k] = v;
    meta["tool_version"] = kVersion;
    meta["generated_at"] = timestamp();
    j["meta"] = meta;
    return j.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    if (!out) throw std::runtime_error("short write: " + path);
}

}  // namespace wrmt
