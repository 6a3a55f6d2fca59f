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

#include <map>
#include <string>
#include <vector>

namespace wrmt {

/// A density sampled on a grid, plus provenance metadata. stderrs is filled
/// for Monte Carlo histograms (per-bin standard error), empty otherwise.
/// Tiny negative quadrature noise (>= -1e-10) is clipped to 0 on export.
struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> stderrs;
    std::map<std::string, std::string> meta;
};

/// Uniform grid helper: points values from min to max inclusive.
std::vector<double> make_grid(double min, double max, int points);

}  // namespace wrmt
