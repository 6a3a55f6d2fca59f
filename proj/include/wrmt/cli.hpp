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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wrmt {

/// Exit codes of the command-line front end.
///   0 success, 1 invalid arguments, 2 verification failures,
///   3 numerical-diagnostic failures (quadrature residual, eigensolver).
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitVerifyFailed = 2,
    kExitNumerical = 3,
};

struct RunConfig {
    std::string command;  // density | density-micro | mc | compare | partition | verify
    int n = 4;
    int nu = 0;
    double a = 0.3;
    double m = 0.0;
    double mhat = 0.0;
    double ahat = 0.1;
    double zhat = 0.0;
    double grid_min = -4.0;
    double grid_max = 4.0;
    int grid_points = 200;
    std::uint64_t draws = 100000;
    std::uint64_t seed = 20260811;
    int streams = 8;
    std::string out;
    std::string format = "csv";  // csv | json
    int k = 1;
    std::vector<double> points;
    std::optional<std::string> archive;
};

/// Execute one parsed configuration; artifacts land on disk at config.out.
int run(const RunConfig& config);

/// Parse argv and run. This is the whole CLI (main delegates here).
int run_cli(int argc, const char* const* argv);

}  // namespace wrmt
