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

#include <string>
#include <vector>

namespace wrmt {

/// One named invariant check: measured value against its tolerance.
struct CheckResult {
    std::string name;
    bool pass;
    double measured;
    double tolerance;
    std::string detail;
};

/// Run every module's invariant suite with fast parameters. The heavy
/// 10^6-draw histogram comparisons live in the acceptance suite instead.
std::vector<CheckResult> run_verify();

/// Render results as a table / JSON report.
std::string verify_report_text(const std::vector<CheckResult>& results);
std::string verify_report_json(const std::vector<CheckResult>& results);

}  // namespace wrmt
