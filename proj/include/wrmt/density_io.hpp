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

#include "wrmt/density.hpp"

namespace wrmt {

/// CSV with header "x,rho"; shortest round-trip decimals, so equal curves
/// serialize to identical bytes. Negative quadrature noise above -1e-10 is
/// clipped to 0.
std::string to_csv(const DensityCurve& c);

/// JSON with grid, values, optional per-bin standard errors and the metadata
/// map (plus tool version and generation timestamp).
std::string to_json(const DensityCurve& c);

void write_text(const std::string& path, const std::string& text);

}  // namespace wrmt
