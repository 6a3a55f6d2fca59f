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

#include <vector>

#include "wrmt/logval.hpp"

namespace wrmt {

/// Dense real antisymmetric matrix. Entries are stored fully; construction
/// from the strict upper triangle enforces A[j][i] = -A[i][j], A[i][i] = 0.
class AntisymmetricMatrix {
  public:
    explicit AntisymmetricMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim, 0.0) {}

    /// Build from the strict upper triangle, row-major (a01, a02, ..., a12, ...).
    static AntisymmetricMatrix from_upper(int dim, const std::vector<double>& upper);

    int dim() const { return dim_; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }
    void set(int i, int j, double v) {
        a_[static_cast<size_t>(i) * dim_ + j] = v;
        a_[static_cast<size_t>(j) * dim_ + i] = -v;
    }
    std::vector<double>& data() { return a_; }
    const std::vector<double>& data() const { return a_; }

  private:
    int dim_;
    std::vector<double> a_;
};

/// Pfaffian by skew-symmetric Parlett-Reid elimination with partial pivoting,
/// returned in sign/log form. Odd dimension gives exact zero; a pivot below
/// the relative threshold 1e-13 is declared a structural zero.
LogVal pfaffian(AntisymmetricMatrix a);

/// Pfaffian of the bordered block matrix [[F, B], [-B^T, 0]] where F is the
/// antisymmetric base block and B a base x cols border. The assembled
/// dimension base+cols must be even.
LogVal pfaffian_bordered(const AntisymmetricMatrix& f_block,
                         const std::vector<std::vector<double>>& border);

/// Pfaffian of an antisymmetric matrix whose entries are given in sign/log
/// form (entries[i*dim+j] = -entries[j*dim+i]). The matrix is equilibrated by
/// a diagonal congruence before the double-precision elimination, so entries
/// may span hundreds of decades.
LogVal pfaffian_log(int dim, const std::vector<LogVal>& entries);

}  // namespace wrmt
