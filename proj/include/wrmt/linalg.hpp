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

#include <complex>
#include <stdexcept>
#include <vector>

namespace wrmt {

/// Raised when the implicit-shift QL iteration fails to converge.
struct eigensolver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Implicit-shift QL on a symmetric tridiagonal matrix.
/// d[0..n-1] is the diagonal, e[0..n-2] the subdiagonal; on return d holds the
/// eigenvalues (unsorted). If z is non-null it must point to an n*n row-major
/// matrix whose columns get multiplied by the accumulated rotations (pass the
/// identity to obtain eigenvectors as columns).
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, double* z = nullptr);

/// Householder reduction of a Hermitian matrix (row-major, n*n) to real
/// symmetric tridiagonal form. Returns {diag, subdiag}. If q is non-null it
/// receives the n*n unitary with A = Q T Q^dagger.
void hermitian_tridiagonalize(std::vector<std::complex<double>>& a, int n,
                              std::vector<double>& diag, std::vector<double>& sub,
                              std::vector<std::complex<double>>* q = nullptr);

/// Eigenvalues of a Hermitian matrix, ascending. The input matrix is destroyed.
std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> a, int n);

/// Eigenvalues (ascending) and matching eigenvectors (columns of v, row-major)
/// of a Hermitian matrix.
void hermitian_eigen(std::vector<std::complex<double>> a, int n,
                     std::vector<double>& w, std::vector<std::complex<double>>& v);

}  // namespace wrmt
