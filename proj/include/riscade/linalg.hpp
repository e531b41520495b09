// SPDX-License-Identifier: Apache-2.0
//
// riscade - cooperative double-RIS MIMO ergodic-rate analysis and design
// Copyright (C) 2026 The riscade authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace riscade {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Eigenvalues below this magnitude count as numerical zero when clipping.
inline constexpr double kPsdClipTolerance = 1e-10;

inline CMat hermitize(const CMat& a) { return 0.5 * (a + a.adjoint()); }

/// Largest elementwise deviation from Hermitian symmetry.
double hermiticity_gap(const CMat& a);

/// Smallest eigenvalue of the Hermitian part of `a`.
double min_eigenvalue(const CMat& a);

/// Principal square root of a Hermitian PSD matrix.
///
/// Eigenvalues in [-kPsdClipTolerance, 0) are clipped to zero; anything more
/// negative raises MatrixError naming `label`.
CMat psd_sqrt(const CMat& a, const std::string& label);

/// log det(I + X) for Hermitian PSD X, accurate for both tiny and large X.
double logdet_identity_plus_psd(const CMat& x);

/// log |det(A)| through a partially pivoted LU factorization.
double logdet_lu(const CMat& a);

/// FNV-1a over raw bytes; used for matrix/config fingerprints in traces.
std::uint64_t fnv1a(const void* data, std::size_t size,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);

std::uint64_t matrix_hash(const CMat& a);

/// Row-major text dump: "rows,cols,complex" header, then one row per line
/// with interleaved real,imag columns. Round-trips through read_matrix.
void write_matrix(std::ostream& out, const CMat& a);
void write_matrix_file(const std::string& path, const CMat& a);
CMat read_matrix(std::istream& in);

}  // namespace riscade
