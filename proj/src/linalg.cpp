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

#include "riscade/linalg.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "riscade/errors.hpp"

namespace riscade {

double hermiticity_gap(const CMat& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const CMat& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a),
                                         Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

CMat psd_sqrt(const CMat& a, const std::string& label) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a));
  if (es.info() != Eigen::Success)
    throw MatrixError("eigendecomposition failed for " + label);
  RVec values = es.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < -kPsdClipTolerance * scale)
      throw MatrixError(label + " is not positive semi-definite (eigenvalue " +
                        std::to_string(values[i]) + ")");
    values[i] = std::sqrt(std::max(values[i], 0.0));
  }
  return es.eigenvectors() * values.asDiagonal() *
         es.eigenvectors().adjoint();
}

double logdet_identity_plus_psd(const CMat& x) {
  if (x.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(x),
                                         Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigendecomposition failed in log-det");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()[i];
    if (v <= -1.0)
      throw NumericalError("log-det argument is not positive definite");
    acc += std::log1p(std::max(v, 0.0));
  }
  return acc;
}

double logdet_lu(const CMat& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::PartialPivLU<CMat> lu(a);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double mag = std::abs(lu.matrixLU()(i, i));
    if (!(mag > 0.0)) throw NumericalError("singular matrix in log-det");
    acc += std::log(mag);
  }
  return acc;
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t matrix_hash(const CMat& a) {
  std::uint64_t h = fnv1a(&a, 0);
  const std::int64_t dims[2] = {a.rows(), a.cols()};
  h = fnv1a(dims, sizeof(dims), h);
  if (a.size() > 0)
    h = fnv1a(a.data(), sizeof(Complex) * static_cast<std::size_t>(a.size()), h);
  return h;
}

void write_matrix(std::ostream& out, const CMat& a) {
  out << a.rows() << ',' << a.cols() << ",complex\n";
  out.precision(17);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (c) out << ',';
      out << a(r, c).real() << ',' << a(r, c).imag();
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const CMat& a) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  write_matrix(out, a);
}

CMat read_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw ConfigError("matrix dump: missing header");
  std::istringstream hs(header);
  std::string rows_s, cols_s, kind;
  if (!std::getline(hs, rows_s, ',') || !std::getline(hs, cols_s, ',') ||
      !std::getline(hs, kind, ','))
    throw ConfigError("matrix dump: malformed header '" + header + "'");
  if (kind != "complex")
    throw ConfigError("matrix dump: unsupported field kind '" + kind + "'");
  const long rows = std::stol(rows_s);
  const long cols = std::stol(cols_s);
  if (rows < 0 || cols < 0) throw ConfigError("matrix dump: negative dims");
  CMat a(rows, cols);
  for (long r = 0; r < rows; ++r) {
    std::string line;
    if (!std::getline(in, line))
      throw ConfigError("matrix dump: truncated at row " + std::to_string(r));
    std::istringstream ls(line);
    std::string tok;
    for (long c = 0; c < cols; ++c) {
      double re = 0.0, im = 0.0;
      if (!std::getline(ls, tok, ',')) throw ConfigError("matrix dump: short row");
      re = std::stod(tok);
      if (!std::getline(ls, tok, ',')) throw ConfigError("matrix dump: short row");
      im = std::stod(tok);
      a(r, c) = Complex(re, im);
    }
  }
  return a;
}

}  // namespace riscade
