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

#include <stdexcept>
#include <string>
#include <vector>

namespace riscade {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside the model's calibrated domain (e.g. distance below 1 m).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or malformed configuration (scenario files, geometry).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A matrix violated a structural requirement (Hermitian, PSD, dimensions).
class MatrixError : public Error {
 public:
  using Error::Error;
};

/// Generic numerical failure (quadrature, log-det of an indefinite matrix).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Iteration ran out of budget; carries the last residual vector.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// Iteration produced non-finite values.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Problem has no usable degrees of freedom (e.g. all-zero channel gains).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace riscade
