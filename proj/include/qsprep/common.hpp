// Copyright 2026 The qsprep Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Scalar aliases and the exception hierarchy shared by every module.
 */
#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsprep {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Base class of all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A polynomial construction needs more terms than the configured limit.
class DegreeOverflow : public Error {
  public:
    DegreeOverflow(const std::string &what, long needed_degree)
        : Error(what + " (needs degree " + std::to_string(needed_degree) +
                ")"),
          needed_degree_(needed_degree) {}
    [[nodiscard]] long needed_degree() const noexcept { return needed_degree_; }

  private:
    long needed_degree_;
};

/// Spectral factorization of 1 - P_R^2 failed to reach the required accuracy.
class FactorizationError : public Error {
  public:
    using Error::Error;
};

/// Phase finding did not reach the requested reconstruction error.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    [[nodiscard]] double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

/// Input violates a documented precondition (parity, range, dimension...).
class DomainError : public Error {
  public:
    using Error::Error;
};

} // namespace qsprep
