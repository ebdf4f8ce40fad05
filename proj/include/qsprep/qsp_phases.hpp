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
 * Phase sequences for quantum signal processing in the reflection
 * convention: P(x) is the top-left entry of
 *
 *     prod_{j=1}^{d} e^{i phi_j Z} R(x),   R(x) = [[x, s], [s, -x]],
 *
 * with s = sqrt(1 - x^2). Relation to the rotation convention
 * W(x) = e^{i arccos(x) X}: R(x) = -i e^{i pi/4 Z} W(x) e^{i pi/4 Z}, so a
 * reflection sequence (phi_1..phi_d) equals (-i)^d times the rotation
 * sequence (phi_1 + pi/4, phi_2 + pi/2, ..., phi_d + pi/2, pi/4).
 */
#pragma once

#include "qsprep/approximation.hpp"
#include "qsprep/polynomial.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace qsprep {

struct PhaseSequence {
    std::vector<double> phases;

    [[nodiscard]] int degree() const { return static_cast<int>(phases.size()); }
};

/// The 2x2 product prod_j e^{i phi_j Z} R(x).
Eigen::Matrix2cd qsp_matrix(const PhaseSequence &phi, double x);

/// Top-left entry of qsp_matrix(phi, x).
cplx reconstruct(const PhaseSequence &phi, double x);

/// The sequence -phi, which realizes the coefficient-conjugated polynomial.
PhaseSequence conjugate_phases(const PhaseSequence &phi);

/// Maps an angle to (-pi, pi].
double normalize_angle(double a);

struct VerificationReport {
    double max_error = 0.0;
    int grid_size = 0;
    double tolerance = 1e-7;
    bool pass = false;
};

/// Max |reconstruct(phi, x) - P(x)| over grid_size Chebyshev nodes.
VerificationReport verify_phases(const PhaseSequence &phi, const Polynomial &p,
                                 int grid_size, double tolerance = 1e-7);

struct PhaseFindingOptions {
    double tolerance = 1e-7;       ///< required reconstruction error
    double condition_tol = 1e-8;   ///< tolerance of the admissibility check
    int restarts = 6;              ///< random restarts of the optimizer
    std::uint64_t seed = 20260101; ///< seed of the restart generator
    bool allow_optimization = true;
};

/**
 * @brief Phases realizing a complex polynomial that satisfies the four
 * admissibility conditions.
 *
 * Layer stripping is used when the complement can be derived from the real
 * part; otherwise, or when stripping is inaccurate, a Levenberg-Marquardt fit
 * on Chebyshev nodes takes over. Throws DomainError for inadmissible input and
 * ConvergenceError when no sequence reaches options.tolerance.
 */
PhaseSequence find_phases(const Polynomial &p,
                          const PhaseFindingOptions &options = {});

/// Phases from an explicit completion pair (P, Q) by layer stripping.
PhaseSequence find_phases(const Completion &completion,
                          const PhaseFindingOptions &options = {});

/// Completes a real polynomial and returns phases for its completion.
PhaseSequence find_phases_real(const Polynomial &p_real,
                               const PhaseFindingOptions &options = {});

/// One angle per line, 17 significant digits.
void write_phases(std::ostream &os, const PhaseSequence &phi);
PhaseSequence read_phases(std::istream &is);

} // namespace qsprep
