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
 * Non-unitary oblivious fixed-point amplitude amplification. With
 * Pi~ = |0..0><0..0| (x) 1 and Pi = |Psi><Psi|, |Psi> = |0..0> S|0^n>, a
 * unitary C with Pi~ C Pi = sigma |w><Psi| is turned into U_phi whose
 * block is P(sigma)|w><Psi| for an odd sign approximant P.
 */
#pragma once

#include "qsprep/approximation.hpp"
#include "qsprep/qsp_phases.hpp"
#include "qsprep/simulator.hpp"

#include <iosfwd>

namespace qsprep {

struct AmplificationPlan {
    double sigma = 1.0;  ///< singular value to amplify
    double delta = 0.1;  ///< failure budget
    double Delta = 1.0;  ///< threshold of the sign approximant
    PhaseSequence phases;
    int rounds = 1;      ///< degree = number of C and C^dagger uses
    Polynomial polynomial;
};

inline constexpr double kDefaultSigmaFloor = 1e-3;

struct ProjectorPair {
    Projector left;  ///< Pi~
    Projector right; ///< Pi
};

/// Projectors on [ancillas, data n] with Pi = |0..0><0..0| (x) S|0^n><0^n|S^dag.
ProjectorPair build_projectors(int n, const UnitaryMatrix &s, int ancillas = 2);

/**
 * @brief Sign-approximant phases with Delta = margin * sigma.
 *
 * When Delta >= 1 - delta/2 the identity polynomial P(x) = x already meets
 * the target and a one-round plan is returned. Throws DegreeOverflow for
 * sigma below `floor`.
 */
AmplificationPlan plan_amplification(double sigma, double delta,
                                     double margin = 1.0,
                                     double floor = kDefaultSigmaFloor,
                                     const PhaseFindingOptions &options = {});

/// Dense U_phi for C on [ancillas, data n].
UnitaryMatrix amplify(const UnitaryMatrix &c, const UnitaryMatrix &s,
                      const AmplificationPlan &plan, int ancillas = 2);

struct AmplificationResult {
    Eigen::VectorXcd output;     ///< U_phi |Psi>
    double success_probability = 0.0; ///< |Pi~ U_phi |Psi>|^2
    Eigen::VectorXcd data_state; ///< normalized data part of Pi~ U_phi |Psi>
    long c_calls = 0;            ///< uses of C or C^dagger
    long s_calls = 0;            ///< uses of S or S^dagger
};

/**
 * @brief Statevector run of U_phi on |Psi>. Each Pi-phase is applied as
 * S^dagger, a phase on |0..0>, then S.
 */
AmplificationResult amplify_state(const Eigen::MatrixXcd &c,
                                  const Eigen::MatrixXcd &s,
                                  const AmplificationPlan &plan,
                                  int ancillas = 2);

/// Header "sigma delta rounds", then the phases one per line.
void write_plan(std::ostream &os, const AmplificationPlan &plan);
AmplificationPlan read_plan(std::istream &is);

} // namespace qsprep
