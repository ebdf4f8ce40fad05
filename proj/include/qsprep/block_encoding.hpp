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
 * Block encodings: the sine construction H, cU, Y, cU^dagger, H for
 * sin(pi H), singular value transformation circuits with projector-controlled
 * phases, the real-part linear combination, and the Hamiltonian extraction
 * that composes them.
 */
#pragma once

#include "qsprep/approximation.hpp"
#include "qsprep/qsp_phases.hpp"
#include "qsprep/simulator.hpp"

#include <functional>
#include <optional>

namespace qsprep {

struct BlockEncoding {
    UnitaryMatrix unitary;
    int ancillas = 0;       ///< leading qubits that select the block
    Projector proj_left;    ///< Pi~ (output side)
    Projector proj_right;   ///< Pi (input side)
    double certified_error = 0.0;
    double scale = 1.0;     ///< sub-normalization alpha
    /// Intended data-space matrix, when known.
    std::optional<Eigen::MatrixXcd> intended;
    /// Calls to the underlying controlled unitary (cU or cU^dagger).
    long queries = 0;
};

/// Top-left data block <0|^a U |0>^a.
Eigen::MatrixXcd extract_block(const BlockEncoding &be);

/// Pi~ U Pi on the full space.
Eigen::MatrixXcd compressed(const BlockEncoding &be);

/// Layout [anc 1, data n] and gates H, cU, Y, cU^dagger, H.
Circuit sine_circuit(const Eigen::MatrixXcd &u, int data_qubits);

/// (1, 0)-block-encoding of sin(pi H) = (U - U^dagger)/(2i) for U = e^{i pi H}.
BlockEncoding sine_block_encoding(const UnitaryMatrix &u);

/// One factor of a singular value transformation sequence.
struct QsvtOp {
    enum class Kind { apply_u, apply_u_dagger, phase_left, phase_right };
    Kind kind;
    double phi = 0.0;
};

/**
 * @brief Operator sequence of the transformation circuit, listed left to
 * right as a matrix product (the last entry acts first).
 *
 * Odd d: e^{i phi_1 (2 Pi~ - 1)} U prod_k (e^{i phi_2k (2 Pi - 1)} U^dagger
 * e^{i phi_2k+1 (2 Pi~ - 1)} U). Even d: prod_k (e^{i phi_2k-1 (2 Pi - 1)}
 * U^dagger e^{i phi_2k (2 Pi~ - 1)} U).
 */
std::vector<QsvtOp> qsvt_sequence(const PhaseSequence &phi);

/// Applies the sequence to a vector using caller-supplied actions.
Eigen::VectorXcd apply_qsvt_sequence(
    const PhaseSequence &phi, const std::function<Eigen::VectorXcd(const Eigen::VectorXcd &)> &u,
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd &)> &u_dagger,
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd &, double)> &phase_left,
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd &, double)> &phase_right,
    Eigen::VectorXcd v);

/**
 * @brief Block encoding of P^(SV)(A) where P is realized by phi.
 *
 * Projector phases act directly on be's projectors, so no ancilla is added.
 * certified_error is 4 d sqrt(be.certified_error). When be carries a
 * Hermitian intended matrix, the intended transform is attached.
 */
BlockEncoding qsvt_circuit(const BlockEncoding &be, const PhaseSequence &phi,
                           Parity parity);

/// Hadamard, select(U_phi, U_-phi), Hadamard on one new leading ancilla:
/// block (P^(SV) + P*^(SV)) / 2.
BlockEncoding lcu_real_part(const BlockEncoding &be, const PhaseSequence &phi);

struct HamiltonianEncoding {
    BlockEncoding encoding;   ///< layout [lcu 1, sine 1, data n]
    Approximation arcsin;     ///< arcsin(x)/pi approximation used
    PhaseSequence phases;     ///< phases of its completion
    double sine_norm = 0.0;   ///< |sin(pi H)|
    long controlled_calls = 0; ///< cU plus cU^dagger calls
};

/// Principal generator H with U = e^{i pi H}, spectrum in (-1, 1].
Eigen::MatrixXcd unitary_generator(const Eigen::MatrixXcd &u);

/**
 * @brief (2, eps)-block-encoding of H from U = e^{i pi H}.
 *
 * Requires |sin(pi H)| <= 1 - delta (DomainError otherwise) and recovers H
 * when its spectrum lies in [-1/2, 1/2].
 */
HamiltonianEncoding hamiltonian_from_unitary(const UnitaryMatrix &u,
                                             double epsilon, double delta,
                                             const PhaseFindingOptions &options = {});

} // namespace qsprep
