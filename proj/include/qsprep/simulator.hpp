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
 * Dense statevector and unitary simulation.
 *
 * Qubit 0 is the most significant bit of a basis index. Registers are laid
 * out in the order they are listed, so ancilla registers listed before the
 * data register make "<0|^a (x) 1" the literal top-left block.
 */
#pragma once

#include "qsprep/common.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace qsprep {

struct Register {
    std::string name;
    int qubits = 0;
};

class Layout {
  public:
    Layout() = default;
    explicit Layout(std::vector<Register> registers);
    static Layout single(const std::string &name, int qubits);

    [[nodiscard]] const std::vector<Register> &registers() const {
        return registers_;
    }
    [[nodiscard]] int total_qubits() const { return total_; }
    [[nodiscard]] Eigen::Index dim() const { return Eigen::Index{1} << total_; }
    /// Index of the first qubit of the named register.
    [[nodiscard]] int offset(const std::string &name) const;
    [[nodiscard]] int size_of(const std::string &name) const;
    /// Qubit indices of the named register, most significant first.
    [[nodiscard]] std::vector<int> qubits_of(const std::string &name) const;

  private:
    std::vector<Register> registers_;
    int total_ = 0;
};

inline constexpr double kNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr int kDefaultMaxQubits = 14;

struct StateVector {
    Eigen::VectorXcd amplitudes;
    Layout layout;

    StateVector() = default;
    /// Validates dimension against the layout and squared norm <= 1 + 1e-12.
    StateVector(Eigen::VectorXcd amps, Layout lay);
    /// Computational basis state |index>.
    static StateVector basis(const Layout &layout, Eigen::Index index);

    [[nodiscard]] double norm() const { return amplitudes.norm(); }
};

/// Spectral norm of U^dagger U - I estimated by power iteration.
double unitarity_error(const Eigen::MatrixXcd &u);

class UnitaryMatrix {
  public:
    UnitaryMatrix() = default;
    /// Throws DomainError when unitarity_error exceeds tol.
    UnitaryMatrix(Eigen::MatrixXcd entries, Layout layout,
                  double tol = kUnitaryTol);
    static UnitaryMatrix identity(const Layout &layout);

    [[nodiscard]] const Eigen::MatrixXcd &matrix() const { return entries_; }
    [[nodiscard]] const Layout &layout() const { return layout_; }
    [[nodiscard]] UnitaryMatrix adjoint() const;
    [[nodiscard]] Eigen::Index dim() const { return entries_.rows(); }

  private:
    Eigen::MatrixXcd entries_;
    Layout layout_;
};

/**
 * @brief Orthogonal projector, stored either as a 0/1 diagonal or as an
 * orthonormal basis V of its range (Pi = V V^dagger).
 */
class Projector {
  public:
    Projector() = default;
    static Projector diagonal(std::vector<bool> mask);
    static Projector from_basis(Eigen::MatrixXcd basis);
    /// Validates Pi^2 = Pi and Pi^dagger = Pi to 1e-12.
    static Projector from_matrix(const Eigen::MatrixXcd &m);
    /// |0..0><0..0| on the first `ancillas` of `total_qubits` qubits, (x) 1.
    static Projector zero_ancillas(int total_qubits, int ancillas);
    static Projector identity(Eigen::Index dim);
    static Projector zero(Eigen::Index dim);

    [[nodiscard]] Eigen::Index dim() const;
    [[nodiscard]] Eigen::Index rank() const;
    [[nodiscard]] bool is_diagonal() const { return !mask_.empty(); }
    [[nodiscard]] const std::vector<bool> &mask() const { return mask_; }
    [[nodiscard]] Eigen::MatrixXcd matrix() const;
    /// Pi v.
    [[nodiscard]] Eigen::VectorXcd apply(const Eigen::VectorXcd &v) const;
    /// Pi M, column by column.
    [[nodiscard]] Eigen::MatrixXcd apply(const Eigen::MatrixXcd &m) const;

  private:
    std::vector<bool> mask_;
    Eigen::MatrixXcd basis_;
};

/// Matrix on `targets`, applied when every qubit in `controls` is |1>.
struct MatrixGate {
    std::vector<int> controls;
    std::vector<int> targets;
    Eigen::MatrixXcd matrix;
    std::string label;
};

/// diag(entries) on the listed qubits.
struct DiagonalGate {
    std::vector<int> qubits;
    Eigen::VectorXcd entries;
    std::string label;
};

/// |i> -> |perm[i]> on the listed qubits.
struct PermutationGate {
    std::vector<int> qubits;
    std::vector<std::uint64_t> perm;
    std::string label;
};

/// e^{i phi (2 Pi - 1)} on the full space.
struct ProjectorPhaseGate {
    Projector projector;
    double phi = 0.0;
    std::string label;
};

/// Arbitrary matrix on the full space, optionally controlled.
struct FullGate {
    Eigen::MatrixXcd matrix;
    std::string label;
};

using Gate = std::variant<MatrixGate, DiagonalGate, PermutationGate,
                          ProjectorPhaseGate, FullGate>;
using Circuit = std::vector<Gate>;

namespace gates {
Eigen::Matrix2cd H();
Eigen::Matrix2cd X();
Eigen::Matrix2cd Y();
Eigen::Matrix2cd Z();
/// diag(1, e^{i theta}).
Eigen::Matrix2cd phase(double theta);

MatrixGate single(int target, const Eigen::Matrix2cd &m, std::string label = {});
MatrixGate controlled(std::vector<int> controls, std::vector<int> targets,
                      Eigen::MatrixXcd m, std::string label = {});
} // namespace gates

/// Inverse of a gate.
Gate adjoint(const Gate &g);
Circuit adjoint(const Circuit &c);

/// Applies a gate in place to every column of `states` (rows = 2^q).
void apply_inplace(const Gate &g, Eigen::Ref<Eigen::MatrixXcd> states, int q);
void apply_inplace(const Circuit &c, Eigen::Ref<Eigen::MatrixXcd> states, int q);

/// Throws DomainError on invalid qubits or dimension mismatch.
StateVector apply(const Gate &g, const StateVector &s);
StateVector apply(const Circuit &c, const StateVector &s);

/// e^{i phi} Pi s + e^{-i phi} (1 - Pi) s.
StateVector projector_phase(const Projector &pi, double phi, const StateVector &s);
Eigen::VectorXcd projector_phase(const Projector &pi, double phi,
                                 const Eigen::VectorXcd &s);

struct Measurement {
    std::optional<StateVector> state; ///< empty when the probability vanishes
    double probability = 0.0;
};

/// Deterministic post-selection: (Pi s / |Pi s|, |Pi s|^2).
Measurement project_measure(const Projector &pi, const StateVector &s);

/// Seeded sampling: returns the post-measurement state for the outcome drawn
/// with probability |Pi s|^2 and reports whether Pi was observed.
struct SampledMeasurement {
    StateVector state;
    bool in_range = false;
    double probability = 0.0;
};
SampledMeasurement sample_measure(const Projector &pi, const StateVector &s,
                                  std::mt19937_64 &rng);

/// Dense product of the gates in application order.
UnitaryMatrix circuit_unitary(const Circuit &c, const Layout &layout,
                              int max_qubits = kDefaultMaxQubits);

double state_dist(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);
double state_dist(const StateVector &a, const StateVector &b);
/// Spectral norm of A - B (exact SVD up to dimension 512, power iteration
/// beyond).
double op_dist(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);
double spectral_norm(const Eigen::MatrixXcd &a);
double fidelity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);
double fidelity(const StateVector &a, const StateVector &b);
/// min over alpha of |a - e^{i alpha} b|.
double phase_aligned_dist(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

/// Text dumps: "dim" header, then "re im" per entry (row-major for matrices).
void write_state(std::ostream &os, const Eigen::VectorXcd &v);
void write_matrix(std::ostream &os, const Eigen::MatrixXcd &m);
Eigen::VectorXcd read_state(std::istream &is);
Eigen::MatrixXcd read_matrix(std::istream &is);

} // namespace qsprep
