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
 * Amplitude oracles c : [2^n] -> [0, 1], their m-bit fixed-point bit oracle
 * |x>|y> -> |x>|y xor c_m(x)>, and the compiled phase oracle
 * diag(e^{i pi c_m(x) / 2}) built from two bit-oracle calls, a ladder of
 * controlled phase rotations, and a kickback qubit prepared in |1>.
 */
#pragma once

#include "qsprep/simulator.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qsprep {

/// m-bit fixed-point code of c in [0, 1]: min(floor(c 2^m), 2^m - 1).
std::uint64_t fixed_point_code(double c, int m);

class AmplitudeOracle {
  public:
    AmplitudeOracle() = default;
    /// Throws DomainError unless values has 2^n entries in [0, 1], n >= 1 and
    /// 1 <= m <= 52.
    AmplitudeOracle(int n, int m, std::vector<double> values);

    static AmplitudeOracle constant(int n, int m, double value);
    static AmplitudeOracle uniform(int n, int m) { return constant(n, m, 1.0); }
    static AmplitudeOracle indicator(int n, int m, std::uint64_t x0);
    /// exp(-(x - mu)^2 / (2 sigma^2)).
    static AmplitudeOracle gaussian(int n, int m, double mu, double sigma);
    /// Independent uniform draws on [0, 1].
    static AmplitudeOracle random(int n, int m, std::uint64_t seed);
    /// "uniform", "constant:g", "indicator:x0", "gaussian:mu,sigma", "random".
    static AmplitudeOracle from_spec(const std::string &spec, int n, int m,
                                     std::uint64_t seed);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int m() const { return m_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] const std::vector<double> &values() const { return values_; }
    [[nodiscard]] const std::vector<double> &quantized() const {
        return quantized_;
    }
    [[nodiscard]] const std::vector<std::uint64_t> &codes() const { return codes_; }
    /// Same table re-quantized with a different bit count.
    [[nodiscard]] AmplitudeOracle with_bits(int m) const;

  private:
    int n_ = 0;
    int m_ = 0;
    std::vector<double> values_;
    std::vector<double> quantized_;
    std::vector<std::uint64_t> codes_;
};

/// Layout [data n, value m] used by the bit oracle.
Layout bit_oracle_layout(const AmplitudeOracle &c);

/// Permutation gate |x>|y> -> |x>|y xor code(x)> on the given qubits.
PermutationGate bit_oracle_gate(const AmplitudeOracle &c,
                                const std::vector<int> &data,
                                const std::vector<int> &value);

/// Dense bit oracle on bit_oracle_layout(c).
UnitaryMatrix bit_oracle_unitary(const AmplitudeOracle &c,
                                 int max_qubits = kDefaultMaxQubits);

struct CompiledPhaseOracle {
    Circuit circuit;        ///< O_c, controlled rotations, O_c^dagger
    Layout layout;          ///< [data n, value m, kick 1]
    UnitaryMatrix full;     ///< dense unitary of the circuit
    Eigen::MatrixXcd data_action; ///< block with value |0^m> and kick |1>
    /// Largest amplitude leaving the value |0^m>, kick |1> subspace.
    double ancilla_leakage = 0.0;
};

/// Rotation k (k = 1..m, most significant value bit first) multiplies the
/// kick qubit's |1> by e^{i scale pi / 2^(k+1)}.
Circuit phase_oracle_circuit(const AmplitudeOracle &c, const Layout &layout,
                             double scale = 1.0);

/// Compiled phase oracle; the data action is diag(e^{i scale pi c_m(x)/2}).
CompiledPhaseOracle phase_unitary(const AmplitudeOracle &c, double scale = 1.0,
                                  int max_qubits = kDefaultMaxQubits);

/// diag(e^{i scale pi c(x)/2}) from the exact (use_exact) or quantized table.
UnitaryMatrix phase_unitary_direct(const AmplitudeOracle &c, bool use_exact,
                                   double scale = 1.0);

/// (1/2^n) sum_x c(x)^2 (exact) or the quantized analogue.
double gamma(const AmplitudeOracle &c, bool use_exact = true);

/// (1/sqrt(N gamma)) sum_x c(x)|x>. Throws DomainError if gamma = 0.
StateVector target_state(const AmplitudeOracle &c, bool use_exact = true);

/// Multiplies the amplitude of |x> by e^{i pi phi_m(x)} by running the
/// compiled phase circuit with doubled rotation angles.
StateVector apply_relative_phase(const StateVector &s, const AmplitudeOracle &phi);

/// Text format: header "n m", then 2^n lines of c(x).
void write_oracle(std::ostream &os, const AmplitudeOracle &c);
AmplitudeOracle read_oracle(std::istream &is);

} // namespace qsprep
