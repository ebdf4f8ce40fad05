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
 * End-to-end state preparation from an amplitude oracle: phase oracle,
 * sine block encoding, arcsin transformation, and fixed-point amplification
 * of |00>|+^n>. Includes the error-bound harness, the single-marked-item
 * search case, and CSV sweeps.
 */
#pragma once

#include "qsprep/oracle.hpp"
#include "qsprep/simulator.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qsprep {

struct PrepConfig {
    AmplitudeOracle oracle;
    double epsilon = 1e-2;        ///< final state error
    double delta = 0.05;          ///< failure probability
    std::optional<int> m;         ///< oracle bits; default_bits() when unset
    double beta = 0.5;            ///< H = beta diag(c/2) is block-encoded
    std::uint64_t seed = 20260101;
    double arcsin_delta = 0.29;   ///< arcsin domain margin on |sin(pi H)|
    double sigma_margin = 0.9;    ///< Delta = sigma_margin * sigma_hat
};

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct PrepReport {
    StateVector final_state;      ///< data register, phase aligned to target
    StateVector target;           ///< normalized exact amplitude vector
    double fidelity = 0.0;        ///< |<target|final>|
    double distance = 0.0;        ///< |final - target| after phase alignment
    double success_probability = 0.0;
    long oracle_calls = 0;        ///< phase-oracle (cU, cU^dagger) calls
    long bit_oracle_calls = 0;    ///< O_c uses, two per phase-oracle call
    long s_calls = 0;             ///< Hadamard-layer uses
    int arcsin_degree = 0;
    int sign_degree = 0;
    int m = 0;
    double gamma = 0.0;           ///< mean of c(x)^2
    double gamma_quantized = 0.0; ///< mean of c_m(x)^2
    double gamma_tilde = 0.0;     ///< 4 |H~ |+>|^2
    double epsilon_h = 0.0;       ///< Hamiltonian error target eps gamma / 3
    double epsilon_hat = 0.0;     ///< measured |H~ - H|
    double sigma_hat = 0.0;       ///< singular value used to plan
    double sigma = 0.0;           ///< actual singular value of the block
    double calls_per_sqrt_n = 0.0;
    std::vector<BoundCheck> bound_checks;

    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] const BoundCheck *find(const std::string &name) const;
};

/// ceil(log2(3 / (epsilon gamma))) + 2, clamped to [1, 52].
int default_bits(double epsilon, double gamma);

/**
 * @brief Inequalities between a Hamiltonian estimate and its target.
 *
 * Both matrices act on the data space with H = diag(c/2). The checks use
 * eps_hat = |h_tilde - h|, gamma = 4 |h|+>|^2 and gamma~ = 4 |h_tilde|+>|^2:
 * asymmetric_distance, gamma_difference, premise_eps_hat_le_gamma_over_4
 * and, when the premise holds, gamma_tilde_lower, sqrt_gamma_difference and
 * state_error_3eps_over_gamma.
 */
std::vector<BoundCheck> error_bound_checks(const Eigen::MatrixXcd &h_tilde,
                                           const Eigen::MatrixXcd &h);

/// Runs the pipeline; bound_checks hold final_state_error and success_probability.
PrepReport prepare_state(const PrepConfig &cfg);

/// prepare_state plus hamiltonian_error, final_vs_3eps_hat_over_gamma and
/// the error_bound_checks of the extracted Hamiltonian.
PrepReport verify_error_bounds(const PrepConfig &cfg);

/// prepare_state on the indicator of x0, with calls_per_sqrt_n filled in.
PrepReport grover_case(int n, std::uint64_t x0, double delta, double epsilon);

/// One grid of runs; the cartesian product is taken in the listed order.
struct SweepGrid {
    std::vector<int> n;
    std::vector<std::string> dist{"random"};
    std::vector<double> epsilon{1e-2};
    std::vector<double> delta{0.05};
    std::optional<int> m;
};

struct SweepSpec {
    std::uint64_t seed = 1;
    std::vector<SweepGrid> runs;
};

/**
 * JSON: {"seed": 7, "runs": [{"n": [2, 3], "dist": ["random"],
 * "epsilon": [0.01], "delta": [0.05], "m": 12}]}. Every key but "n" is
 * optional.
 */
SweepSpec parse_sweep_spec(std::istream &is);

inline constexpr const char *kSweepHeader =
    "n,m,gamma,epsilon,delta,arcsin_degree,sign_degree,oracle_calls,fidelity,"
    "success_prob,bound_3eps_over_gamma_lhs,bound_3eps_over_gamma_rhs,pass,status";

/// Writes the header and one row per run. Run k uses seed + k. Returns the
/// number of rows whose status is not "ok".
int sweep(const SweepSpec &spec, std::ostream &csv);

void write_report(std::ostream &os, const PrepReport &report);

} // namespace qsprep
