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
#include "qsprep/pipeline.hpp"

#include "qsprep/amplifier.hpp"
#include "qsprep/block_encoding.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace qsprep {

namespace {

BoundCheck check(std::string name, double lhs, double rhs) {
    return {std::move(name), lhs, rhs, lhs <= rhs};
}

/// H^{(x) n} as a dense matrix.
Eigen::MatrixXcd hadamard_layer(int n) {
    Circuit c;
    for (int q = 0; q < n; ++q) {
        c.emplace_back(gates::single(q, gates::H(), "H"));
    }
    return circuit_unitary(c, Layout::single("data", n), n).matrix();
}

Eigen::MatrixXcd target_hamiltonian(const AmplitudeOracle &c) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(c.size()));
    for (std::size_t x = 0; x < c.size(); ++x) {
        d(static_cast<Eigen::Index>(x)) = c.values()[x] / 2.0;
    }
    return d.asDiagonal();
}

struct PipelineRun {
    PrepReport report;
    Eigen::MatrixXcd h_tilde; ///< extracted block divided by beta
    Eigen::MatrixXcd h;       ///< diag(c/2)
};

void validate(const PrepConfig &cfg) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
        throw DomainError("epsilon must lie in (0, 1)");
    }
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
        throw DomainError("delta must lie in (0, 1)");
    }
    if (!(cfg.beta > 0.0 && cfg.beta <= 0.5)) {
        throw DomainError("beta must lie in (0, 1/2]");
    }
    if (cfg.oracle.size() == 0) {
        throw DomainError("no amplitude oracle given");
    }
}

PipelineRun run_pipeline(const PrepConfig &cfg) {
    validate(cfg);
    PipelineRun run;
    PrepReport &r = run.report;
    r.gamma = gamma(cfg.oracle, true);
    if (!(r.gamma > 0.0)) {
        throw DomainError("amplitude table is identically zero (gamma = 0)");
    }
    r.epsilon_h = cfg.epsilon * r.gamma / 3.0;
    if (r.epsilon_h > r.gamma / 4.0) {
        throw DomainError("infeasible epsilon: eps gamma / 3 = " +
                          std::to_string(r.epsilon_h) + " exceeds gamma / 4 = " +
                          std::to_string(r.gamma / 4.0));
    }
    r.m = cfg.m ? *cfg.m : default_bits(cfg.epsilon, r.gamma);
    const AmplitudeOracle oracle = cfg.oracle.with_bits(r.m);
    const double quantization = std::ldexp(1.0, -r.m - 1);
    if (quantization >= r.epsilon_h) {
        throw DomainError("m = " + std::to_string(r.m) +
                          " bits leave no budget for the arcsin approximation");
    }
    r.gamma_quantized = gamma(oracle, false);
    const int n = oracle.n();

    PhaseFindingOptions options;
    options.seed = cfg.seed;
    const auto u = phase_unitary_direct(oracle, false, cfg.beta);
    const auto ham = hamiltonian_from_unitary(
        u, cfg.beta * (r.epsilon_h - quantization), cfg.arcsin_delta, options);
    r.arcsin_degree = ham.phases.degree();

    run.h = target_hamiltonian(oracle);
    run.h_tilde = extract_block(ham.encoding) / cfg.beta;

    r.sigma_hat = cfg.beta * std::sqrt(r.gamma_quantized) / 2.0;
    const auto plan = plan_amplification(r.sigma_hat, cfg.delta, cfg.sigma_margin,
                                         kDefaultSigmaFloor, options);
    r.sign_degree = plan.rounds;

    const Eigen::MatrixXcd s = hadamard_layer(n);
    const auto amp = amplify_state(ham.encoding.unitary.matrix(), s, plan, 2);
    r.success_probability = amp.success_probability;
    r.oracle_calls = amp.c_calls * ham.controlled_calls;
    r.bit_oracle_calls = 2 * r.oracle_calls;
    r.s_calls = amp.s_calls;

    const Eigen::VectorXcd plus =
        Eigen::VectorXcd::Constant(run.h.rows(), 1.0 / std::sqrt(double(run.h.rows())));
    const Eigen::VectorXcd v = run.h_tilde * plus;
    r.gamma_tilde = 4.0 * v.squaredNorm();
    r.sigma = cfg.beta * v.norm();
    r.epsilon_hat = op_dist(run.h_tilde, target_hamiltonian(cfg.oracle));

    r.target = target_state(cfg.oracle, true);
    Eigen::VectorXcd final_state = amp.data_state;
    const cplx overlap = r.target.amplitudes.dot(final_state);
    if (std::abs(overlap) > 0.0) {
        final_state *= std::conj(overlap) / std::abs(overlap);
    }
    r.final_state = StateVector(final_state, Layout::single("data", n));
    r.fidelity = std::abs(overlap);
    r.distance = (final_state - r.target.amplitudes).norm();
    r.calls_per_sqrt_n =
        static_cast<double>(r.oracle_calls) / std::sqrt(static_cast<double>(oracle.size()));

    r.bound_checks.push_back(check("final_state_error", r.distance, cfg.epsilon));
    r.bound_checks.push_back(
        check("success_probability", 1.0 - cfg.delta, r.success_probability));
    return run;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string csv_quote(const std::string &s) {
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += (ch == '\n' || ch == '\r') ? ' ' : ch;
    }
    return out + "\"";
}

} // namespace

bool PrepReport::all_pass() const {
    return std::all_of(bound_checks.begin(), bound_checks.end(),
                       [](const BoundCheck &c) { return c.pass; });
}

const BoundCheck *PrepReport::find(const std::string &name) const {
    for (const auto &c : bound_checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

int default_bits(double epsilon, double gamma) {
    if (!(epsilon > 0.0 && gamma > 0.0)) {
        throw DomainError("default_bits needs positive epsilon and gamma");
    }
    const int m = static_cast<int>(std::ceil(std::log2(3.0 / (epsilon * gamma)))) + 2;
    return std::clamp(m, 1, 52);
}

std::vector<BoundCheck> error_bound_checks(const Eigen::MatrixXcd &h_tilde,
                                           const Eigen::MatrixXcd &h) {
    if (h_tilde.rows() != h.rows() || h_tilde.cols() != h.cols() || h.rows() != h.cols()) {
        throw DomainError("Hamiltonian estimate and target differ in shape");
    }
    const Eigen::VectorXcd plus =
        Eigen::VectorXcd::Constant(h.rows(), 1.0 / std::sqrt(double(h.rows())));
    const Eigen::VectorXcd v = h * plus;
    const Eigen::VectorXcd vt = h_tilde * plus;
    if (!(v.norm() > 0.0)) {
        throw DomainError("target Hamiltonian annihilates |+> (gamma = 0)");
    }
    const double eps = op_dist(h_tilde, h);
    const double g = 4.0 * v.squaredNorm();
    const double gt = 4.0 * vt.squaredNorm();

    std::vector<BoundCheck> out;
    out.push_back(check("asymmetric_distance", (vt - v).norm(), eps));
    out.push_back(check("gamma_difference", std::abs(gt - g), 2.0 * eps));
    out.push_back(check("premise_eps_hat_le_gamma_over_4", eps, g / 4.0));
    if (eps <= g / 4.0) {
        out.push_back(check("gamma_tilde_lower", g / 2.0, gt));
        out.push_back(check("sqrt_gamma_difference", std::abs(std::sqrt(g) - std::sqrt(gt)),
                            eps / (std::sqrt(2.0) * std::sqrt(g))));
        const Eigen::VectorXcd psi = v / v.norm();
        const Eigen::VectorXcd psit = vt / vt.norm();
        out.push_back(check("state_error_3eps_over_gamma", (psit - psi).norm(),
                            3.0 * eps / g));
    }
    return out;
}

PrepReport prepare_state(const PrepConfig &cfg) { return run_pipeline(cfg).report; }

PrepReport verify_error_bounds(const PrepConfig &cfg) {
    auto run = run_pipeline(cfg);
    PrepReport &r = run.report;
    r.bound_checks.push_back(check("hamiltonian_error", r.epsilon_hat, r.epsilon_h));
    r.bound_checks.push_back(
        check("final_vs_3eps_hat_over_gamma", r.distance, 3.0 * r.epsilon_hat / r.gamma));
    const auto checks = error_bound_checks(run.h_tilde, target_hamiltonian(cfg.oracle));
    r.bound_checks.insert(r.bound_checks.end(), checks.begin(), checks.end());
    return r;
}

PrepReport grover_case(int n, std::uint64_t x0, double delta, double epsilon) {
    PrepConfig cfg;
    cfg.oracle = AmplitudeOracle::indicator(n, 1, x0);
    cfg.delta = delta;
    cfg.epsilon = epsilon;
    return prepare_state(cfg);
}

SweepSpec parse_sweep_spec(std::istream &is) {
    using nlohmann::json;
    json j;
    try {
        is >> j;
    } catch (const json::exception &e) {
        throw DomainError(std::string("malformed sweep spec: ") + e.what());
    }
    SweepSpec spec;
    try {
        spec.seed = j.value("seed", std::uint64_t{1});
        for (const auto &g : j.value("runs", json::array())) {
            SweepGrid grid;
            grid.n = g.at("n").get<std::vector<int>>();
            if (g.contains("dist")) {
                grid.dist = g.at("dist").get<std::vector<std::string>>();
            }
            if (g.contains("epsilon")) {
                grid.epsilon = g.at("epsilon").get<std::vector<double>>();
            }
            if (g.contains("delta")) {
                grid.delta = g.at("delta").get<std::vector<double>>();
            }
            if (g.contains("m")) {
                grid.m = g.at("m").get<int>();
            }
            spec.runs.push_back(std::move(grid));
        }
    } catch (const json::exception &e) {
        throw DomainError(std::string("invalid sweep spec: ") + e.what());
    }
    return spec;
}

int sweep(const SweepSpec &spec, std::ostream &csv) {
    csv << kSweepHeader << '\n';
    std::uint64_t index = 0;
    int failures = 0;
    for (const auto &grid : spec.runs) {
        for (const int n : grid.n) {
            for (const auto &dist : grid.dist) {
                for (const double eps : grid.epsilon) {
                    for (const double delta : grid.delta) {
                        const std::uint64_t seed = spec.seed + index++;
                        std::ostringstream row;
                        try {
                            PrepConfig cfg;
                            cfg.oracle = AmplitudeOracle::from_spec(dist, n, 1, seed);
                            cfg.epsilon = eps;
                            cfg.delta = delta;
                            cfg.m = grid.m;
                            cfg.seed = seed;
                            const auto r = verify_error_bounds(cfg);
                            const auto *b = r.find("final_vs_3eps_hat_over_gamma");
                            row << n << ',' << r.m << ',' << format_double(r.gamma) << ','
                                << format_double(eps) << ',' << format_double(delta) << ','
                                << r.arcsin_degree << ',' << r.sign_degree << ','
                                << r.oracle_calls << ',' << format_double(r.fidelity) << ','
                                << format_double(r.success_probability) << ','
                                << format_double(b->lhs) << ',' << format_double(b->rhs)
                                << ',' << (r.all_pass() ? "true" : "false") << ",ok";
                        } catch (const std::exception &e) {
                            ++failures;
                            row.str("");
                            row << n << ",,," << format_double(eps) << ','
                                << format_double(delta) << ",,,,,,,,false,"
                                << csv_quote(std::string("error: ") + e.what());
                        }
                        csv << row.str() << '\n';
                    }
                }
            }
        }
    }
    return failures;
}

void write_report(std::ostream &os, const PrepReport &r) {
    const auto old = os.precision(10);
    os << "n: " << r.final_state.layout.total_qubits() << '\n'
       << "m: " << r.m << '\n'
       << "gamma: " << r.gamma << '\n'
       << "gamma_quantized: " << r.gamma_quantized << '\n'
       << "gamma_tilde: " << r.gamma_tilde << '\n'
       << "epsilon_h: " << r.epsilon_h << '\n'
       << "epsilon_hat: " << r.epsilon_hat << '\n'
       << "sigma_hat: " << r.sigma_hat << '\n'
       << "sigma: " << r.sigma << '\n'
       << "arcsin_degree: " << r.arcsin_degree << '\n'
       << "sign_degree: " << r.sign_degree << '\n'
       << "oracle_calls: " << r.oracle_calls << '\n'
       << "bit_oracle_calls: " << r.bit_oracle_calls << '\n'
       << "hadamard_layer_calls: " << r.s_calls << '\n'
       << "calls_per_sqrt_n: " << r.calls_per_sqrt_n << '\n'
       << "fidelity: " << r.fidelity << '\n'
       << "distance: " << r.distance << '\n'
       << "success_probability: " << r.success_probability << '\n'
       << "bound_checks:\n";
    for (const auto &c : r.bound_checks) {
        os << "  " << std::left << std::setw(34) << c.name << std::right
           << std::setw(18) << c.lhs << " <= " << std::setw(18) << c.rhs << "  "
           << (c.pass ? "PASS" : "FAIL") << '\n';
    }
    os.precision(old);
}

} // namespace qsprep
