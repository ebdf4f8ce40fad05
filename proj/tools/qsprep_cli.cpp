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
 * Command-line front end: phase finding, state preparation, error-bound
 * verification, the single-marked-item case, sweeps, and generators for
 * oracle and polynomial files.
 */
#include "qsprep/approximation.hpp"
#include "qsprep/pipeline.hpp"
#include "qsprep/qsp_phases.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace qsprep;

std::ifstream open_in(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open '" + path + "'");
    }
    return in;
}

/// Writes through `emit` to `path`, or to stdout when path is empty.
template <class F> void emit_to(const std::string &path, F &&emit) {
    if (path.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw DomainError("cannot write '" + path + "'");
    }
    emit(out);
}

struct PrepOptions {
    std::string oracle;
    double eps = 1e-2;
    double delta = 0.05;
    std::optional<double> total_failure;
    std::optional<int> m;
    double beta = 0.5;
    std::uint64_t seed = 20260101;
    std::string state_out;
};

void add_prep_options(CLI::App *cmd, PrepOptions &o, bool needs_oracle) {
    auto *oracle = cmd->add_option("--oracle", o.oracle, "amplitude table file (header 'n m')");
    if (needs_oracle) {
        oracle->required()->check(CLI::ExistingFile);
    }
    auto *eps = cmd->add_option("--eps", o.eps, "final state error")->capture_default_str();
    auto *delta =
        cmd->add_option("--delta", o.delta, "failure probability")->capture_default_str();
    cmd->add_option("--total-failure", o.total_failure,
                    "split p equally into eps = delta = p/2")
        ->excludes(eps)
        ->excludes(delta);
    cmd->add_option("--m", o.m, "oracle bits (default from eps and gamma)");
    cmd->add_option("--beta", o.beta, "Hamiltonian rescaling")->capture_default_str();
    cmd->add_option("--seed", o.seed, "seed for optimizer restarts")->capture_default_str();
    cmd->add_option("--state-out", o.state_out, "write the final state to this file");
}

PrepConfig make_config(const PrepOptions &o, AmplitudeOracle oracle) {
    PrepConfig cfg;
    cfg.oracle = std::move(oracle);
    cfg.epsilon = o.total_failure ? *o.total_failure / 2.0 : o.eps;
    cfg.delta = o.total_failure ? *o.total_failure / 2.0 : o.delta;
    cfg.m = o.m;
    cfg.beta = o.beta;
    cfg.seed = o.seed;
    return cfg;
}

int finish(const PrepReport &r, const std::string &state_out) {
    write_report(std::cout, r);
    if (!state_out.empty()) {
        emit_to(state_out, [&](std::ostream &os) { write_state(os, r.final_state.amplitudes); });
    }
    return r.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum state preparation from amplitude oracles"};
    app.require_subcommand(1);

    std::string poly_file;
    std::string phases_out;
    bool real_part = false;
    std::uint64_t phases_seed = 20260101;
    auto *phases = app.add_subcommand("phases", "compute QSP phases for a polynomial file");
    phases->add_option("poly-file", poly_file, "polynomial file")
        ->required()
        ->check(CLI::ExistingFile);
    phases->add_option("--out", phases_out, "write phases here instead of stdout");
    phases->add_flag("--real-part", real_part,
                     "treat the file as the real part and complete it");
    phases->add_option("--seed", phases_seed, "seed for optimizer restarts");

    PrepOptions prep_opts;
    auto *prepare = app.add_subcommand("prepare", "prepare the state of an amplitude table");
    add_prep_options(prepare, prep_opts, true);

    PrepOptions verify_opts;
    auto *verify = app.add_subcommand("verify-bounds",
                                      "prepare and check every error inequality");
    add_prep_options(verify, verify_opts, true);

    PrepOptions grover_opts;
    int grover_n = 2;
    std::uint64_t grover_x0 = 0;
    auto *grover = app.add_subcommand("grover", "prepare the single marked item |x0>");
    grover->add_option("--n", grover_n, "data qubits")->required();
    grover->add_option("--x0", grover_x0, "marked item")->required();
    add_prep_options(grover, grover_opts, false);

    std::string spec_file;
    std::string csv_file;
    auto *sweep_cmd = app.add_subcommand("sweep", "run a JSON grid of preparations to CSV");
    sweep_cmd->add_option("--spec", spec_file, "sweep spec (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", csv_file, "CSV output")->required();

    int oracle_n = 2;
    int oracle_m = 16;
    std::string dist = "uniform";
    std::uint64_t oracle_seed = 1;
    std::string oracle_out;
    auto *oracle_cmd = app.add_subcommand("oracle", "write an amplitude table file");
    oracle_cmd->add_option("--n", oracle_n, "data qubits")->required();
    oracle_cmd->add_option("--m", oracle_m, "oracle bits")->capture_default_str();
    oracle_cmd->add_option("--dist", dist,
                           "uniform, constant:g, indicator:x0, gaussian:mu,sigma or random")
        ->capture_default_str();
    oracle_cmd->add_option("--seed", oracle_seed, "seed for random tables");
    oracle_cmd->add_option("--out", oracle_out, "output file (default stdout)");

    std::string poly_kind;
    double poly_eps = 1e-3;
    double poly_delta = 0.1;
    double poly_threshold = 0.1;
    std::string poly_out;
    auto *poly_cmd = app.add_subcommand("poly", "write an approximation polynomial file");
    poly_cmd->add_option("kind", poly_kind, "arcsin or sign")
        ->required()
        ->check(CLI::IsMember({"arcsin", "sign"}));
    poly_cmd->add_option("--eps", poly_eps, "arcsin sup error")->capture_default_str();
    poly_cmd->add_option("--delta", poly_delta, "arcsin margin or sign error budget")
        ->capture_default_str();
    poly_cmd->add_option("--threshold", poly_threshold, "sign threshold Delta")
        ->capture_default_str();
    poly_cmd->add_option("--out", poly_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (phases->parsed()) {
            auto in = open_in(poly_file);
            const Polynomial p = read_polynomial(in);
            PhaseFindingOptions options;
            options.seed = phases_seed;
            const PhaseSequence phi =
                real_part ? find_phases_real(p, options) : find_phases(p, options);
            emit_to(phases_out, [&](std::ostream &os) { write_phases(os, phi); });
            if (!real_part) {
                const auto check = verify_phases(phi, p, 4 * (phi.degree() + 1));
                std::cerr << "degree " << phi.degree() << ", max reconstruction error "
                          << check.max_error << '\n';
                return check.pass ? 0 : 1;
            }
            return 0;
        }
        if (prepare->parsed() || verify->parsed()) {
            const PrepOptions &o = prepare->parsed() ? prep_opts : verify_opts;
            auto in = open_in(o.oracle);
            const PrepConfig cfg = make_config(o, read_oracle(in));
            const PrepReport r =
                prepare->parsed() ? prepare_state(cfg) : verify_error_bounds(cfg);
            return finish(r, o.state_out);
        }
        if (grover->parsed()) {
            const PrepConfig cfg =
                make_config(grover_opts, AmplitudeOracle::indicator(grover_n, 1, grover_x0));
            PrepReport r = prepare_state(cfg);
            return finish(r, grover_opts.state_out);
        }
        if (sweep_cmd->parsed()) {
            auto in = open_in(spec_file);
            const SweepSpec spec = parse_sweep_spec(in);
            int failures = 0;
            emit_to(csv_file, [&](std::ostream &os) { failures = sweep(spec, os); });
            std::cerr << failures << " run(s) failed\n";
            return failures == 0 ? 0 : 1;
        }
        if (oracle_cmd->parsed()) {
            const auto c = AmplitudeOracle::from_spec(dist, oracle_n, oracle_m, oracle_seed);
            emit_to(oracle_out, [&](std::ostream &os) { write_oracle(os, c); });
            return 0;
        }
        if (poly_cmd->parsed()) {
            const Approximation a = poly_kind == "arcsin"
                                        ? arcsin_taylor(poly_eps, poly_delta)
                                        : sign_approx(poly_threshold, poly_delta);
            emit_to(poly_out, [&](std::ostream &os) { write_polynomial(os, a.poly); });
            std::cerr << "degree " << a.poly.degree() << ", certified error "
                      << a.achieved_error << '\n';
            return 0;
        }
    } catch (const DegreeOverflow &e) {
        std::cerr << "error: " << e.what() << " (needed degree " << e.needed_degree()
                  << ")\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
