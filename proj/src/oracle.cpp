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
#include "qsprep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace qsprep {

std::uint64_t fixed_point_code(double c, int m) {
    const std::uint64_t top = (std::uint64_t{1} << m) - 1;
    const double scaled = std::floor(c * std::ldexp(1.0, m));
    if (scaled <= 0.0) {
        return 0;
    }
    return std::min(static_cast<std::uint64_t>(scaled), top);
}

AmplitudeOracle::AmplitudeOracle(int n, int m, std::vector<double> values)
    : n_(n), m_(m), values_(std::move(values)) {
    if (n < 1 || n > 24) {
        throw DomainError("oracle needs 1 <= n <= 24");
    }
    if (m < 1 || m > 52) {
        throw DomainError("oracle needs 1 <= m <= 52");
    }
    if (values_.size() != (std::size_t{1} << n)) {
        throw DomainError("oracle table has " + std::to_string(values_.size()) +
                          " entries, expected 2^" + std::to_string(n));
    }
    codes_.reserve(values_.size());
    quantized_.reserve(values_.size());
    for (const double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw DomainError("oracle values must lie in [0, 1]");
        }
        const auto code = fixed_point_code(v, m);
        codes_.push_back(code);
        quantized_.push_back(std::ldexp(static_cast<double>(code), -m));
    }
}

AmplitudeOracle AmplitudeOracle::constant(int n, int m, double value) {
    return {n, m, std::vector<double>(std::size_t{1} << n, value)};
}

AmplitudeOracle AmplitudeOracle::indicator(int n, int m, std::uint64_t x0) {
    if (n < 1 || x0 >= (std::uint64_t{1} << n)) {
        throw DomainError("marked item " + std::to_string(x0) +
                          " outside the " + std::to_string(n) + "-qubit domain");
    }
    std::vector<double> v(std::size_t{1} << n, 0.0);
    v[x0] = 1.0;
    return {n, m, std::move(v)};
}

AmplitudeOracle AmplitudeOracle::gaussian(int n, int m, double mu, double sigma) {
    if (!(sigma > 0.0)) {
        throw DomainError("gaussian width must be positive");
    }
    std::vector<double> v(std::size_t{1} << n);
    for (std::size_t x = 0; x < v.size(); ++x) {
        const double z = (static_cast<double>(x) - mu) / sigma;
        v[x] = std::exp(-0.5 * z * z);
    }
    return {n, m, std::move(v)};
}

AmplitudeOracle AmplitudeOracle::random(int n, int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(std::size_t{1} << n);
    for (auto &x : v) {
        x = u(rng);
    }
    return {n, m, std::move(v)};
}

AmplitudeOracle AmplitudeOracle::from_spec(const std::string &spec, int n, int m,
                                           std::uint64_t seed) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto numbers = [&args]() {
        std::vector<double> out;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) {
                throw DomainError("malformed number '" + item + "'");
            }
            out.push_back(v);
        }
        return out;
    };
    try {
        if (kind == "uniform" && args.empty()) {
            return uniform(n, m);
        }
        if (kind == "random" && args.empty()) {
            return random(n, m, seed);
        }
        const auto v = numbers();
        if (kind == "constant" && v.size() == 1) {
            return constant(n, m, v[0]);
        }
        if (kind == "indicator" && v.size() == 1 && v[0] >= 0.0 &&
            v[0] == std::floor(v[0])) {
            return indicator(n, m, static_cast<std::uint64_t>(v[0]));
        }
        if (kind == "gaussian" && v.size() == 2) {
            return gaussian(n, m, v[0], v[1]);
        }
    } catch (const std::invalid_argument &) {
    } catch (const std::out_of_range &) {
    }
    throw DomainError("unknown distribution '" + spec +
                      "' (expected uniform, constant:g, indicator:x0, "
                      "gaussian:mu,sigma or random)");
}

AmplitudeOracle AmplitudeOracle::with_bits(int m) const {
    return {n_, m, values_};
}

Layout bit_oracle_layout(const AmplitudeOracle &c) {
    return Layout({{"data", c.n()}, {"value", c.m()}});
}

PermutationGate bit_oracle_gate(const AmplitudeOracle &c,
                                const std::vector<int> &data,
                                const std::vector<int> &value) {
    if (static_cast<int>(data.size()) != c.n() ||
        static_cast<int>(value.size()) != c.m()) {
        throw DomainError("bit oracle register sizes do not match the table");
    }
    std::vector<int> qubits = data;
    qubits.insert(qubits.end(), value.begin(), value.end());
    const auto m = static_cast<unsigned>(c.m());
    std::vector<std::uint64_t> perm(std::size_t{1} << qubits.size());
    for (std::uint64_t i = 0; i < perm.size(); ++i) {
        const std::uint64_t x = i >> m;
        perm[i] = i ^ c.codes()[x];
    }
    return {std::move(qubits), std::move(perm), "O_c"};
}

UnitaryMatrix bit_oracle_unitary(const AmplitudeOracle &c, int max_qubits) {
    const Layout layout = bit_oracle_layout(c);
    return circuit_unitary(
        {bit_oracle_gate(c, layout.qubits_of("data"), layout.qubits_of("value"))},
        layout, max_qubits);
}

Circuit phase_oracle_circuit(const AmplitudeOracle &c, const Layout &layout,
                             double scale) {
    const auto data = layout.qubits_of("data");
    const auto value = layout.qubits_of("value");
    const int kick = layout.offset("kick");
    Circuit circuit;
    const auto oracle = bit_oracle_gate(c, data, value);
    circuit.emplace_back(oracle);
    for (int k = 1; k <= c.m(); ++k) {
        const double angle = scale * kPi / std::ldexp(1.0, k + 1);
        circuit.emplace_back(gates::controlled({value[static_cast<std::size_t>(k - 1)]},
                                               {kick}, gates::phase(angle),
                                               "cR" + std::to_string(k)));
    }
    circuit.push_back(adjoint(Gate{oracle}));
    return circuit;
}

CompiledPhaseOracle phase_unitary(const AmplitudeOracle &c, double scale,
                                  int max_qubits) {
    CompiledPhaseOracle out;
    out.layout = Layout({{"data", c.n()}, {"value", c.m()}, {"kick", 1}});
    out.circuit = phase_oracle_circuit(c, out.layout, scale);
    out.full = circuit_unitary(out.circuit, out.layout, max_qubits);

    // Inputs |x>|0^m>|1> sit at index (x << (m+1)) | 1.
    const auto shift = static_cast<unsigned>(c.m() + 1);
    const auto n = static_cast<Eigen::Index>(c.size());
    out.data_action.resize(n, n);
    const auto &u = out.full.matrix();
    for (Eigen::Index x = 0; x < n; ++x) {
        const Eigen::Index col = (x << shift) | 1;
        double outside = 0.0;
        for (Eigen::Index row = 0; row < u.rows(); ++row) {
            if ((row & ((Eigen::Index{1} << shift) - 1)) == 1) {
                out.data_action(row >> shift, x) = u(row, col);
            } else {
                outside += std::norm(u(row, col));
            }
        }
        out.ancilla_leakage = std::max(out.ancilla_leakage, std::sqrt(outside));
    }
    return out;
}

UnitaryMatrix phase_unitary_direct(const AmplitudeOracle &c, bool use_exact,
                                   double scale) {
    const auto &table = use_exact ? c.values() : c.quantized();
    Eigen::VectorXcd d(static_cast<Eigen::Index>(table.size()));
    for (std::size_t x = 0; x < table.size(); ++x) {
        d(static_cast<Eigen::Index>(x)) = std::polar(1.0, scale * kPi * table[x] / 2.0);
    }
    return {Eigen::MatrixXcd(d.asDiagonal()), Layout::single("data", c.n())};
}

double gamma(const AmplitudeOracle &c, bool use_exact) {
    const auto &table = use_exact ? c.values() : c.quantized();
    double sum = 0.0;
    for (const double v : table) {
        sum += v * v;
    }
    return sum / static_cast<double>(table.size());
}

StateVector target_state(const AmplitudeOracle &c, bool use_exact) {
    const auto &table = use_exact ? c.values() : c.quantized();
    const double g = gamma(c, use_exact);
    if (!(g > 0.0)) {
        throw DomainError("amplitude table is identically zero (gamma = 0)");
    }
    const double norm = std::sqrt(static_cast<double>(table.size()) * g);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(table.size()));
    for (std::size_t x = 0; x < table.size(); ++x) {
        v(static_cast<Eigen::Index>(x)) = table[x] / norm;
    }
    v.normalize();
    return {std::move(v), Layout::single("data", c.n())};
}

StateVector apply_relative_phase(const StateVector &s, const AmplitudeOracle &phi) {
    if (s.amplitudes.size() != static_cast<Eigen::Index>(phi.size())) {
        throw DomainError("phase table size does not match the state");
    }
    const Layout layout({{"data", phi.n()}, {"value", phi.m()}, {"kick", 1}});
    const auto shift = static_cast<unsigned>(phi.m() + 1);
    Eigen::MatrixXcd ext = Eigen::MatrixXcd::Zero(layout.dim(), 1);
    for (Eigen::Index x = 0; x < s.amplitudes.size(); ++x) {
        ext((x << shift) | 1, 0) = s.amplitudes(x);
    }
    apply_inplace(phase_oracle_circuit(phi, layout, 2.0), ext,
                  layout.total_qubits());
    Eigen::VectorXcd out(s.amplitudes.size());
    for (Eigen::Index x = 0; x < out.size(); ++x) {
        out(x) = ext((x << shift) | 1, 0);
    }
    return {std::move(out), s.layout};
}

void write_oracle(std::ostream &os, const AmplitudeOracle &c) {
    const auto old = os.precision(17);
    os << c.n() << ' ' << c.m() << '\n';
    for (const double v : c.values()) {
        os << v << '\n';
    }
    os.precision(old);
}

AmplitudeOracle read_oracle(std::istream &is) {
    int n = 0;
    int m = 0;
    if (!(is >> n >> m)) {
        throw DomainError("oracle header must be 'n m'");
    }
    if (n < 1 || n > 24) {
        throw DomainError("oracle needs 1 <= n <= 24");
    }
    std::vector<double> v(std::size_t{1} << n);
    for (auto &x : v) {
        if (!(is >> x)) {
            throw DomainError("oracle file truncated");
        }
    }
    return {n, m, std::move(v)};
}

} // namespace qsprep
