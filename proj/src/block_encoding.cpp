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
#include "qsprep/block_encoding.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace qsprep {

namespace {

/// M e^{i phi (2 Pi - 1)}.
Eigen::MatrixXcd times_projector_phase(const Eigen::MatrixXcd &m,
                                       const Projector &pi, double phi) {
    const cplx ep = std::polar(1.0, phi);
    const cplx em = std::conj(ep);
    const Eigen::MatrixXcd mp = pi.apply(Eigen::MatrixXcd(m.adjoint())).adjoint();
    return em * m + (ep - em) * mp;
}

/// |0><0| (x) pi on one extra leading qubit.
Projector extend_with_zero_qubit(const Projector &pi) {
    if (pi.is_diagonal()) {
        std::vector<bool> mask = pi.mask();
        mask.resize(2 * mask.size(), false);
        return Projector::diagonal(std::move(mask));
    }
    const Eigen::MatrixXcd m = pi.matrix();
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(2 * m.rows(), 2 * m.cols());
    big.topLeftCorner(m.rows(), m.cols()) = m;
    return Projector::from_matrix(big);
}

bool is_hermitian(const Eigen::MatrixXcd &a) {
    return a.rows() == a.cols() &&
           (a - a.adjoint()).norm() <= 1e-10 * std::max(1.0, a.norm());
}

/// V diag(reconstruct(phi, lambda_i)) V^dagger for Hermitian a.
Eigen::MatrixXcd transform_hermitian(const Eigen::MatrixXcd &a,
                                     const PhaseSequence &phi) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    Eigen::VectorXcd d(a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        d(i) = reconstruct(phi, std::clamp(es.eigenvalues()(i), -1.0, 1.0));
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

void check_parity(const PhaseSequence &phi, Parity parity) {
    if (parity == Parity::none || parity_of_degree(phi.degree()) != parity) {
        throw DomainError("phase sequence of length " +
                          std::to_string(phi.degree()) + " does not have " +
                          to_string(parity) + " parity");
    }
}

} // namespace

Eigen::MatrixXcd extract_block(const BlockEncoding &be) {
    const Eigen::Index d = be.unitary.dim() >> be.ancillas;
    return be.unitary.matrix().topLeftCorner(d, d);
}

Eigen::MatrixXcd compressed(const BlockEncoding &be) {
    const Eigen::MatrixXcd u_pi =
        be.proj_right.apply(Eigen::MatrixXcd(be.unitary.matrix().adjoint())).adjoint();
    return be.proj_left.apply(u_pi);
}

Circuit sine_circuit(const Eigen::MatrixXcd &u, int data_qubits) {
    if (u.rows() != (Eigen::Index{1} << data_qubits) || u.cols() != u.rows()) {
        throw DomainError("controlled unitary does not match the data register");
    }
    std::vector<int> data(static_cast<std::size_t>(data_qubits));
    for (int i = 0; i < data_qubits; ++i) {
        data[static_cast<std::size_t>(i)] = i + 1;
    }
    Circuit c;
    c.emplace_back(gates::single(0, gates::H(), "H"));
    c.emplace_back(gates::controlled({0}, data, u, "cU"));
    c.emplace_back(gates::single(0, gates::Y(), "Y"));
    c.emplace_back(gates::controlled({0}, data, u.adjoint(), "cU^dag"));
    c.emplace_back(gates::single(0, gates::H(), "H"));
    return c;
}

BlockEncoding sine_block_encoding(const UnitaryMatrix &u) {
    const int n = u.layout().total_qubits();
    std::vector<Register> regs{{"anc", 1}};
    for (const auto &r : u.layout().registers()) {
        regs.push_back(r);
    }
    const Layout layout(std::move(regs));
    BlockEncoding be;
    be.unitary = circuit_unitary(sine_circuit(u.matrix(), n), layout);
    be.ancillas = 1;
    be.proj_left = Projector::zero_ancillas(n + 1, 1);
    be.proj_right = be.proj_left;
    be.intended = Eigen::MatrixXcd((u.matrix() - u.matrix().adjoint()) / (2.0 * kI));
    be.queries = 2;
    return be;
}

std::vector<QsvtOp> qsvt_sequence(const PhaseSequence &phi) {
    using K = QsvtOp::Kind;
    const auto &p = phi.phases;
    const std::size_t d = p.size();
    std::vector<QsvtOp> seq;
    seq.reserve(2 * d);
    if (d % 2 == 1) {
        seq.push_back({K::phase_left, p[0]});
        seq.push_back({K::apply_u, 0.0});
        for (std::size_t j = 1; j + 1 < d; j += 2) {
            seq.push_back({K::phase_right, p[j]});
            seq.push_back({K::apply_u_dagger, 0.0});
            seq.push_back({K::phase_left, p[j + 1]});
            seq.push_back({K::apply_u, 0.0});
        }
    } else {
        for (std::size_t j = 0; j + 1 < d; j += 2) {
            seq.push_back({K::phase_right, p[j]});
            seq.push_back({K::apply_u_dagger, 0.0});
            seq.push_back({K::phase_left, p[j + 1]});
            seq.push_back({K::apply_u, 0.0});
        }
    }
    return seq;
}

Eigen::VectorXcd apply_qsvt_sequence(
    const PhaseSequence &phi,
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd &)> &u,
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd &)> &u_dagger,
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd &, double)> &phase_left,
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd &, double)> &phase_right,
    Eigen::VectorXcd v) {
    const auto seq = qsvt_sequence(phi);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        switch (it->kind) {
        case QsvtOp::Kind::apply_u:
            v = u(v);
            break;
        case QsvtOp::Kind::apply_u_dagger:
            v = u_dagger(v);
            break;
        case QsvtOp::Kind::phase_left:
            v = phase_left(v, it->phi);
            break;
        case QsvtOp::Kind::phase_right:
            v = phase_right(v, it->phi);
            break;
        }
    }
    return v;
}

BlockEncoding qsvt_circuit(const BlockEncoding &be, const PhaseSequence &phi,
                           Parity parity) {
    check_parity(phi, parity);
    const Eigen::MatrixXcd &u = be.unitary.matrix();
    const Eigen::MatrixXcd ud = u.adjoint();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    for (const auto &op : qsvt_sequence(phi)) {
        switch (op.kind) {
        case QsvtOp::Kind::apply_u:
            m = m * u;
            break;
        case QsvtOp::Kind::apply_u_dagger:
            m = m * ud;
            break;
        case QsvtOp::Kind::phase_left:
            m = times_projector_phase(m, be.proj_left, op.phi);
            break;
        case QsvtOp::Kind::phase_right:
            m = times_projector_phase(m, be.proj_right, op.phi);
            break;
        }
    }
    BlockEncoding out;
    out.unitary = UnitaryMatrix(std::move(m), be.unitary.layout());
    out.ancillas = be.ancillas;
    out.proj_left = parity == Parity::odd ? be.proj_left : be.proj_right;
    out.proj_right = be.proj_right;
    const double d = phi.degree();
    out.certified_error = 4.0 * d * std::sqrt(be.certified_error);
    out.scale = be.scale;
    out.queries = static_cast<long>(phi.degree()) * be.queries;
    if (be.intended && is_hermitian(*be.intended)) {
        out.intended = transform_hermitian(*be.intended, phi);
    }
    return out;
}

BlockEncoding lcu_real_part(const BlockEncoding &be, const PhaseSequence &phi) {
    const Parity parity = parity_of_degree(phi.degree());
    const auto plus = qsvt_circuit(be, phi, parity);
    const auto minus = qsvt_circuit(be, conjugate_phases(phi), parity);
    const Eigen::MatrixXcd &a = plus.unitary.matrix();
    const Eigen::MatrixXcd &b = minus.unitary.matrix();
    const Eigen::Index n = a.rows();
    Eigen::MatrixXcd w(2 * n, 2 * n);
    w.topLeftCorner(n, n) = 0.5 * (a + b);
    w.topRightCorner(n, n) = 0.5 * (a - b);
    w.bottomLeftCorner(n, n) = 0.5 * (a - b);
    w.bottomRightCorner(n, n) = 0.5 * (a + b);

    std::vector<Register> regs{{"lcu", 1}};
    for (const auto &r : be.unitary.layout().registers()) {
        regs.push_back(r);
    }
    BlockEncoding out;
    out.unitary = UnitaryMatrix(std::move(w), Layout(std::move(regs)));
    out.ancillas = be.ancillas + 1;
    out.proj_left = extend_with_zero_qubit(plus.proj_left);
    out.proj_right = extend_with_zero_qubit(plus.proj_right);
    out.certified_error = plus.certified_error;
    out.scale = be.scale;
    // Both branches share the U layers; only the phases are selected.
    out.queries = plus.queries;
    if (plus.intended && minus.intended) {
        out.intended = Eigen::MatrixXcd(0.5 * (*plus.intended + *minus.intended));
    }
    return out;
}

Eigen::MatrixXcd unitary_generator(const Eigen::MatrixXcd &u) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
    const Eigen::MatrixXcd &q = schur.matrixU();
    const Eigen::MatrixXcd &t = schur.matrixT();
    Eigen::VectorXcd d(t.rows());
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
        d(i) = std::arg(t(i, i)) / kPi;
    }
    return q * d.asDiagonal() * q.adjoint();
}

HamiltonianEncoding hamiltonian_from_unitary(const UnitaryMatrix &u, double epsilon,
                                             double delta,
                                             const PhaseFindingOptions &options) {
    HamiltonianEncoding out;
    const auto sine = sine_block_encoding(u);
    out.sine_norm = spectral_norm(*sine.intended);
    if (out.sine_norm > 1.0 - delta + 1e-12) {
        throw DomainError("|sin(pi H)| = " + std::to_string(out.sine_norm) +
                          " exceeds 1 - delta = " + std::to_string(1.0 - delta) +
                          "; rescale H (smaller amplitudes) or reduce delta");
    }
    out.arcsin = arcsin_taylor(epsilon, delta);
    out.phases = find_phases(complete_with_complement(out.arcsin.poly), options);
    out.encoding = lcu_real_part(sine, out.phases);
    out.encoding.certified_error += out.arcsin.achieved_error;
    out.encoding.intended = unitary_generator(u.matrix());
    out.controlled_calls = out.encoding.queries;
    return out;
}

} // namespace qsprep
