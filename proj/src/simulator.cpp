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
#include "qsprep/simulator.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>

namespace qsprep {

namespace {

constexpr Eigen::Index kExactNormMaxDim = 512;

std::uint64_t bit_of(int qubit, int q) {
    return std::uint64_t{1} << static_cast<unsigned>(q - 1 - qubit);
}

/// Sub-index of `idx` restricted to `qubits` (first listed = most significant).
std::uint64_t sub_index(std::uint64_t idx, const std::vector<int> &qubits, int q) {
    std::uint64_t s = 0;
    for (const int qb : qubits) {
        s = (s << 1U) | ((idx & bit_of(qb, q)) != 0 ? 1U : 0U);
    }
    return s;
}

/// `idx` with the bits of `qubits` replaced by `sub`.
std::uint64_t with_sub_index(std::uint64_t idx, const std::vector<int> &qubits,
                             std::uint64_t sub, int q) {
    const std::size_t k = qubits.size();
    for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t m = bit_of(qubits[i], q);
        const bool on = ((sub >> (k - 1 - i)) & 1U) != 0;
        idx = on ? (idx | m) : (idx & ~m);
    }
    return idx;
}

void check_qubits(const std::vector<int> &qubits, int q, const char *what) {
    std::vector<bool> seen(static_cast<std::size_t>(std::max(q, 0)), false);
    for (const int qb : qubits) {
        if (qb < 0 || qb >= q) {
            throw DomainError(std::string(what) + " qubit " + std::to_string(qb) +
                              " outside a " + std::to_string(q) + "-qubit layout");
        }
        if (seen[static_cast<std::size_t>(qb)]) {
            throw DomainError(std::string(what) + " qubit " + std::to_string(qb) +
                              " listed twice");
        }
        seen[static_cast<std::size_t>(qb)] = true;
    }
}

void apply_matrix_gate(const MatrixGate &g, Eigen::Ref<Eigen::MatrixXcd> s, int q) {
    std::vector<int> all = g.controls;
    all.insert(all.end(), g.targets.begin(), g.targets.end());
    check_qubits(all, q, "gate");
    const std::size_t k = g.targets.size();
    const auto sub = Eigen::Index{1} << k;
    if (g.matrix.rows() != sub || g.matrix.cols() != sub) {
        throw DomainError("gate matrix does not match its target count");
    }
    std::uint64_t tmask = 0;
    for (const int t : g.targets) {
        tmask |= bit_of(t, q);
    }
    std::uint64_t cmask = 0;
    for (const int c : g.controls) {
        cmask |= bit_of(c, q);
    }
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(sub));
    Eigen::MatrixXcd block(sub, s.cols());
    const auto dim = static_cast<std::uint64_t>(s.rows());
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & tmask) != 0 || (base & cmask) != cmask) {
            continue;
        }
        for (Eigen::Index t = 0; t < sub; ++t) {
            const auto r = static_cast<Eigen::Index>(
                with_sub_index(base, g.targets, static_cast<std::uint64_t>(t), q));
            rows[static_cast<std::size_t>(t)] = r;
            block.row(t) = s.row(r);
        }
        block = g.matrix * block;
        for (Eigen::Index t = 0; t < sub; ++t) {
            s.row(rows[static_cast<std::size_t>(t)]) = block.row(t);
        }
    }
}

void apply_diagonal(const DiagonalGate &g, Eigen::Ref<Eigen::MatrixXcd> s, int q) {
    check_qubits(g.qubits, q, "diagonal gate");
    if (g.entries.size() != (Eigen::Index{1} << g.qubits.size())) {
        throw DomainError("diagonal gate size does not match its qubit count");
    }
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
        s.row(r) *= g.entries(static_cast<Eigen::Index>(
            sub_index(static_cast<std::uint64_t>(r), g.qubits, q)));
    }
}

void apply_permutation(const PermutationGate &g, Eigen::Ref<Eigen::MatrixXcd> s,
                       int q) {
    check_qubits(g.qubits, q, "permutation gate");
    const std::size_t sub = std::size_t{1} << g.qubits.size();
    if (g.perm.size() != sub) {
        throw DomainError("permutation size does not match its qubit count");
    }
    std::vector<bool> hit(sub, false);
    for (const auto p : g.perm) {
        if (p >= sub || hit[p]) {
            throw DomainError("permutation gate table is not a bijection");
        }
        hit[p] = true;
    }
    Eigen::MatrixXcd out(s.rows(), s.cols());
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
        const auto idx = static_cast<std::uint64_t>(r);
        const auto from = sub_index(idx, g.qubits, q);
        const auto to = with_sub_index(idx, g.qubits, g.perm[from], q);
        out.row(static_cast<Eigen::Index>(to)) = s.row(r);
    }
    s = out;
}

/// Square root of the largest eigenvalue of the positive semidefinite map
/// `normal` (A^dagger A), by power iteration; stops at the relative tolerance
/// `rel` or once the estimate falls below `floor`.
double power_norm(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd &)> &normal,
                  Eigen::Index dim, double rel = 1e-12, double floor = 0.0) {
    if (dim == 0) {
        return 0.0;
    }
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = {g(rng), g(rng)};
    }
    v.normalize();
    double est = 0.0;
    for (int it = 0; it < 2000; ++it) {
        Eigen::VectorXcd w = normal(v);
        const double n = w.norm();
        if (n == 0.0) {
            return 0.0;
        }
        const double next = std::sqrt(n);
        v = w / n;
        if (std::abs(next - est) <= rel * next || (it > 4 && next < floor)) {
            return next;
        }
        est = next;
    }
    return est;
}

} // namespace

Layout::Layout(std::vector<Register> registers) : registers_(std::move(registers)) {
    for (const auto &r : registers_) {
        if (r.qubits < 0) {
            throw DomainError("register '" + r.name + "' has negative size");
        }
        total_ += r.qubits;
    }
    if (total_ > 30) {
        throw DomainError("layout exceeds 30 qubits");
    }
}

Layout Layout::single(const std::string &name, int qubits) {
    return Layout({{name, qubits}});
}

int Layout::offset(const std::string &name) const {
    int off = 0;
    for (const auto &r : registers_) {
        if (r.name == name) {
            return off;
        }
        off += r.qubits;
    }
    throw DomainError("no register named '" + name + "'");
}

int Layout::size_of(const std::string &name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            return r.qubits;
        }
    }
    throw DomainError("no register named '" + name + "'");
}

std::vector<int> Layout::qubits_of(const std::string &name) const {
    std::vector<int> q(static_cast<std::size_t>(size_of(name)));
    std::iota(q.begin(), q.end(), offset(name));
    return q;
}

StateVector::StateVector(Eigen::VectorXcd amps, Layout lay)
    : amplitudes(std::move(amps)), layout(std::move(lay)) {
    if (amplitudes.size() != layout.dim()) {
        throw DomainError("state length " + std::to_string(amplitudes.size()) +
                          " does not match layout dimension " +
                          std::to_string(layout.dim()));
    }
    if (amplitudes.squaredNorm() > 1.0 + kNormTol) {
        throw DomainError("state has squared norm above 1");
    }
}

StateVector StateVector::basis(const Layout &layout, Eigen::Index index) {
    if (index < 0 || index >= layout.dim()) {
        throw DomainError("basis index out of range");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(layout.dim());
    v(index) = 1.0;
    return {std::move(v), layout};
}

double unitarity_error(const Eigen::MatrixXcd &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    // E = U^dagger U - 1 is Hermitian, so E^dagger E = E^2.
    auto defect = [&u](const Eigen::VectorXcd &v) {
        return Eigen::VectorXcd(u.adjoint() * (u * v) - v);
    };
    return power_norm([&](const Eigen::VectorXcd &v) { return defect(defect(v)); }, u.cols(),
                      1e-6, 1e-13);
}

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd entries, Layout layout, double tol)
    : entries_(std::move(entries)), layout_(std::move(layout)) {
    if (entries_.rows() != layout_.dim() || entries_.cols() != layout_.dim()) {
        throw DomainError("unitary dimension does not match its layout");
    }
    const double err = unitarity_error(entries_);
    if (err > tol) {
        throw DomainError("matrix is not unitary (|U^dag U - I| = " +
                          std::to_string(err) + ")");
    }
}

UnitaryMatrix UnitaryMatrix::identity(const Layout &layout) {
    return {Eigen::MatrixXcd::Identity(layout.dim(), layout.dim()), layout};
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return {entries_.adjoint(), layout_};
}

Projector Projector::diagonal(std::vector<bool> mask) {
    Projector p;
    p.mask_ = std::move(mask);
    return p;
}

Projector Projector::from_basis(Eigen::MatrixXcd basis) {
    const Eigen::MatrixXcd gram = basis.adjoint() * basis;
    if ((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm() >
        1e-10) {
        throw DomainError("projector basis is not orthonormal");
    }
    Projector p;
    p.basis_ = std::move(basis);
    return p;
}

Projector Projector::from_matrix(const Eigen::MatrixXcd &m) {
    if (m.rows() != m.cols()) {
        throw DomainError("projector must be square");
    }
    if ((m - m.adjoint()).norm() > 1e-12 * std::max<double>(1.0, m.rows()) ||
        (m * m - m).norm() > 1e-12 * std::max<double>(1.0, m.rows())) {
        throw DomainError("matrix is not an orthogonal projector");
    }
    const bool diag = (m - Eigen::MatrixXcd(m.diagonal().asDiagonal())).norm() <= 1e-14;
    if (diag) {
        std::vector<bool> mask(static_cast<std::size_t>(m.rows()));
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            mask[static_cast<std::size_t>(i)] = m(i, i).real() > 0.5;
        }
        return diagonal(std::move(mask));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (es.eigenvalues()(i) > 0.5) {
            cols.push_back(i);
        }
    }
    Eigen::MatrixXcd basis(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        basis.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(cols[j]);
    }
    Projector p;
    p.basis_ = std::move(basis);
    return p;
}

Projector Projector::zero_ancillas(int total_qubits, int ancillas) {
    if (ancillas < 0 || ancillas > total_qubits) {
        throw DomainError("ancilla count outside the layout");
    }
    const std::size_t dim = std::size_t{1} << total_qubits;
    const int shift = total_qubits - ancillas;
    std::vector<bool> mask(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        mask[i] = (i >> shift) == 0;
    }
    return diagonal(std::move(mask));
}

Projector Projector::identity(Eigen::Index dim) {
    return diagonal(std::vector<bool>(static_cast<std::size_t>(dim), true));
}

Projector Projector::zero(Eigen::Index dim) {
    return diagonal(std::vector<bool>(static_cast<std::size_t>(dim), false));
}

Eigen::Index Projector::dim() const {
    return is_diagonal() ? static_cast<Eigen::Index>(mask_.size()) : basis_.rows();
}

Eigen::Index Projector::rank() const {
    if (is_diagonal()) {
        return std::ranges::count(mask_, true);
    }
    return basis_.cols();
}

Eigen::MatrixXcd Projector::matrix() const {
    if (is_diagonal()) {
        Eigen::VectorXcd d(dim());
        for (Eigen::Index i = 0; i < dim(); ++i) {
            d(i) = mask_[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
        }
        return d.asDiagonal();
    }
    return basis_ * basis_.adjoint();
}

Eigen::VectorXcd Projector::apply(const Eigen::VectorXcd &v) const {
    return apply(Eigen::MatrixXcd(v)).col(0);
}

Eigen::MatrixXcd Projector::apply(const Eigen::MatrixXcd &m) const {
    if (m.rows() != dim()) {
        throw DomainError("projector dimension mismatch");
    }
    if (is_diagonal()) {
        Eigen::MatrixXcd out = m;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!mask_[static_cast<std::size_t>(i)]) {
                out.row(i).setZero();
            }
        }
        return out;
    }
    return basis_ * (basis_.adjoint() * m);
}

namespace gates {

Eigen::Matrix2cd H() {
    Eigen::Matrix2cd m;
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
}

Eigen::Matrix2cd X() {
    Eigen::Matrix2cd m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Eigen::Matrix2cd Y() {
    Eigen::Matrix2cd m;
    m << 0.0, -kI, kI, 0.0;
    return m;
}

Eigen::Matrix2cd Z() {
    Eigen::Matrix2cd m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Eigen::Matrix2cd phase(double theta) {
    Eigen::Matrix2cd m;
    m << 1.0, 0.0, 0.0, std::polar(1.0, theta);
    return m;
}

MatrixGate single(int target, const Eigen::Matrix2cd &m, std::string label) {
    return {{}, {target}, m, std::move(label)};
}

MatrixGate controlled(std::vector<int> controls, std::vector<int> targets,
                      Eigen::MatrixXcd m, std::string label) {
    return {std::move(controls), std::move(targets), std::move(m), std::move(label)};
}

} // namespace gates

Gate adjoint(const Gate &g) {
    return std::visit(
        [](const auto &x) -> Gate {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, MatrixGate>) {
                return MatrixGate{x.controls, x.targets, x.matrix.adjoint(),
                                  x.label + "^dag"};
            } else if constexpr (std::is_same_v<T, DiagonalGate>) {
                return DiagonalGate{x.qubits, x.entries.conjugate(),
                                    x.label + "^dag"};
            } else if constexpr (std::is_same_v<T, PermutationGate>) {
                std::vector<std::uint64_t> inv(x.perm.size());
                for (std::size_t i = 0; i < x.perm.size(); ++i) {
                    inv[x.perm[i]] = i;
                }
                return PermutationGate{x.qubits, std::move(inv), x.label + "^dag"};
            } else if constexpr (std::is_same_v<T, ProjectorPhaseGate>) {
                return ProjectorPhaseGate{x.projector, -x.phi, x.label + "^dag"};
            } else {
                return FullGate{x.matrix.adjoint(), x.label + "^dag"};
            }
        },
        g);
}

Circuit adjoint(const Circuit &c) {
    Circuit out;
    out.reserve(c.size());
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        out.push_back(adjoint(*it));
    }
    return out;
}

void apply_inplace(const Gate &g, Eigen::Ref<Eigen::MatrixXcd> states, int q) {
    if (states.rows() != (Eigen::Index{1} << q)) {
        throw DomainError("state dimension does not match the qubit count");
    }
    std::visit(
        [&](const auto &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, MatrixGate>) {
                apply_matrix_gate(x, states, q);
            } else if constexpr (std::is_same_v<T, DiagonalGate>) {
                apply_diagonal(x, states, q);
            } else if constexpr (std::is_same_v<T, PermutationGate>) {
                apply_permutation(x, states, q);
            } else if constexpr (std::is_same_v<T, ProjectorPhaseGate>) {
                const Eigen::MatrixXcd proj =
                    x.projector.apply(Eigen::MatrixXcd(states));
                const cplx ep = std::polar(1.0, x.phi);
                const cplx em = std::conj(ep);
                states = em * states + (ep - em) * proj;
            } else {
                if (x.matrix.rows() != states.rows() ||
                    x.matrix.cols() != states.rows()) {
                    throw DomainError("full gate dimension mismatch");
                }
                states = x.matrix * states;
            }
        },
        g);
}

void apply_inplace(const Circuit &c, Eigen::Ref<Eigen::MatrixXcd> states, int q) {
    for (const auto &g : c) {
        apply_inplace(g, states, q);
    }
}

StateVector apply(const Gate &g, const StateVector &s) {
    Eigen::MatrixXcd m = s.amplitudes;
    apply_inplace(g, m, s.layout.total_qubits());
    return {m.col(0), s.layout};
}

StateVector apply(const Circuit &c, const StateVector &s) {
    Eigen::MatrixXcd m = s.amplitudes;
    apply_inplace(c, m, s.layout.total_qubits());
    return {m.col(0), s.layout};
}

Eigen::VectorXcd projector_phase(const Projector &pi, double phi,
                                 const Eigen::VectorXcd &s) {
    const Eigen::VectorXcd p = pi.apply(s);
    const cplx ep = std::polar(1.0, phi);
    return ep * p + std::conj(ep) * (s - p);
}

StateVector projector_phase(const Projector &pi, double phi, const StateVector &s) {
    return {projector_phase(pi, phi, s.amplitudes), s.layout};
}

Measurement project_measure(const Projector &pi, const StateVector &s) {
    const Eigen::VectorXcd p = pi.apply(s.amplitudes);
    const double n = p.norm();
    Measurement out;
    if (n < 1e-14) {
        return out;
    }
    out.probability = n * n;
    out.state = StateVector(p / n, s.layout);
    return out;
}

SampledMeasurement sample_measure(const Projector &pi, const StateVector &s,
                                  std::mt19937_64 &rng) {
    const Eigen::VectorXcd p = pi.apply(s.amplitudes);
    const double total = s.amplitudes.squaredNorm();
    const double prob = total > 0.0 ? p.squaredNorm() / total : 0.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SampledMeasurement out;
    out.probability = prob;
    out.in_range = u(rng) < prob;
    const Eigen::VectorXcd post = out.in_range ? p : Eigen::VectorXcd(s.amplitudes - p);
    const double n = post.norm();
    out.state = StateVector(n > 0.0 ? Eigen::VectorXcd(post / n) : post, s.layout);
    return out;
}

UnitaryMatrix circuit_unitary(const Circuit &c, const Layout &layout,
                              int max_qubits) {
    if (layout.total_qubits() > max_qubits) {
        throw DomainError("circuit has " + std::to_string(layout.total_qubits()) +
                          " qubits, above the limit of " +
                          std::to_string(max_qubits));
    }
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(layout.dim(), layout.dim());
    apply_inplace(c, u, layout.total_qubits());
    return {std::move(u), layout};
}

double state_dist(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    if (a.size() != b.size()) {
        throw DomainError("state dimension mismatch");
    }
    return (a - b).norm();
}

double state_dist(const StateVector &a, const StateVector &b) {
    return state_dist(a.amplitudes, b.amplitudes);
}

double spectral_norm(const Eigen::MatrixXcd &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    if (std::max(a.rows(), a.cols()) <= kExactNormMaxDim) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
        return svd.singularValues()(0);
    }
    return power_norm(
        [&a](const Eigen::VectorXcd &v) { return Eigen::VectorXcd(a.adjoint() * (a * v)); },
        a.cols());
}

double op_dist(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DomainError("operator dimension mismatch");
    }
    return spectral_norm(a - b);
}

double fidelity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    if (a.size() != b.size()) {
        throw DomainError("state dimension mismatch");
    }
    return std::abs(a.dot(b));
}

double fidelity(const StateVector &a, const StateVector &b) {
    return fidelity(a.amplitudes, b.amplitudes);
}

double phase_aligned_dist(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    const cplx overlap = b.dot(a); // <b|a>
    const cplx rot = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : 1.0;
    return (a - rot * b).norm();
}

void write_state(std::ostream &os, const Eigen::VectorXcd &v) {
    const auto old = os.precision(17);
    os << v.size() << '\n';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        os << v(i).real() << ' ' << v(i).imag() << '\n';
    }
    os.precision(old);
}

void write_matrix(std::ostream &os, const Eigen::MatrixXcd &m) {
    const auto old = os.precision(17);
    os << m.rows() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            os << m(i, j).real() << ' ' << m(i, j).imag() << '\n';
        }
    }
    os.precision(old);
}

Eigen::VectorXcd read_state(std::istream &is) {
    Eigen::Index dim = 0;
    if (!(is >> dim) || dim <= 0) {
        throw DomainError("state dump must start with a positive dimension");
    }
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        double re = 0.0;
        double im = 0.0;
        if (!(is >> re >> im)) {
            throw DomainError("state dump truncated");
        }
        v(i) = {re, im};
    }
    return v;
}

Eigen::MatrixXcd read_matrix(std::istream &is) {
    Eigen::Index dim = 0;
    if (!(is >> dim) || dim <= 0) {
        throw DomainError("matrix dump must start with a positive dimension");
    }
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            double re = 0.0;
            double im = 0.0;
            if (!(is >> re >> im)) {
                throw DomainError("matrix dump truncated");
            }
            m(i, j) = {re, im};
        }
    }
    return m;
}

} // namespace qsprep
