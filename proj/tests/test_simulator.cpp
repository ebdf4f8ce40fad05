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
#include "reference.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace qsprep;
using Catch::Approx;

namespace {

Eigen::VectorXcd plus_state(int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    return Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
}

Eigen::VectorXcd random_state(Eigen::Index dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = cplx(g(rng), g(rng));
    }
    return v / v.norm();
}

} // namespace

TEST_CASE("single-qubit gates on basis states", "[simulator][gates]") {
    const Layout one = Layout::single("q", 1);
    const auto h0 = qsprep::apply(gates::single(0, gates::H()), StateVector::basis(one, 0));
    CHECK(std::abs(h0.amplitudes(0) - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(h0.amplitudes(1) - 1.0 / std::sqrt(2.0)) <= 1e-15);

    const auto y0 = qsprep::apply(gates::single(0, gates::Y()), StateVector::basis(one, 0));
    CHECK(std::abs(y0.amplitudes(0)) <= 1e-15);
    CHECK(std::abs(y0.amplitudes(1) - cplx(0.0, 1.0)) <= 1e-15);
}

TEST_CASE("gate application matches Kronecker products", "[simulator][gates]") {
    std::mt19937_64 rng(21);
    const int q = 4;
    const Layout lay = Layout::single("q", q);
    for (int target = 0; target < q; ++target) {
        const Eigen::Matrix2cd u = ref::random_unitary(2, rng);
        const Eigen::VectorXcd s = random_state(lay.dim(), rng);
        const auto got = qsprep::apply(gates::single(target, u), StateVector(s, lay));
        CHECK((got.amplitudes - ref::embed_single(u, target, q) * s).norm() <= 1e-13);
    }
    const Eigen::MatrixXcd u2 = ref::random_unitary(4, rng);
    const Eigen::VectorXcd s = random_state(lay.dim(), rng);
    const MatrixGate g = gates::controlled({0, 3}, {2, 1}, u2);
    const auto got = qsprep::apply(g, StateVector(s, lay));
    CHECK((got.amplitudes - ref::controlled({0, 3}, {2, 1}, u2, q) * s).norm() <= 1e-13);

    Eigen::VectorXcd d(4);
    d << 1.0, cplx(0, 1), -1.0, std::polar(1.0, 0.3);
    const DiagonalGate dg{{1, 3}, d, "D"};
    const auto gd = qsprep::apply(dg, StateVector(s, lay));
    CHECK((gd.amplitudes - ref::controlled({}, {1, 3}, d.asDiagonal(), q) * s).norm() <= 1e-13);

    const PermutationGate pg{{2, 0}, {1, 2, 3, 0}, "P"};
    Eigen::MatrixXcd pm = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        pm((i + 1) % 4, i) = 1.0;
    }
    const auto gp = qsprep::apply(pg, StateVector(s, lay));
    CHECK((gp.amplitudes - ref::controlled({}, {2, 0}, pm, q) * s).norm() <= 1e-13);
    const auto back = qsprep::apply(adjoint(Gate{pg}), gp);
    CHECK((back.amplitudes - s).norm() <= 1e-14);
}

TEST_CASE("circuit unitary composes gates in application order", "[simulator][circuit]") {
    const Layout one = Layout::single("q", 1);
    CHECK((circuit_unitary({}, one).matrix() - Eigen::MatrixXcd::Identity(2, 2)).norm() == 0.0);
    const Circuit hh{gates::single(0, gates::H()), gates::single(0, gates::H())};
    CHECK((circuit_unitary(hh, one).matrix() - Eigen::MatrixXcd::Identity(2, 2)).norm() <= 1e-15);

    std::mt19937_64 rng(22);
    const int q = 3;
    const Layout lay = Layout::single("q", q);
    Circuit c;
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(8, 8);
    for (int k = 0; k < 6; ++k) {
        const Eigen::Matrix2cd u = ref::random_unitary(2, rng);
        const int t = k % q;
        const int ctl = (k + 1) % q;
        c.emplace_back(gates::controlled({ctl}, {t}, u));
        expected = ref::controlled({ctl}, {t}, u, q) * expected;
    }
    const auto unitary = circuit_unitary(c, lay);
    CHECK(op_dist(unitary.matrix(), expected) <= 1e-13);
    const Eigen::VectorXcd s = random_state(8, rng);
    CHECK((qsprep::apply(c, StateVector(s, lay)).amplitudes - expected * s).norm() <= 1e-13);
    CHECK(op_dist(circuit_unitary(adjoint(c), lay).matrix(), expected.adjoint()) <= 1e-13);
    CHECK_THROWS_AS(circuit_unitary(c, lay, 2), DomainError);
}

TEST_CASE("projector phases", "[simulator][projector]") {
    const Layout one = Layout::single("q", 1);
    const StateVector plus(plus_state(1), one);
    const double phi = 0.37;
    const auto id = projector_phase(Projector::identity(2), phi, plus);
    CHECK((id.amplitudes - std::polar(1.0, phi) * plus.amplitudes).norm() <= 1e-15);
    const auto zero = projector_phase(Projector::zero(2), phi, plus);
    CHECK((zero.amplitudes - std::polar(1.0, -phi) * plus.amplitudes).norm() <= 1e-15);

    const auto p0 = Projector::diagonal({true, false});
    const auto out = projector_phase(p0, ref::pi / 2, plus);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.amplitudes(0) - cplx(0.0, r)) <= 1e-15);
    CHECK(std::abs(out.amplitudes(1) - cplx(0.0, -r)) <= 1e-15);

    // Dense projector against e^{i phi (2 Pi - 1)} from the matrix exponential.
    std::mt19937_64 rng(23);
    const Eigen::MatrixXcd basis = ref::random_unitary(8, rng).leftCols(3);
    const auto pi = Projector::from_basis(basis);
    CHECK(pi.rank() == 3);
    const Eigen::MatrixXcd refl = 2.0 * basis * basis.adjoint() - Eigen::MatrixXcd::Identity(8, 8);
    const Eigen::MatrixXcd gen = cplx(0.0, phi) * refl;
    const Eigen::MatrixXcd expected = gen.exp();
    const Eigen::VectorXcd s = random_state(8, rng);
    CHECK((projector_phase(pi, phi, s) - expected * s).norm() <= 1e-13);

    const auto from = Projector::from_matrix(basis * basis.adjoint());
    CHECK(from.rank() == 3);
    CHECK((from.matrix() - basis * basis.adjoint()).norm() <= 1e-12);
    CHECK_THROWS_AS(Projector::from_matrix(Eigen::MatrixXcd::Constant(2, 2, 0.7)), DomainError);
    const auto anc = Projector::zero_ancillas(3, 2);
    CHECK(anc.rank() == 2);
    CHECK(anc.mask() == std::vector<bool>{true, true, false, false, false, false, false, false});
}

TEST_CASE("deterministic and sampled measurement", "[simulator][measure]") {
    const Layout one = Layout::single("q", 1);
    const StateVector plus(plus_state(1), one);
    const auto m = project_measure(Projector::diagonal({true, false}), plus);
    REQUIRE(m.state);
    CHECK(m.probability == Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(m.state->amplitudes(0) - 1.0) <= 1e-15);
    const auto all = project_measure(Projector::identity(2), plus);
    CHECK(all.probability == Approx(1.0).epsilon(1e-15));
    CHECK((all.state->amplitudes - plus.amplitudes).norm() <= 1e-15);
    const auto none = project_measure(Projector::zero(2), plus);
    CHECK_FALSE(none.state);

    std::mt19937_64 rng(24);
    int hits = 0;
    const int shots = 20000;
    for (int k = 0; k < shots; ++k) {
        hits += sample_measure(Projector::diagonal({true, false}), plus, rng).in_range ? 1 : 0;
    }
    // Five standard deviations of a fair coin.
    CHECK(std::abs(hits - shots / 2) <= 5.0 * std::sqrt(shots * 0.25));
}

TEST_CASE("post-selecting a block encoding of diag(c/2) on |00>|+>", "[simulator][measure]") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 1; n <= 3; ++n) {
        const Eigen::Index dim = Eigen::Index{1} << n;
        std::vector<double> c(static_cast<std::size_t>(dim));
        std::vector<double> half(c.size());
        for (std::size_t x = 0; x < c.size(); ++x) {
            c[x] = u(rng);
            half[x] = c[x] / 2.0;
        }
        // [anc 2, data n] with the second ancilla carrying the dilation.
        const Eigen::MatrixXcd cmat =
            ref::kron(Eigen::MatrixXcd::Identity(2, 2), ref::reflection_dilation(half));
        const Layout lay({{"anc", 2}, {"data", n}});
        const UnitaryMatrix cu(cmat, lay);
        Eigen::VectorXcd in = Eigen::VectorXcd::Zero(lay.dim());
        in.head(dim) = plus_state(n);
        const Eigen::VectorXcd out = cu.matrix() * in;
        const auto meas = project_measure(Projector::zero_ancillas(n + 2, 2), StateVector(out, lay));
        REQUIRE(meas.state);
        const double g = ref::mean_square(c);
        CHECK(meas.probability == Approx(g / 4.0).epsilon(1e-13));
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(lay.dim());
        for (Eigen::Index x = 0; x < dim; ++x) {
            psi(x) = c[static_cast<std::size_t>(x)];
        }
        psi /= psi.norm();
        CHECK(state_dist(*meas.state, StateVector(psi, lay)) <= 1e-14);
    }
}

TEST_CASE("distances and fidelity", "[simulator][distance]") {
    const Layout one = Layout::single("q", 1);
    const auto zero = StateVector::basis(one, 0);
    CHECK(state_dist(zero, zero) == 0.0);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    CHECK(op_dist(id, -id) == Approx(2.0).epsilon(1e-15));
    CHECK(fidelity(zero, StateVector(plus_state(1), one)) == Approx(1.0 / std::sqrt(2.0)));

    std::mt19937_64 rng(26);
    for (int dim : {3, 17, 600}) {
        const Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(dim, dim);
        const Eigen::MatrixXcd b = Eigen::MatrixXcd::Random(dim, dim);
        CHECK(op_dist(a, b) == Approx(ref::spectral_norm(a - b)).epsilon(1e-8));
    }
    const Eigen::VectorXcd s = random_state(8, rng);
    const cplx rot = std::polar(1.0, 1.1);
    CHECK(phase_aligned_dist(s, rot * s) <= 1e-14);
    CHECK(fidelity(s, rot * s) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("unitarity and shape validation", "[simulator][errors]") {
    const Layout one = Layout::single("q", 1);
    CHECK_THROWS_AS(UnitaryMatrix(Eigen::MatrixXcd::Constant(2, 2, 1.0), one), DomainError);
    CHECK_THROWS_AS(UnitaryMatrix(Eigen::MatrixXcd::Identity(4, 4), one), DomainError);
    CHECK_THROWS_AS(StateVector(Eigen::VectorXcd::Constant(2, 1.0), one), DomainError);
    CHECK_THROWS_AS(StateVector(Eigen::VectorXcd::Zero(3), one), DomainError);
    CHECK_THROWS_AS(qsprep::apply(gates::single(1, gates::H()), StateVector::basis(one, 0)), DomainError);
    const PermutationGate not_bijective{{0}, {0, 0}, "bad"};
    CHECK_THROWS_AS(qsprep::apply(not_bijective, StateVector::basis(one, 0)), DomainError);

    const Layout lay({{"anc", 2}, {"data", 3}});
    CHECK(lay.total_qubits() == 5);
    CHECK(lay.offset("data") == 2);
    CHECK(lay.qubits_of("data") == std::vector<int>{2, 3, 4});
    CHECK_THROWS_AS(lay.offset("missing"), DomainError);
}

TEST_CASE("state and matrix dumps round-trip", "[simulator][io]") {
    std::mt19937_64 rng(27);
    const Eigen::VectorXcd s = random_state(8, rng);
    std::stringstream ss;
    write_state(ss, s);
    CHECK(read_state(ss) == s);
    const Eigen::MatrixXcd u = ref::random_unitary(4, rng);
    std::stringstream ms;
    write_matrix(ms, u);
    CHECK(read_matrix(ms) == u);
    std::stringstream truncated("4\n1 0\n");
    CHECK_THROWS_AS(read_state(truncated), DomainError);
}
