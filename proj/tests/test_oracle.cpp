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
#include "reference.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace qsprep;
using Catch::Approx;

namespace {

/// floor(c 2^m) with the top code reserved for c = 1, computed bit by bit.
std::uint64_t reference_code(double c, int m) {
    std::uint64_t code = 0;
    double rest = c;
    for (int k = 1; k <= m; ++k) {
        const double w = std::ldexp(1.0, -k);
        code <<= 1;
        if (rest >= w) {
            code |= 1;
            rest -= w;
        }
    }
    return c >= 1.0 ? (std::uint64_t{1} << m) - 1 : code;
}

} // namespace

TEST_CASE("fixed-point codes", "[oracle][fixed]") {
    CHECK(fixed_point_code(0.0, 4) == 0);
    CHECK(fixed_point_code(0.5, 2) == 2);
    CHECK(fixed_point_code(0.75, 3) == 6);
    CHECK(fixed_point_code(1.0, 3) == 7);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double c = u(rng);
        const int m = 1 + k % 30;
        CHECK(fixed_point_code(c, m) == reference_code(c, m));
    }
}

TEST_CASE("bit oracle permutation", "[oracle][bit]") {
    const auto zero = AmplitudeOracle::constant(2, 3, 0.0);
    const auto u0 = bit_oracle_unitary(zero);
    CHECK((u0.matrix() - Eigen::MatrixXcd::Identity(32, 32)).norm() == 0.0);

    const AmplitudeOracle half(1, 2, {0.5, 0.0});
    const auto u = bit_oracle_unitary(half);
    // |0>|00> -> |0>|10>, index 0 -> 2.
    CHECK(u.matrix()(2, 0) == cplx(1.0, 0.0));
    CHECK(u.matrix()(0, 0) == cplx(0.0, 0.0));

    const auto rnd = AmplitudeOracle::random(3, 4, 7);
    const Eigen::MatrixXcd b = bit_oracle_unitary(rnd).matrix();
    CHECK((b * b - Eigen::MatrixXcd::Identity(b.rows(), b.cols())).norm() == 0.0);
    for (std::uint64_t x = 0; x < 8; ++x) {
        for (std::uint64_t y = 0; y < 16; ++y) {
            const auto col = static_cast<Eigen::Index>((x << 4) | y);
            const auto row = static_cast<Eigen::Index>(
                (x << 4) | (y ^ reference_code(rnd.values()[x], 4)));
            CHECK(b(row, col) == cplx(1.0, 0.0));
        }
    }
}

TEST_CASE("compiled phase oracle", "[oracle][phase]") {
    const auto zero = AmplitudeOracle::constant(2, 3, 0.0);
    const auto p0 = phase_unitary(zero);
    CHECK((p0.data_action - Eigen::MatrixXcd::Identity(4, 4)).norm() <= 1e-15);

    const AmplitudeOracle three_eighths(1, 3, {0.0, 0.75});
    const auto p = phase_unitary(three_eighths);
    CHECK(std::abs(p.data_action(1, 1) - std::polar(1.0, 3.0 * ref::pi / 8.0)) <= 1e-15);
    CHECK(std::abs(p.data_action(0, 0) - 1.0) <= 1e-15);
    CHECK(std::polar(1.0, ref::pi / 4 + ref::pi / 8).real() ==
          Approx(std::cos(3.0 * ref::pi / 8.0)));

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const int n = 1 + static_cast<int>(seed % 3);
        const int m = 2 + static_cast<int>(seed % 5);
        const auto c = AmplitudeOracle::random(n, m, seed);
        const auto compiled = phase_unitary(c);
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(c.size(), c.size());
        for (std::size_t x = 0; x < c.size(); ++x) {
            const double cm = std::ldexp(double(reference_code(c.values()[x], m)), -m);
            expected(Eigen::Index(x), Eigen::Index(x)) = std::polar(1.0, ref::pi * cm / 2.0);
        }
        CHECK(op_dist(compiled.data_action, expected) <= 1e-12);
        CHECK(op_dist(compiled.data_action, phase_unitary_direct(c, false).matrix()) <= 1e-12);
        CHECK(compiled.ancilla_leakage <= 1e-12);
        // Every |x>|0^m>|1> column returns to the same ancilla state.
        const Eigen::Index shift = m + 1;
        for (std::size_t x = 0; x < c.size(); ++x) {
            const Eigen::Index col = (Eigen::Index(x) << shift) | 1;
            const Eigen::VectorXcd out = compiled.full.matrix().col(col);
            CHECK(std::abs(std::abs(out(col)) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("direct phase unitaries", "[oracle][phase]") {
    const auto one = AmplitudeOracle::uniform(2, 4);
    CHECK((phase_unitary_direct(one, true).matrix() - cplx(0, 1) * Eigen::MatrixXcd::Identity(4, 4))
              .norm() <= 1e-15);
    const auto zero = AmplitudeOracle::constant(2, 4, 0.0);
    CHECK((phase_unitary_direct(zero, true).matrix() - Eigen::MatrixXcd::Identity(4, 4)).norm() ==
          0.0);
    const auto c = AmplitudeOracle::random(2, 3, 9);
    const auto scaled = phase_unitary_direct(c, true, 0.5);
    for (std::size_t x = 0; x < 4; ++x) {
        CHECK(std::abs(scaled.matrix()(Eigen::Index(x), Eigen::Index(x)) -
                       std::polar(1.0, ref::pi * c.values()[x] / 4.0)) <= 1e-15);
    }
}

TEST_CASE("gamma and target state", "[oracle][target]") {
    CHECK(gamma(AmplitudeOracle::uniform(3, 4)) == 1.0);
    CHECK(gamma(AmplitudeOracle::indicator(2, 4, 1)) == 0.25);
    const auto r = AmplitudeOracle::random(4, 10, 3);
    CHECK(gamma(r) == Approx(ref::mean_square(r.values())).epsilon(1e-15));
    CHECK(gamma(r, false) == Approx(ref::mean_square(r.quantized())).epsilon(1e-15));

    const auto constant = target_state(AmplitudeOracle::constant(3, 4, 0.3));
    CHECK((constant.amplitudes - Eigen::VectorXcd::Constant(8, 1.0 / std::sqrt(8.0))).norm() <=
          1e-15);
    const auto marked = target_state(AmplitudeOracle::indicator(3, 4, 5));
    CHECK(std::abs(marked.amplitudes(5) - 1.0) <= 1e-15);
    CHECK(marked.amplitudes.norm() == Approx(1.0));

    const auto g = AmplitudeOracle::gaussian(4, 12, 8.0, 4.0);
    const auto t = target_state(g);
    Eigen::VectorXcd expected(16);
    for (int x = 0; x < 16; ++x) {
        expected(x) = std::exp(-(x - 8.0) * (x - 8.0) / 32.0);
    }
    expected /= expected.norm();
    CHECK((t.amplitudes - expected).norm() <= 1e-14);
    CHECK_THROWS_AS(target_state(AmplitudeOracle::constant(2, 4, 0.0)), DomainError);
}

TEST_CASE("relative phases", "[oracle][phase]") {
    std::mt19937_64 rng(32);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXcd v(8);
    for (int i = 0; i < 8; ++i) {
        v(i) = cplx(nd(rng), nd(rng));
    }
    v /= v.norm();
    const StateVector s(v, Layout::single("data", 3));
    const auto same = apply_relative_phase(s, AmplitudeOracle::constant(3, 6, 0.0));
    CHECK((same.amplitudes - v).norm() <= 1e-15);

    const int m = 12;
    const auto flipped = apply_relative_phase(s, AmplitudeOracle::uniform(3, m));
    // c = 1 maps to the top code 1 - 2^-m, a phase pi 2^-m short of -1.
    CHECK((flipped.amplitudes + v).norm() ==
          Approx(2.0 * std::sin(ref::pi * std::ldexp(1.0, -m - 1))).epsilon(1e-8));

    const auto r = AmplitudeOracle::random(3, 8, 4);
    const auto phased = apply_relative_phase(s, r);
    for (int x = 0; x < 8; ++x) {
        const double phi = std::ldexp(double(reference_code(r.values()[std::size_t(x)], 8)), -8);
        CHECK(std::abs(phased.amplitudes(x) - std::polar(1.0, ref::pi * phi) * v(x)) <= 1e-14);
    }
}

TEST_CASE("oracle validation and files", "[oracle][io]") {
    CHECK_THROWS_AS(AmplitudeOracle(2, 4, {0.1, 0.2, 0.3}), DomainError);
    CHECK_THROWS_AS(AmplitudeOracle(1, 4, {0.1, 1.2}), DomainError);
    CHECK_THROWS_AS(AmplitudeOracle(1, 0, {0.1, 0.2}), DomainError);
    CHECK_THROWS_AS(AmplitudeOracle::indicator(2, 4, 4), DomainError);
    CHECK_THROWS_AS(AmplitudeOracle::from_spec("poisson", 2, 4, 1), DomainError);
    CHECK(AmplitudeOracle::from_spec("indicator:3", 2, 4, 1).values() ==
          AmplitudeOracle::indicator(2, 4, 3).values());

    const auto c = AmplitudeOracle::random(3, 11, 5);
    std::stringstream ss;
    write_oracle(ss, c);
    const auto back = read_oracle(ss);
    CHECK(back.n() == 3);
    CHECK(back.m() == 11);
    CHECK(back.values() == c.values());
    CHECK(back.codes() == c.codes());
}
