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
#include "qsprep/approximation.hpp"
#include "qsprep/polynomial.hpp"
#include "reference.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace qsprep;
using Catch::Approx;

TEST_CASE("eval uses Horner and Clenshaw", "[polyapprox][eval]") {
    const std::vector<double> sq{0.0, 0.0, 1.0};
    CHECK(eval(Polynomial::monomial(sq), 3.0) == cplx(9.0, 0.0));

    const std::vector<double> t2{0.0, 0.0, 1.0};
    CHECK(Polynomial::chebyshev(t2).real_at(0.5) == Approx(-0.5).margin(1e-15));

    for (int k = 0; k <= 12; ++k) {
        std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
        e.back() = 1.0;
        const auto tk = Polynomial::chebyshev(e);
        for (double x : {-0.93, -0.4, 0.0, 0.31, 0.77, 1.0}) {
            CHECK(tk.real_at(x) == Approx(ref::chebyshev_t(k, x)).margin(1e-13));
        }
    }
}

TEST_CASE("basis conversion agrees with direct evaluation", "[polyapprox][basis]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<cplx> c(51);
        for (auto &v : c) {
            v = cplx(u(rng), u(rng));
        }
        const Polynomial mono(c, Basis::monomial);
        const Polynomial cheb = mono.to_basis(Basis::chebyshev);
        for (int i = 0; i <= 200; ++i) {
            const double x = -1.0 + i / 100.0;
            cplx direct = 0.0;
            for (std::size_t k = c.size(); k-- > 0;) {
                direct = direct * x + c[k];
            }
            CHECK(std::abs(cheb(x) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
        }
        const Polynomial cheb_in(c, Basis::chebyshev);
        for (double x : {-1.0, -0.5, 0.2, 0.9}) {
            cplx direct = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k) {
                direct += c[k] * ref::chebyshev_t(static_cast<int>(k), x);
            }
            CHECK(std::abs(cheb_in(x) - direct) <= 1e-12);
        }
    }
}

TEST_CASE("basis conversion round-trips coefficients", "[polyapprox][basis]") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto round_trip = [&](int degree) {
        std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
        for (auto &v : c) {
            v = cplx(u(rng), u(rng));
        }
        const Polynomial mono(c, Basis::monomial);
        const Polynomial back = mono.to_basis(Basis::chebyshev).to_basis(Basis::monomial);
        double worst = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            worst = std::max(worst, std::abs(back.coeff(k) - c[k]));
        }
        return worst;
    };
    for (int degree : {5, 10, 20, 30}) {
        for (int trial = 0; trial < 10; ++trial) {
            CHECK(round_trip(degree) <= 1e-12);
        }
    }
    // Rounding the intermediate Chebyshev coefficients to double costs
    // ulp(1) times the largest monomial coefficient of T_50, about 2^49.
    const double conditioned = std::ldexp(std::numeric_limits<double>::epsilon(), 49);
    for (int trial = 0; trial < 10; ++trial) {
        CHECK(round_trip(50) <= conditioned);
    }
}

TEST_CASE("declared parity rejects cross-parity mass", "[polyapprox][parity]") {
    const std::vector<double> mixed{0.0, 1.0, 0.5};
    CHECK_THROWS_AS(Polynomial::monomial(mixed, Parity::odd), DomainError);
    CHECK(detect_parity(Polynomial::monomial(mixed).coeffs()) == Parity::none);
    const std::vector<double> odd{0.0, 1.0, 0.0, -2.0};
    CHECK(Polynomial::monomial(odd).degree() == 3);
    CHECK(detect_parity(Polynomial::monomial(odd).coeffs()) == Parity::odd);
}

TEST_CASE("arcsin Taylor truncation meets its error target", "[polyapprox][arcsin]") {
    const auto a = arcsin_taylor(1e-4, 0.1);
    CHECK(a.poly.parity() == Parity::odd);
    CHECK(std::abs(a.poly(0.0)) == 0.0);
    CHECK(std::asin(0.5) / kPi == Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(std::abs(a.poly.real_at(0.5) - 1.0 / 6.0) <= 1e-4);

    const auto mono = a.poly.to_basis(Basis::monomial);
    CHECK(mono.coeff(1).real() == Approx(ref::arcsin_coefficient(0)).epsilon(1e-14));
    CHECK(mono.coeff(3).real() == Approx(1.0 / (6.0 * kPi)).epsilon(1e-14));
    CHECK(mono.coeff(3).real() == Approx(ref::arcsin_coefficient(1)).epsilon(1e-14));
    for (int k = 0; 2 * k + 1 <= mono.degree(); ++k) {
        CHECK(mono.coeff(static_cast<std::size_t>(2 * k + 1)).real() ==
              Approx(ref::arcsin_coefficient(k)).epsilon(1e-12));
    }

    for (double delta : {0.1, 0.29}) {
        for (double eps : {1e-2, 1e-4, 1e-6}) {
            const auto p = arcsin_taylor(eps, delta);
            double worst = 0.0;
            for (int i = 0; i <= 10000; ++i) {
                const double x = -1.0 + delta + (2.0 - 2.0 * delta) * i / 10000.0;
                worst = std::max(worst, std::abs(p.poly.real_at(x) - std::asin(x) / kPi));
            }
            CHECK(worst <= eps);
            CHECK(sup_norm(p.poly, -1.0, 1.0, 4001) <= 1.0);
        }
    }
}

TEST_CASE("arcsin degree is monotone in delta and linear in log(1/eps)",
          "[polyapprox][arcsin]") {
    int previous = 1 << 30;
    for (double delta : {0.05, 0.1, 0.2, 0.3, 0.5}) {
        const int d = arcsin_taylor(1e-6, delta).poly.degree();
        CHECK(d <= previous);
        previous = d;
    }
    for (double delta : {0.1, 0.2, 0.29}) {
        const double x = 1.0 - delta;
        // Each further decade of eps costs at most ln(10) / -ln(x) in degree,
        // plus one odd step of rounding.
        const double per_decade = std::log(10.0) / -std::log(x) + 2.0;
        int last = 0;
        for (int e = 1; e <= 12; ++e) {
            const double eps = std::pow(10.0, -e);
            const int d = arcsin_taylor(eps, delta).poly.degree();
            // Every Taylor coefficient is at most 1/pi, so the tail after
            // degree d is at most x^(d+2) / (pi (1 - x^2)).
            int bound = 1;
            while (std::pow(x, bound + 2) / (kPi * (1.0 - x * x)) > eps) {
                bound += 2;
            }
            CHECK(d <= bound);
            CHECK(d >= last);
            if (e > 1) {
                CHECK(d - last <= per_decade);
            }
            last = d;
        }
    }
}

TEST_CASE("arcsin degree overflow carries the needed degree", "[polyapprox][arcsin]") {
    try {
        (void)arcsin_taylor(1e-12, 1e-3, 200);
        FAIL("expected DegreeOverflow");
    } catch (const DegreeOverflow &e) {
        CHECK(e.needed_degree() > 200);
    }
}

TEST_CASE("sign approximant bounds", "[polyapprox][sign]") {
    const auto s = sign_approx(0.3, 0.2);
    CHECK(s.poly.parity() == Parity::odd);
    CHECK(std::abs(s.poly(0.0)) == 0.0);
    CHECK(s.poly.real_at(0.5) >= 0.9);
    double inside = 0.0;
    double above = 1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double x = -1.0 + 2.0 * i / 1000.0;
        const double v = s.poly.real_at(x);
        inside = std::max(inside, std::abs(v));
        CHECK(s.poly.real_at(-x) == Approx(-v).margin(1e-15));
        if (x >= 0.3) {
            above = std::min(above, v);
        }
    }
    CHECK(inside <= 1.0 + 1e-9);
    CHECK(above >= 1.0 - 0.2 / 2.0);

    std::vector<double> inv;
    std::vector<double> degrees;
    for (double d : {0.05, 0.1, 0.15, 0.2, 0.3}) {
        inv.push_back(1.0 / d);
        degrees.push_back(sign_approx(d, 0.01).poly.degree());
    }
    CHECK(ref::linear_fit_max_relative_residual(inv, degrees) < 0.2);
}

TEST_CASE("sign approximant rejects infeasible thresholds", "[polyapprox][sign]") {
    CHECK_THROWS_AS(sign_approx(1e-5, 0.01, 500), DegreeOverflow);
    CHECK_THROWS_AS(sign_approx(0.0, 0.01), DomainError);
}

TEST_CASE("completion to a complex polynomial", "[polyapprox][completion]") {
    SECTION("x is already admissible") {
        const std::vector<double> x{0.0, 1.0};
        const auto c = complete_with_complement(Polynomial::monomial(x, Parity::odd));
        for (double t : {-1.0, -0.3, 0.4, 1.0}) {
            CHECK(std::abs(c.P(t) - cplx(t, 0.0)) <= 1e-12);
        }
    }
    SECTION("zero gets a unit-modulus completion") {
        const std::vector<double> zero{0.0};
        const auto p = complete_to_complex(Polynomial::monomial(zero, Parity::even));
        for (int i = 0; i <= 50; ++i) {
            const double t = -1.0 + i / 25.0;
            CHECK(std::abs(p(t)) == Approx(1.0).margin(1e-12));
            CHECK(std::abs(p.real_at(t)) <= 1e-12);
        }
        CHECK(check_qsp_conditions(p).pass);
    }
    SECTION("sign approximant round-trips its real part") {
        const auto s = sign_approx(0.3, 0.2);
        const auto c = complete_with_complement(s.poly);
        const auto report = check_qsp_conditions(c.P);
        CHECK(report.pass);
        double worst = 0.0;
        double identity = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double t = -1.0 + 2.0 * i / 1000.0;
            worst = std::max(worst, std::abs(c.P(t).real() - s.poly.real_at(t)));
            identity = std::max(identity, std::abs(std::norm(c.P(t)) +
                                                   (1 - t * t) * std::norm(c.Q(t)) - 1.0));
        }
        CHECK(worst <= 1e-8);
        CHECK(identity <= 1e-9);
    }
    SECTION("both factorization routes agree on the identity") {
        const auto a = arcsin_taylor(1e-6, 0.29);
        for (auto method : {CompletionMethod::cepstral, CompletionMethod::automatic}) {
            const auto c = complete_with_complement(a.poly, method);
            CHECK(c.residual <= 1e-9);
            CHECK(check_qsp_conditions(c.P).pass);
        }
    }
    SECTION("high degree uses the cepstral route") {
        const auto s = sign_approx(0.05, 0.01);
        REQUIRE(s.poly.degree() > kRootFactorizationMaxDegree);
        const auto c = complete_with_complement(s.poly);
        CHECK(c.method == CompletionMethod::cepstral);
        CHECK(c.residual <= 1e-9);
    }
    SECTION("inputs outside the unit band are rejected") {
        const std::vector<double> two_x{0.0, 2.0};
        CHECK_THROWS_AS(complete_with_complement(Polynomial::monomial(two_x)), DomainError);
        const std::vector<double> mixed{0.5, 0.5};
        CHECK_THROWS_AS(complete_with_complement(Polynomial::monomial(mixed)), DomainError);
    }
}

TEST_CASE("admissibility check flags each violated condition", "[polyapprox][conditions]") {
    const std::vector<double> big{0.0, 1.5};
    CHECK_FALSE(check_qsp_conditions(Polynomial::monomial(big)).pass);
    const std::vector<double> half{0.0, 0.5};
    CHECK_FALSE(check_qsp_conditions(Polynomial::monomial(half)).pass);
    const std::vector<double> mixed{0.3, 0.5};
    CHECK_FALSE(check_qsp_conditions(Polynomial::monomial(mixed)).parity_ok);
    const std::vector<double> t2{-1.0, 0.0, 2.0};
    CHECK(check_qsp_conditions(Polynomial::monomial(t2)).pass);
}

TEST_CASE("polynomial text format round-trips", "[polyapprox][io]") {
    const auto a = arcsin_taylor(1e-3, 0.2);
    std::stringstream ss;
    write_polynomial(ss, a.poly);
    const auto back = read_polynomial(ss);
    CHECK(back.degree() == a.poly.degree());
    CHECK(back.parity() == a.poly.parity());
    CHECK(back.basis() == a.poly.basis());
    for (double x : {-0.7, 0.1, 0.6}) {
        CHECK(std::abs(back(x) - a.poly(x)) <= 1e-15);
    }
    std::stringstream bad("chebyshev odd 1\n1 0\n");
    CHECK_THROWS(read_polynomial(bad));
}
