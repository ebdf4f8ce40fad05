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

#include <Eigen/Dense>
#include <boost/math/special_functions/erf.hpp>
#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qsprep {

namespace {

void require_open_unit(double v, const char *name) {
    if (!(v > 0.0 && v < 1.0)) {
        throw DomainError(std::string(name) + " must lie in (0, 1)");
    }
}

/// e^{-t} I_j(t) for j = 0..jmax by Miller's backward recurrence, normalized
/// with I_0 + 2 sum_{j>=1} I_j = e^t.
std::vector<double> scaled_bessel_i(double t, int jmax) {
    const int start =
        jmax + 40 + static_cast<int>(std::ceil(12.0 * std::sqrt(t)));
    std::vector<double> v(static_cast<std::size_t>(start) + 2, 0.0);
    v[static_cast<std::size_t>(start)] = 1e-300;
    for (int j = start; j >= 1; --j) {
        const auto uj = static_cast<std::size_t>(j);
        v[uj - 1] = (2.0 * j / t) * v[uj] + v[uj + 1];
        if (v[uj - 1] > 1e250) {
            for (std::size_t i = uj - 1; i < v.size(); ++i) {
                v[i] *= 1e-250;
            }
        }
    }
    double norm = v[0];
    for (std::size_t j = 1; j < v.size(); ++j) {
        norm += 2.0 * v[j];
    }
    v.resize(static_cast<std::size_t>(jmax) + 1);
    for (auto &x : v) {
        x /= norm;
    }
    return v;
}

/// Laurent coefficients f_0..f_d (f_{-j} = f_j) of 1 - P_R(cos(w/2))^2 in
/// the variable w = e^{i omega}.
std::vector<double> complement_laurent(std::span<const cplx> cheb, int d) {
    auto sq = chebyshev_multiply(cheb, cheb);
    sq.resize(static_cast<std::size_t>(2 * d) + 1, 0.0);
    std::vector<double> f(static_cast<std::size_t>(d) + 1, 0.0);
    f[0] = 1.0 - sq[0].real();
    for (int j = 1; j <= d; ++j) {
        f[static_cast<std::size_t>(j)] =
            -0.5 * sq[static_cast<std::size_t>(2 * j)].real();
    }
    return f;
}

/// Minimum-phase factor g_0..g_d with |g(e^{i omega})|^2 = F via roots of
/// w^d F(w).
std::vector<double> factor_by_roots(const std::vector<double> &f, int d) {
    if (d == 0) {
        if (f[0] < 0.0) {
            throw FactorizationError("1 - P_R^2 is negative");
        }
        return {std::sqrt(f[0])};
    }
    const double fmax = std::ranges::max(
        f, [](double a, double b) { return std::abs(a) < std::abs(b); });
    // Vanishing outer coefficients correspond to roots at 0 (and infinity).
    int strip = 0;
    while (strip < d &&
           std::abs(f[static_cast<std::size_t>(d - strip)]) <=
               1e-15 * std::abs(fmax)) {
        ++strip;
    }
    const int core = d - strip;
    std::vector<cplx> inside(static_cast<std::size_t>(strip), 0.0);

    if (core > 0) {
        // Coefficients of w^core F restricted to the core, increasing order.
        Eigen::VectorXd poly(2 * core + 1);
        for (int m = 0; m <= 2 * core; ++m) {
            poly(m) = f[static_cast<std::size_t>(std::abs(m - core))];
        }
        Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
        solver.compute(poly);
        const auto &roots = solver.roots();

        using lcplx = std::complex<long double>;
        auto polish = [&](cplx r) {
            lcplx z{r.real(), r.imag()};
            for (int it = 0; it < 8; ++it) {
                lcplx p = 0.0L;
                lcplx dp = 0.0L;
                for (int m = 2 * core; m >= 0; --m) {
                    dp = dp * z + p;
                    p = p * z + static_cast<long double>(poly(m));
                }
                if (std::abs(dp) < 1e-12L * (1.0L + std::abs(p))) {
                    break;
                }
                const lcplx step = p / dp;
                z -= step;
                if (std::abs(step) < 1e-18L * (1.0L + std::abs(z))) {
                    break;
                }
            }
            return cplx{static_cast<double>(z.real()),
                        static_cast<double>(z.imag())};
        };

        std::vector<cplx> circle;
        for (Eigen::Index i = 0; i < roots.size(); ++i) {
            const cplx r = roots(i);
            const double mag = std::abs(r);
            if (mag < 1.0 - 1e-6) {
                inside.push_back(polish(r));
            } else if (mag > 1.0 + 1e-6) {
                continue;
            } else {
                circle.push_back(r);
            }
        }
        // Roots on the unit circle have even multiplicity; keep one of each
        // nearest-neighbour pair, projected onto the circle.
        if (circle.size() % 2 != 0) {
            throw FactorizationError(
                "odd number of unit-circle roots; increase working precision "
                "or reduce the degree");
        }
        while (!circle.empty()) {
            const cplx a = circle.back();
            circle.pop_back();
            auto nearest = std::ranges::min_element(
                circle, {}, [a](cplx b) { return std::abs(a - b); });
            const cplx mid = 0.5 * (a + *nearest);
            circle.erase(nearest);
            inside.push_back(std::abs(mid) > 0.0 ? mid / std::abs(mid)
                                                 : cplx{1.0, 0.0});
        }
    }
    if (static_cast<int>(inside.size()) != d) {
        throw FactorizationError(
            "root split of 1 - P_R^2 is unbalanced (" +
            std::to_string(inside.size()) + " of " + std::to_string(d) +
            "); reduce the degree or raise working precision");
    }

    std::vector<cplx> g{1.0};
    for (const cplx r : inside) {
        std::vector<cplx> next(g.size() + 1, 0.0);
        for (std::size_t k = 0; k < g.size(); ++k) {
            next[k + 1] += g[k];
            next[k] -= r * g[k];
        }
        g = std::move(next);
    }
    // Fix the overall scale by matching |g|^2 to F on the circle.
    const int samples = 2 * d + 8;
    double ratio = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double omega = 2.0 * kPi * (s + 0.5) / samples;
        double fval = f[0];
        for (int j = 1; j <= d; ++j) {
            fval += 2.0 * f[static_cast<std::size_t>(j)] * std::cos(j * omega);
        }
        cplx gval = 0.0;
        const cplx w = std::polar(1.0, omega);
        for (std::size_t k = g.size(); k-- > 0;) {
            gval = gval * w + g[k];
        }
        ratio += fval / std::norm(gval);
    }
    const double c = std::sqrt(ratio / samples);
    std::vector<double> out(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        out[k] = c * g[k].real();
    }
    return out;
}

/// Minimum-phase factor through the real cepstrum of F on an FFT grid.
std::vector<double> factor_by_cepstrum(const std::vector<double> &f, int d) {
    Eigen::FFT<double> fft;
    std::size_t grid = 1024;
    while (grid < 32 * static_cast<std::size_t>(d + 1)) {
        grid *= 2;
    }
    for (; grid <= (std::size_t{1} << 22); grid *= 2) {
        std::vector<cplx> coeffs(grid, 0.0);
        coeffs[0] = f[0];
        for (int j = 1; j <= d; ++j) {
            coeffs[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(j)];
            coeffs[grid - static_cast<std::size_t>(j)] =
                f[static_cast<std::size_t>(j)];
        }
        std::vector<cplx> values;
        fft.inv(values, coeffs);
        const auto scale = static_cast<double>(grid);
        std::vector<cplx> logs(grid);
        for (std::size_t k = 0; k < grid; ++k) {
            const double v = values[k].real() * scale;
            if (!(v > 1e-300)) {
                throw FactorizationError(
                    "1 - P_R^2 vanishes on the unit circle; the cepstral "
                    "factorization needs |P_R| < 1 (use the root method or "
                    "rescale)");
            }
            logs[k] = std::log(v);
        }
        std::vector<cplx> cep;
        fft.fwd(cep, logs);
        std::vector<cplx> causal(grid, 0.0);
        causal[0] = 0.5 * cep[0] / scale;
        for (std::size_t n = 1; n < grid / 2; ++n) {
            causal[n] = cep[n] / scale;
        }
        causal[grid / 2] = 0.5 * cep[grid / 2] / scale;
        std::vector<cplx> log_g;
        fft.inv(log_g, causal);
        std::vector<cplx> g_vals(grid);
        for (std::size_t k = 0; k < grid; ++k) {
            g_vals[k] = std::exp(log_g[k] * scale);
        }
        std::vector<cplx> g;
        fft.fwd(g, g_vals);
        double tail = 0.0;
        for (std::size_t n = static_cast<std::size_t>(d) + 1; n < grid; ++n) {
            tail = std::max(tail, std::abs(g[n]) / scale);
        }
        if (tail <= 1e-13) {
            std::vector<double> out(static_cast<std::size_t>(d) + 1);
            for (std::size_t n = 0; n < out.size(); ++n) {
                out[n] = g[n].real() / scale;
            }
            return out;
        }
    }
    throw FactorizationError(
        "cepstral factorization did not converge; 1 - P_R^2 is too close to "
        "zero for this degree");
}

double completion_residual(const Polynomial &p, const Polynomial &q, int d) {
    const int points = 4 * d + 64;
    double worst = 0.0;
    for (int k = 0; k < points; ++k) {
        const double x = std::cos(kPi * (k + 0.5) / points);
        const double val =
            std::norm(p(x)) + (1.0 - x * x) * std::norm(q(x)) - 1.0;
        worst = std::max(worst, std::abs(val));
    }
    for (const double x : {-1.0, 1.0}) {
        worst = std::max(worst, std::abs(std::norm(p(x)) - 1.0));
    }
    return worst;
}

} // namespace

Approximation arcsin_taylor(double epsilon, double delta, int max_degree) {
    require_open_unit(epsilon, "epsilon");
    require_open_unit(delta, "delta");
    const long double y = 1.0L - static_cast<long double>(delta);
    const long double target = std::asin(y) / std::numbers::pi_v<long double>;

    // a_k = binom(2k, k) 4^-k / (2k + 1) / pi; the series has positive terms,
    // so the sup error on [-1+delta, 1-delta] is attained at the endpoint.
    std::vector<double> coeffs;
    long double central = 1.0L; // binom(2k, k) 4^-k
    long double power = y;      // y^(2k+1)
    long double partial = 0.0L;
    long double tail = target;
    long k = 0;
    const long hard_cap = 50'000'000;
    for (;; ++k) {
        if (k > 0) {
            central *= (2.0L * k - 1.0L) / (2.0L * k);
            power *= y * y;
        }
        const long double a =
            central / (2.0L * k + 1.0L) / std::numbers::pi_v<long double>;
        partial += a * power;
        tail = target - partial;
        if (2 * k + 1 <= max_degree) {
            coeffs.resize(static_cast<std::size_t>(2 * k + 2), 0.0);
            coeffs[static_cast<std::size_t>(2 * k + 1)] = static_cast<double>(a);
        }
        if (tail <= static_cast<long double>(epsilon) || k >= hard_cap) {
            break;
        }
    }
    const long degree = 2 * k + 1;
    if (degree > max_degree) {
        throw DegreeOverflow("arcsin approximation exceeds the maximum degree",
                             degree);
    }
    Approximation out;
    out.spec = {Target::arcsin_over_pi, epsilon, delta, static_cast<int>(degree)};
    out.achieved_error = static_cast<double>(std::max(tail, 0.0L));
    Polynomial p = Polynomial::monomial(coeffs, Parity::odd);
    // The truncation is bounded by arcsin(1)/pi = 1/2 on [-1, 1], so the
    // rescale branch is kept only for the general contract.
    const double sup = std::abs(p(1.0));
    if (sup > 1.0) {
        out.scale = 1.0 / (1.0 + epsilon);
        out.rescaled = true;
        p = p.scaled(out.scale);
    }
    out.poly = Polynomial(p.coeffs(), Basis::monomial, Parity::odd,
                          {-1.0 + delta, 1.0 - delta});
    return out;
}

Approximation sign_approx(double Delta, double delta, int max_degree) {
    require_open_unit(Delta, "Delta");
    require_open_unit(delta, "delta");
    // erf(k Delta) >= 1 - delta/8 and a Chebyshev tail <= delta/16 leave
    // P(x) >= 1 - delta/2 on [Delta, 1] after dividing by 1 + delta/4.
    const double k = boost::math::erfc_inv(delta / 8.0) / Delta;
    const double t = 0.5 * k * k;
    const double tail_budget = delta / 16.0;

    const double estimate =
        2.0 * k * std::sqrt(2.0 * std::log(16.0 / delta) + 8.0) + 1.0;
    if (estimate > 4.0 * max_degree) {
        throw DegreeOverflow("sign approximation infeasible for this Delta",
                             static_cast<long>(estimate));
    }
    const int jmax = static_cast<int>(std::ceil(
                         std::sqrt(2.0 * t * std::log(1e18)) + 8.0 * std::sqrt(t))) +
                     16;
    const auto bessel = scaled_bessel_i(t, jmax);

    // erf(kx) = 2k/sqrt(pi) * [g_0 T_1 + sum_j g_j (T_{2j+1}/(2j+1)
    //                                             - T_{2j-1}/(2j-1)) / 2]
    // with e^{-k^2 x^2} = sum_j g_j T_{2j}(x).
    const double pref = 2.0 * k / std::sqrt(kPi);
    std::vector<double> cheb(static_cast<std::size_t>(2 * jmax + 2), 0.0);
    cheb[1] += pref * bessel[0];
    for (int j = 1; j <= jmax; ++j) {
        const double g =
            2.0 * (j % 2 == 0 ? 1.0 : -1.0) * bessel[static_cast<std::size_t>(j)];
        cheb[static_cast<std::size_t>(2 * j + 1)] += pref * g / (2.0 * (2 * j + 1));
        cheb[static_cast<std::size_t>(2 * j - 1)] -= pref * g / (2.0 * (2 * j - 1));
    }
    // Smallest odd degree whose dropped coefficients sum to <= tail_budget.
    std::size_t keep = cheb.size();
    double tail = 0.0;
    while (keep > 2) {
        const double next = tail + std::abs(cheb[keep - 1]);
        if (next > tail_budget) {
            break;
        }
        tail = next;
        --keep;
    }
    if (keep % 2 == 1) {
        --keep; // index keep-1 must be odd
        tail += std::abs(cheb[keep]);
    }
    cheb.resize(keep);
    const int degree = static_cast<int>(keep) - 1;
    if (degree > max_degree) {
        throw DegreeOverflow("sign approximation exceeds the maximum degree",
                             degree);
    }
    Approximation out;
    out.spec = {Target::sign, delta, Delta, degree};
    out.achieved_error = tail;
    out.scale = 1.0 / (1.0 + delta / 4.0);
    out.rescaled = true;
    for (auto &c : cheb) {
        c *= out.scale;
    }
    for (std::size_t i = 0; i < cheb.size(); i += 2) {
        cheb[i] = 0.0;
    }
    out.poly = Polynomial::chebyshev(cheb, Parity::odd);
    return out;
}

Completion complete_with_complement(const Polynomial &p_real,
                                    CompletionMethod method) {
    if (!p_real.is_real()) {
        throw DomainError("completion needs a polynomial with real coefficients");
    }
    const Polynomial cheb = p_real.to_basis(Basis::chebyshev);
    Parity parity = p_real.parity();
    if (parity == Parity::none) {
        parity = detect_parity(cheb.coeffs());
        if (parity == Parity::none) {
            throw DomainError("completion needs a polynomial of definite parity");
        }
    }
    int d = cheb.degree();
    if (parity_of_degree(d) != parity) {
        ++d; // only possible for the zero polynomial declared odd
    }
    if (sup_norm(cheb, -1.0, 1.0, 4 * d + 257) > 1.0 + 1e-12) {
        throw DomainError("completion needs |P_R| <= 1 on [-1, 1]");
    }

    auto c = cheb.coeffs();
    c.resize(static_cast<std::size_t>(d) + 1, 0.0);
    const auto f = complement_laurent(c, d);

    auto assemble = [&](CompletionMethod used) {
        const auto g = used == CompletionMethod::roots ? factor_by_roots(f, d)
                                                       : factor_by_cepstrum(f, d);

        // L(z) = z^-d g(z^2) = A(cos t) + i sin t B(cos t).
        std::vector<cplx> a(static_cast<std::size_t>(d) + 1, 0.0);
        std::vector<cplx> b_u(static_cast<std::size_t>(std::max(d, 1)), 0.0);
        for (int j = 0; j <= d; ++j) {
            const int m = 2 * j - d;
            const double gj = g[static_cast<std::size_t>(j)];
            a[static_cast<std::size_t>(std::abs(m))] += gj;
            if (m != 0) {
                b_u[static_cast<std::size_t>(std::abs(m) - 1)] += (m > 0 ? gj : -gj);
            }
        }
        std::vector<cplx> pc(static_cast<std::size_t>(d) + 1, 0.0);
        for (std::size_t k = 0; k < pc.size(); ++k) {
            pc[k] = c[k] + kI * a[k];
        }
        Completion out;
        out.P = Polynomial(std::move(pc), Basis::chebyshev, parity_of_degree(d));
        out.Q = d == 0 ? Polynomial({0.0}, Basis::chebyshev, Parity::odd)
                       : Polynomial(chebyshev_u_to_t(b_u), Basis::chebyshev,
                                    parity_of_degree(d - 1));
        out.method = used;
        out.residual = completion_residual(out.P, out.Q, d);
        if (out.residual > 1e-9) {
            throw FactorizationError(
                "spectral factorization residual " + std::to_string(out.residual) +
                " too large; reduce the degree or raise working precision");
        }
        return out;
    };

    if (method != CompletionMethod::automatic) {
        return assemble(method);
    }
    if (d <= kRootFactorizationMaxDegree) {
        try {
            return assemble(CompletionMethod::roots);
        } catch (const FactorizationError &) {
            // Falls through to the cepstral route.
        }
    }
    return assemble(CompletionMethod::cepstral);
}

Polynomial complete_to_complex(const Polynomial &p_real) {
    return complete_with_complement(p_real).P;
}

QspConditionReport check_qsp_conditions(const Polynomial &p, double tol) {
    QspConditionReport r;
    const int d = p.degree();
    const Parity actual = detect_parity(p.coeffs());
    r.parity_ok = p.is_zero() || actual == parity_of_degree(d);
    if (!r.parity_ok) {
        r.reason = "parity does not match degree";
        return r;
    }
    const int points = std::max(2001, 8 * d + 1);
    r.max_inside = sup_norm(p, -1.0, 1.0, points);
    r.min_outside = std::numeric_limits<double>::infinity();
    std::vector<double> outside{1.0, 1.0 + 1e-3, 1.01, 1.1, 1.5};
    if (d <= 50) {
        outside.insert(outside.end(), {2.0, 5.0});
    }
    for (const double x : outside) {
        r.min_outside = std::min({r.min_outside, std::abs(p(x)), std::abs(p(-x))});
    }
    r.min_imag_axis = std::numeric_limits<double>::infinity();
    if (d % 2 == 0) {
        const Polynomial pc = p.conj();
        for (const double x : {0.0, 0.05, 0.2, 0.5, 1.0, 2.0, 4.0}) {
            const cplx v = p(cplx{0.0, x}) * pc(cplx{0.0, x});
            r.min_imag_axis = std::min(r.min_imag_axis, v.real());
        }
    }
    if (r.max_inside > 1.0 + tol) {
        r.reason = "|P| exceeds 1 on [-1, 1]";
    } else if (r.min_outside < 1.0 - tol) {
        r.reason = "|P| drops below 1 outside [-1, 1]";
    } else if (r.min_imag_axis < 1.0 - tol) {
        r.reason = "P(ix)P*(ix) < 1 on the imaginary axis";
    } else {
        r.pass = true;
    }
    return r;
}

} // namespace qsprep
