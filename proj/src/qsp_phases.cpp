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
#include "qsprep/qsp_phases.hpp"

#include <unsupported/Eigen/LevenbergMarquardt>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>

namespace qsprep {

namespace {

using lcplx = std::complex<long double>;

/// Symmetric Laurent coefficients (offset d) of f(cos t) for a Chebyshev
/// series f.
std::vector<lcplx> laurent_from_chebyshev(const std::vector<cplx> &c, int d) {
    std::vector<lcplx> out(static_cast<std::size_t>(2 * d + 1), 0.0L);
    const auto off = static_cast<std::size_t>(d);
    for (std::size_t k = 0; k < c.size() && k <= off; ++k) {
        const lcplx v{c[k].real(), c[k].imag()};
        if (k == 0) {
            out[off] += v;
        } else {
            out[off + k] += 0.5L * v;
            out[off - k] += 0.5L * v;
        }
    }
    return out;
}

/// Laurent coefficients of sin(t) f for f given as Laurent coefficients.
std::vector<lcplx> times_sine(const std::vector<lcplx> &f) {
    const lcplx two_i{0.0L, 2.0L};
    std::vector<lcplx> out(f.size(), 0.0L);
    for (std::size_t k = 0; k < f.size(); ++k) {
        const lcplx lo = k > 0 ? f[k - 1] : 0.0L;
        const lcplx hi = k + 1 < f.size() ? f[k + 1] : 0.0L;
        out[k] = (lo - hi) / two_i;
    }
    return out;
}

/// Peels e^{i phi Z} R layers off the first column (P, sin(t) Q).
PhaseSequence strip_layers(const Polynomial &p, const Polynomial &q, int d) {
    const auto pc = p.to_basis(Basis::chebyshev).coeffs();
    const auto qc = q.to_basis(Basis::chebyshev).coeffs();
    auto a = laurent_from_chebyshev(pc, d);
    auto b = times_sine(laurent_from_chebyshev(qc, d));
    const auto off = static_cast<std::size_t>(d);
    const lcplx two_i{0.0L, 2.0L};
    const lcplx minus_i{0.0L, -1.0L};

    PhaseSequence phi;
    phi.phases.reserve(off);
    for (int deg = d; deg >= 1; --deg) {
        const auto top = off + static_cast<std::size_t>(deg);
        const lcplx at = a[top];
        const lcplx bt = b[top];
        long double angle = 0.0L;
        if (std::abs(at) + std::abs(bt) > 1e-300L) {
            angle = 0.5L * std::arg(minus_i * at * std::conj(bt));
        }
        if (angle <= -0.5L * std::numbers::pi_v<long double> + 1e-15L) {
            angle += std::numbers::pi_v<long double>;
        }
        const lcplx em = std::polar(1.0L, -angle);
        const lcplx ep = std::polar(1.0L, angle);
        std::vector<lcplx> na(a.size(), 0.0L);
        std::vector<lcplx> nb(b.size(), 0.0L);
        for (int k = -(deg - 1); k <= deg - 1; ++k) {
            const auto i = static_cast<std::size_t>(static_cast<int>(off) + k);
            const lcplx xa = 0.5L * (a[i - 1] + a[i + 1]);
            const lcplx sa = (a[i - 1] - a[i + 1]) / two_i;
            const lcplx xb = 0.5L * (b[i - 1] + b[i + 1]);
            const lcplx sb = (b[i - 1] - b[i + 1]) / two_i;
            na[i] = em * xa + ep * sb;
            nb[i] = em * sa - ep * xb;
        }
        a = std::move(na);
        b = std::move(nb);
        phi.phases.push_back(static_cast<double>(angle));
    }
    const long double global = std::arg(a[off]);
    if (phi.phases.empty()) {
        return phi;
    }
    phi.phases.front() += static_cast<double>(global);
    for (auto &v : phi.phases) {
        v = normalize_angle(v);
    }
    return phi;
}

/// Residual Re/Im(reconstruct(phi, x_k) - P(x_k)) on fixed nodes, with the
/// exact Jacobian from prefix rows and suffix columns of the product.
struct PhaseFit : Eigen::DenseFunctor<double> {
    std::vector<double> nodes;
    std::vector<cplx> targets;

    PhaseFit(int d, std::vector<double> x, std::vector<cplx> t)
        : Eigen::DenseFunctor<double>(d, static_cast<int>(2 * x.size())),
          nodes(std::move(x)), targets(std::move(t)) {}

    static Eigen::Matrix2cd layer(double phi, double x) {
        const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
        const cplx e = std::polar(1.0, phi);
        Eigen::Matrix2cd m;
        m << e * x, e * s, std::conj(e) * s, -std::conj(e) * x;
        return m;
    }

    int operator()(const InputType &phi, ValueType &fvec) const {
        PhaseSequence seq{{phi.data(), phi.data() + phi.size()}};
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const cplx r = reconstruct(seq, nodes[k]) - targets[k];
            fvec(static_cast<Eigen::Index>(2 * k)) = r.real();
            fvec(static_cast<Eigen::Index>(2 * k + 1)) = r.imag();
        }
        return 0;
    }

    int df(const InputType &phi, JacobianType &jac) const {
        const auto d = static_cast<std::size_t>(phi.size());
        std::vector<Eigen::Matrix2cd> layers(d);
        std::vector<Eigen::RowVector2cd> rows(d);
        std::vector<Eigen::Vector2cd> cols(d + 1);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            for (std::size_t j = 0; j < d; ++j) {
                layers[j] = layer(phi(static_cast<Eigen::Index>(j)), nodes[k]);
            }
            cols[d] = Eigen::Vector2cd(1.0, 0.0);
            for (std::size_t j = d; j-- > 0;) {
                cols[j] = layers[j] * cols[j + 1];
            }
            Eigen::RowVector2cd row(1.0, 0.0);
            for (std::size_t j = 0; j < d; ++j) {
                rows[j] = row;
                row = row * layers[j];
            }
            for (std::size_t j = 0; j < d; ++j) {
                Eigen::Matrix2cd dl = layers[j];
                dl.row(0) *= kI;
                dl.row(1) *= -kI;
                const cplx g = (rows[j] * dl * cols[j + 1])(0, 0);
                jac(static_cast<Eigen::Index>(2 * k),
                    static_cast<Eigen::Index>(j)) = g.real();
                jac(static_cast<Eigen::Index>(2 * k + 1),
                    static_cast<Eigen::Index>(j)) = g.imag();
            }
        }
        return 0;
    }
};

/// Least-squares polish starting from a given sequence.
PhaseSequence optimize_phases(const Polynomial &p, PhaseSequence start) {
    const int d = start.degree();
    if (d == 0) {
        return start;
    }
    // Parity makes the nonnegative half of the grid sufficient.
    const auto all = chebyshev_nodes(std::max(4 * d, 16));
    std::vector<double> x;
    std::vector<cplx> t;
    for (const double v : all) {
        if (v >= 0.0) {
            x.push_back(v);
            t.push_back(p(v));
        }
    }
    PhaseFit fit(d, std::move(x), std::move(t));
    Eigen::LevenbergMarquardt<PhaseFit> lm(fit);
    lm.setMaxfev(200 * (d + 1));
    lm.setXtol(1e-15);
    lm.setFtol(1e-15);
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(start.phases.data(), d);
    lm.minimize(v);
    PhaseSequence out;
    out.phases.assign(v.data(), v.data() + v.size());
    for (auto &a : out.phases) {
        a = normalize_angle(a);
    }
    return out;
}

int verification_grid(int d) { return std::max(4 * d, 16); }

PhaseSequence polish_or_throw(const Polynomial &p, PhaseSequence phi,
                              const PhaseFindingOptions &options) {
    const int grid = verification_grid(phi.degree());
    auto report = verify_phases(phi, p, grid, options.tolerance);
    if (report.pass) {
        return phi;
    }
    if (!options.allow_optimization) {
        throw ConvergenceError("layer stripping lost accuracy", report.max_error);
    }
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    PhaseSequence best = phi;
    double best_error = report.max_error;
    for (int attempt = 0; attempt <= options.restarts; ++attempt) {
        PhaseSequence init = attempt == 0 ? phi : best;
        if (attempt > 0) {
            const double spread = attempt <= options.restarts / 2 ? 0.05 : 0.5;
            for (auto &a : init.phases) {
                a += spread * noise(rng);
            }
        }
        PhaseSequence candidate = optimize_phases(p, init);
        report = verify_phases(candidate, p, grid, options.tolerance);
        if (report.max_error < best_error) {
            best_error = report.max_error;
            best = candidate;
        }
        if (report.pass) {
            return candidate;
        }
    }
    throw ConvergenceError("phase finding did not reach the tolerance",
                           best_error);
}

/// Constant unimodular targets need two layers unless the constant is 1.
PhaseSequence constant_phases(cplx value) {
    if (std::abs(value - 1.0) <= 1e-12) {
        return {};
    }
    return {{normalize_angle(std::arg(value)), 0.0}};
}

bool same_coefficients(const Polynomial &a, const Polynomial &b, double tol) {
    const auto ca = a.to_basis(Basis::chebyshev).coeffs();
    const auto cb = b.to_basis(Basis::chebyshev).coeffs();
    const std::size_t n = std::max(ca.size(), cb.size());
    for (std::size_t k = 0; k < n; ++k) {
        const cplx x = k < ca.size() ? ca[k] : cplx{};
        const cplx y = k < cb.size() ? cb[k] : cplx{};
        if (std::abs(x - y) > tol) {
            return false;
        }
    }
    return true;
}

} // namespace

Eigen::Matrix2cd qsp_matrix(const PhaseSequence &phi, double x) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    for (const double a : phi.phases) {
        m = m * PhaseFit::layer(a, x);
    }
    return m;
}

cplx reconstruct(const PhaseSequence &phi, double x) {
    // Row-vector sweep: only the first row of the product is needed.
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    cplx r0 = 1.0;
    cplx r1 = 0.0;
    for (const double a : phi.phases) {
        const cplx e = std::polar(1.0, a);
        const cplx u0 = r0 * e;
        const cplx u1 = r1 * std::conj(e);
        r0 = u0 * x + u1 * s;
        r1 = u0 * s - u1 * x;
    }
    return r0;
}

PhaseSequence conjugate_phases(const PhaseSequence &phi) {
    PhaseSequence out;
    out.phases.reserve(phi.phases.size());
    for (const double a : phi.phases) {
        out.phases.push_back(normalize_angle(-a));
    }
    return out;
}

double normalize_angle(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    return r;
}

VerificationReport verify_phases(const PhaseSequence &phi, const Polynomial &p,
                                 int grid_size, double tolerance) {
    VerificationReport r;
    r.grid_size = grid_size;
    r.tolerance = tolerance;
    for (const double x : chebyshev_nodes(grid_size)) {
        r.max_error = std::max(r.max_error, std::abs(reconstruct(phi, x) - p(x)));
    }
    r.pass = r.max_error <= tolerance;
    return r;
}

PhaseSequence find_phases(const Completion &completion,
                          const PhaseFindingOptions &options) {
    const int d = completion.P.degree();
    if (d == 0) {
        return constant_phases(completion.P.coeff(0));
    }
    return polish_or_throw(completion.P, strip_layers(completion.P, completion.Q, d),
                           options);
}

PhaseSequence find_phases(const Polynomial &p,
                          const PhaseFindingOptions &options) {
    const auto check = check_qsp_conditions(p, options.condition_tol);
    if (!check.pass) {
        throw DomainError("polynomial is not realizable: " + check.reason);
    }
    const int d = p.degree();
    if (d == 0) {
        return constant_phases(p.coeff(0));
    }
    const Parity parity = parity_of_degree(d);
    const Polynomial real_part(p.real_part().coeffs(), p.basis(), parity);
    const Polynomial imag_part(p.imag_part().coeffs(), p.basis(), parity);
    try {
        const auto completion = complete_with_complement(real_part);
        const Polynomial a = completion.P.imag_part();
        if (completion.P.degree() == d && same_coefficients(a, imag_part, 1e-9)) {
            return polish_or_throw(p, strip_layers(completion.P, completion.Q, d),
                                   options);
        }
        if (completion.P.degree() == d &&
            same_coefficients(a.scaled(-1.0), imag_part, 1e-9)) {
            const auto phi = strip_layers(completion.P, completion.Q, d);
            return polish_or_throw(p, conjugate_phases(phi), options);
        }
    } catch (const FactorizationError &) {
        if (!options.allow_optimization) {
            throw;
        }
    }
    if (!options.allow_optimization) {
        throw ConvergenceError(
            "imaginary part does not match the derived completion", 1.0);
    }
    // Generic complex target: least squares from a small random start.
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    PhaseSequence start;
    for (int j = 0; j < d; ++j) {
        start.phases.push_back(uni(rng));
    }
    return polish_or_throw(p, start, options);
}

PhaseSequence find_phases_real(const Polynomial &p_real,
                               const PhaseFindingOptions &options) {
    return find_phases(complete_with_complement(p_real), options);
}

void write_phases(std::ostream &os, const PhaseSequence &phi) {
    const auto old = os.precision(17);
    for (const double a : phi.phases) {
        os << a << '\n';
    }
    os.precision(old);
}

PhaseSequence read_phases(std::istream &is) {
    PhaseSequence phi;
    double a = 0.0;
    while (is >> a) {
        phi.phases.push_back(a);
    }
    if (!is.eof()) {
        throw DomainError("phase file contains a non-numeric entry");
    }
    return phi;
}

} // namespace qsprep
