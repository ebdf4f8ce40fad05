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
#include "qsprep/polynomial.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace qsprep {

namespace {

void trim(std::vector<cplx> &c) {
    while (c.size() > 1 && c.back() == cplx{}) {
        c.pop_back();
    }
    if (c.empty()) {
        c.push_back(0.0);
    }
}

} // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs, Basis basis, Parity parity,
                       Interval domain)
    : coeffs_(std::move(coeffs)), basis_(basis), parity_(parity),
      domain_(domain) {
    if (parity_ != Parity::none) {
        const std::size_t wrong = parity_ == Parity::even ? 1 : 0;
        for (std::size_t k = wrong; k < coeffs_.size(); k += 2) {
            if (std::abs(coeffs_[k]) > kCoeffTol) {
                throw DomainError("coefficient " + std::to_string(k) +
                                  " violates declared " + to_string(parity_) +
                                  " parity");
            }
            coeffs_[k] = 0.0;
        }
    }
    trim(coeffs_);
}

Polynomial Polynomial::monomial(std::span<const double> coeffs, Parity parity) {
    return {std::vector<cplx>(coeffs.begin(), coeffs.end()), Basis::monomial,
            parity};
}

Polynomial Polynomial::chebyshev(std::span<const double> coeffs,
                                 Parity parity) {
    return {std::vector<cplx>(coeffs.begin(), coeffs.end()), Basis::chebyshev,
            parity};
}

int Polynomial::degree() const {
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (std::abs(coeffs_[k]) > kCoeffTol) {
            return static_cast<int>(k);
        }
    }
    return 0;
}

bool Polynomial::is_real(double tol) const {
    return std::ranges::all_of(
        coeffs_, [tol](cplx c) { return std::abs(c.imag()) <= tol; });
}

bool Polynomial::is_zero(double tol) const {
    return std::ranges::all_of(coeffs_,
                               [tol](cplx c) { return std::abs(c) <= tol; });
}

Polynomial Polynomial::to_basis(Basis target) const {
    if (target == basis_) {
        return *this;
    }
    auto c = target == Basis::chebyshev ? monomial_to_chebyshev(coeffs_)
                                        : chebyshev_to_monomial(coeffs_);
    if (parity_ != Parity::none) {
        const std::size_t wrong = parity_ == Parity::even ? 1 : 0;
        for (std::size_t k = wrong; k < c.size(); k += 2) {
            c[k] = 0.0;
        }
    }
    return {std::move(c), target, parity_, domain_};
}

Polynomial Polynomial::real_part() const {
    std::vector<cplx> c(coeffs_.size());
    std::ranges::transform(coeffs_, c.begin(),
                           [](cplx z) { return cplx{z.real(), 0.0}; });
    return {std::move(c), basis_, parity_, domain_};
}

Polynomial Polynomial::imag_part() const {
    std::vector<cplx> c(coeffs_.size());
    std::ranges::transform(coeffs_, c.begin(),
                           [](cplx z) { return cplx{z.imag(), 0.0}; });
    return {std::move(c), basis_, parity_, domain_};
}

Polynomial Polynomial::conj() const {
    std::vector<cplx> c(coeffs_.size());
    std::ranges::transform(coeffs_, c.begin(),
                           [](cplx z) { return std::conj(z); });
    return {std::move(c), basis_, parity_, domain_};
}

Polynomial Polynomial::scaled(cplx factor) const {
    std::vector<cplx> c(coeffs_.size());
    std::ranges::transform(coeffs_, c.begin(),
                           [factor](cplx z) { return factor * z; });
    return {std::move(c), basis_, parity_, domain_};
}

cplx Polynomial::operator()(cplx x) const { return eval(*this, x); }

cplx eval(const Polynomial &p, cplx x) {
    const auto &c = p.coeffs();
    if (p.basis() == Basis::monomial) {
        cplx acc = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) {
            acc = acc * x + c[k];
        }
        return acc;
    }
    // Clenshaw: b_k = c_k + 2x b_{k+1} - b_{k+2}, p = c_0 + x b_1 - b_2.
    cplx b1 = 0.0;
    cplx b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const cplx b0 = c[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + x * b1 - b2;
}

Parity detect_parity(std::span<const cplx> coeffs, double tol) {
    bool even_mass = false;
    bool odd_mass = false;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (std::abs(coeffs[k]) > tol) {
            (k % 2 == 0 ? even_mass : odd_mass) = true;
        }
    }
    if (odd_mass && !even_mass) {
        return Parity::odd;
    }
    if (even_mass && !odd_mass) {
        return Parity::even;
    }
    return even_mass ? Parity::none : Parity::even;
}

Parity parity_of_degree(int d) { return d % 2 == 0 ? Parity::even : Parity::odd; }

std::vector<cplx> monomial_to_chebyshev(std::span<const cplx> c) {
    // Horner in the Chebyshev basis, using x T_0 = T_1 and
    // x T_j = (T_{j+1} + T_{j-1}) / 2, accumulated in 113-bit floating point.
    using quad = boost::multiprecision::cpp_bin_float_quad;
    const std::size_t n = c.size();
    std::vector<quad> re(n + 1, 0);
    std::vector<quad> im(n + 1, 0);
    std::vector<quad> next_re(n + 1, 0);
    std::vector<quad> next_im(n + 1, 0);
    std::size_t top = 0; // highest index that may be nonzero
    for (std::size_t k = n; k-- > 0;) {
        std::fill(next_re.begin(), next_re.begin() + static_cast<long>(std::min(top + 2, n + 1)), quad(0));
        std::fill(next_im.begin(), next_im.begin() + static_cast<long>(std::min(top + 2, n + 1)), quad(0));
        if (k + 1 < n) {
            for (std::size_t j = 0; j <= top && j + 1 <= n; ++j) {
                if (j == 0) {
                    next_re[1] += re[0];
                    next_im[1] += im[0];
                } else {
                    next_re[j + 1] += re[j] / 2;
                    next_im[j + 1] += im[j] / 2;
                    next_re[j - 1] += re[j] / 2;
                    next_im[j - 1] += im[j] / 2;
                }
            }
            top = std::min(top + 1, n);
        }
        next_re[0] += c[k].real();
        next_im[0] += c[k].imag();
        std::swap(re, next_re);
        std::swap(im, next_im);
    }
    std::vector<cplx> out(std::max<std::size_t>(n, 1));
    for (std::size_t j = 0; j < out.size() && j < re.size(); ++j) {
        out[j] = {static_cast<double>(re[j]), static_cast<double>(im[j])};
    }
    return out;
}

std::vector<cplx> chebyshev_to_monomial(std::span<const cplx> c) {
    // The monomial coefficients of T_k grow like (1 + sqrt 2)^k, so the sum
    // is accumulated in 113-bit floating point.
    using quad = boost::multiprecision::cpp_bin_float_quad;
    const std::size_t n = c.size();
    std::vector<quad> re(std::max<std::size_t>(n, 1), 0);
    std::vector<quad> im(re.size(), 0);
    std::vector<quad> t_prev(n + 1, 0); // T_{k-1}
    std::vector<quad> t_cur(n + 1, 0);  // T_k
    std::vector<quad> t_next(n + 1, 0);
    t_cur[0] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        const quad cr = c[k].real();
        const quad ci = c[k].imag();
        for (std::size_t j = 0; j <= k; ++j) {
            re[j] += cr * t_cur[j];
            im[j] += ci * t_cur[j];
        }
        // T_{k+1} = 2x T_k - T_{k-1}  (T_1 = x)
        std::fill(t_next.begin(), t_next.end(), quad(0));
        for (std::size_t j = 0; j <= k && j + 1 <= n; ++j) {
            t_next[j + 1] = (k == 0 ? 1 : 2) * t_cur[j];
        }
        if (k > 0) {
            for (std::size_t j = 0; j <= k + 1 && j <= n; ++j) {
                t_next[j] -= t_prev[j];
            }
        }
        std::swap(t_prev, t_cur);
        std::swap(t_cur, t_next);
    }
    std::vector<cplx> out(re.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = {static_cast<double>(re[j]), static_cast<double>(im[j])};
    }
    return out;
}

std::vector<cplx> chebyshev_u_to_t(std::span<const cplx> c) {
    // U_j = 2 sum_{i = j, j-2, ..., > 0} T_i  (+ T_0 when j is even).
    std::vector<cplx> out(std::max<std::size_t>(c.size(), 1), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
        for (std::size_t i = j % 2; i <= j; i += 2) {
            out[i] += (i == 0 ? 1.0 : 2.0) * c[j];
        }
    }
    return out;
}

std::vector<cplx> chebyshev_multiply(std::span<const cplx> a,
                                     std::span<const cplx> b) {
    if (a.empty() || b.empty()) {
        return {0.0};
    }
    std::vector<cplx> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == cplx{}) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            const cplx half = 0.5 * a[i] * b[j];
            out[i + j] += half;
            out[i > j ? i - j : j - i] += half;
        }
    }
    return out;
}

std::vector<double> chebyshev_nodes(int count) {
    std::vector<double> x(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k) {
        x[static_cast<std::size_t>(k)] =
            std::cos(kPi * (2.0 * k + 1.0) / (2.0 * count));
    }
    return x;
}

double sup_norm(const Polynomial &p, double lo, double hi, int points) {
    double best = 0.0;
    for (int k = 0; k < points; ++k) {
        const double x =
            points == 1 ? lo : lo + (hi - lo) * k / double(points - 1);
        best = std::max(best, std::abs(p(x)));
    }
    return best;
}

const char *to_string(Basis b) {
    return b == Basis::monomial ? "monomial" : "chebyshev";
}

const char *to_string(Parity p) {
    switch (p) {
    case Parity::even:
        return "even";
    case Parity::odd:
        return "odd";
    case Parity::none:
        break;
    }
    return "none";
}

void write_polynomial(std::ostream &os, const Polynomial &p) {
    const int d = p.degree();
    os << to_string(p.basis()) << ' ' << to_string(p.parity()) << ' ' << d
       << '\n';
    const auto old = os.precision(17);
    for (int k = 0; k <= d; ++k) {
        const cplx c = p.coeff(static_cast<std::size_t>(k));
        os << c.real() << ' ' << c.imag() << '\n';
    }
    os.precision(old);
}

Polynomial read_polynomial(std::istream &is) {
    std::string basis_word;
    std::string parity_word;
    int degree = -1;
    if (!(is >> basis_word >> parity_word >> degree) || degree < 0) {
        throw DomainError("polynomial header must be 'basis parity degree'");
    }
    Basis basis;
    if (basis_word == "monomial") {
        basis = Basis::monomial;
    } else if (basis_word == "chebyshev") {
        basis = Basis::chebyshev;
    } else {
        throw DomainError("unknown basis '" + basis_word + "'");
    }
    Parity parity;
    if (parity_word == "even") {
        parity = Parity::even;
    } else if (parity_word == "odd") {
        parity = Parity::odd;
    } else if (parity_word == "none") {
        parity = Parity::none;
    } else {
        throw DomainError("unknown parity '" + parity_word + "'");
    }
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (auto &z : c) {
        double re = 0.0;
        double im = 0.0;
        if (!(is >> re >> im)) {
            throw DomainError("polynomial file truncated");
        }
        z = {re, im};
    }
    return {std::move(c), basis, parity};
}

} // namespace qsprep
