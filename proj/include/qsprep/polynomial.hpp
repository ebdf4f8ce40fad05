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
 * Dense univariate polynomials over the complex numbers, stored either in the
 * monomial basis or in the Chebyshev (first kind) basis.
 */
#pragma once

#include "qsprep/common.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace qsprep {

enum class Basis { monomial, chebyshev };
enum class Parity { even, odd, none };

/// Magnitude below which a coefficient counts as zero.
inline constexpr double kCoeffTol = 1e-12;

struct Interval {
    double lo = -1.0;
    double hi = 1.0;
};

/**
 * @brief Polynomial with complex coefficients, index = degree of the basis
 * element.
 *
 * A declared parity is validated on construction: cross-parity coefficients
 * must have magnitude at most kCoeffTol (they are then set to exactly zero).
 * Trailing zero coefficients are trimmed.
 */
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(std::vector<cplx> coeffs, Basis basis,
               Parity parity = Parity::none, Interval domain = {});

    static Polynomial monomial(std::span<const double> coeffs,
                               Parity parity = Parity::none);
    static Polynomial chebyshev(std::span<const double> coeffs,
                                Parity parity = Parity::none);

    [[nodiscard]] const std::vector<cplx> &coeffs() const { return coeffs_; }
    [[nodiscard]] Basis basis() const { return basis_; }
    [[nodiscard]] Parity parity() const { return parity_; }
    [[nodiscard]] Interval domain() const { return domain_; }

    /// Highest index with |c| > kCoeffTol; 0 for the zero polynomial.
    [[nodiscard]] int degree() const;
    [[nodiscard]] bool is_real(double tol = kCoeffTol) const;
    [[nodiscard]] bool is_zero(double tol = kCoeffTol) const;

    /// Coefficient at index k (zero beyond the stored length).
    [[nodiscard]] cplx coeff(std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k] : cplx{};
    }

    [[nodiscard]] Polynomial to_basis(Basis target) const;
    /// Real parts of the coefficients.
    [[nodiscard]] Polynomial real_part() const;
    /// Imaginary parts of the coefficients, as a real polynomial.
    [[nodiscard]] Polynomial imag_part() const;
    /// P*: the polynomial with conjugated coefficients.
    [[nodiscard]] Polynomial conj() const;
    [[nodiscard]] Polynomial scaled(cplx factor) const;

    cplx operator()(cplx x) const;
    double real_at(double x) const { return (*this)(cplx{x, 0.0}).real(); }

  private:
    std::vector<cplx> coeffs_;
    Basis basis_ = Basis::monomial;
    Parity parity_ = Parity::none;
    Interval domain_{};
};

/// Horner for the monomial basis, Clenshaw for the Chebyshev basis.
cplx eval(const Polynomial &p, cplx x);

/// Parity implied by the coefficients (none if both parities carry mass).
Parity detect_parity(std::span<const cplx> coeffs, double tol = kCoeffTol);
Parity parity_of_degree(int d);

std::vector<cplx> monomial_to_chebyshev(std::span<const cplx> c);
std::vector<cplx> chebyshev_to_monomial(std::span<const cplx> c);
/// Chebyshev (second kind) coefficients to first kind.
std::vector<cplx> chebyshev_u_to_t(std::span<const cplx> c);
/// Product of two Chebyshev series.
std::vector<cplx> chebyshev_multiply(std::span<const cplx> a,
                                     std::span<const cplx> b);

/// Chebyshev points of the first kind on [-1, 1].
std::vector<double> chebyshev_nodes(int count);

/// Largest |p(x)| over an equispaced grid on [lo, hi].
double sup_norm(const Polynomial &p, double lo, double hi, int points);

const char *to_string(Basis b);
const char *to_string(Parity p);

/// Text format: header "basis parity degree", then one "re im" line per
/// coefficient.
void write_polynomial(std::ostream &os, const Polynomial &p);
Polynomial read_polynomial(std::istream &is);

} // namespace qsprep
