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
 * Polynomial approximations used by the state-preparation pipeline: the
 * truncated arcsin series, an odd sign-function approximant, and the
 * completion of a bounded real polynomial into a QSP-realizable complex one.
 */
#pragma once

#include "qsprep/polynomial.hpp"

#include <string>

namespace qsprep {

enum class Target { arcsin_over_pi, sign };

struct ApproximationSpec {
    Target target = Target::arcsin_over_pi;
    double epsilon = 0.0;      ///< sup-norm error target
    double delta_margin = 0.0; ///< distance from +-1 (arcsin) or threshold (sign)
    int degree = 0;            ///< resolved degree
};

struct Approximation {
    Polynomial poly;
    ApproximationSpec spec;
    /// Certified sup error on the approximation interval (arcsin), or the
    /// Chebyshev truncation error of the erf expansion (sign).
    double achieved_error = 0.0;
    /// Factor the raw construction was multiplied by to keep |P| <= 1.
    double scale = 1.0;
    bool rescaled = false;
};

inline constexpr int kDefaultMaxDegree = 10000;

/**
 * @brief Odd truncation of sum_k binom(2k,k) 4^-k / (2k+1) x^(2k+1) / pi.
 *
 * The degree is the smallest one whose error on [-1+delta, 1-delta] is at
 * most epsilon. Throws DegreeOverflow above max_degree.
 */
Approximation arcsin_taylor(double epsilon, double delta,
                            int max_degree = kDefaultMaxDegree);

/**
 * @brief Odd polynomial with |P| <= 1 on [-1, 1] and P(x) >= 1 - delta/2 on
 * [Delta, 1], built from the Chebyshev expansion of erf(k x).
 */
Approximation sign_approx(double Delta, double delta,
                          int max_degree = kDefaultMaxDegree);

enum class CompletionMethod { automatic, roots, cepstral };

/// Complex P = P_R + iA together with the real complement Q such that
/// |P(x)|^2 + (1 - x^2) Q(x)^2 = 1 on [-1, 1].
struct Completion {
    Polynomial P;
    Polynomial Q;
    CompletionMethod method = CompletionMethod::automatic;
    double residual = 0.0; ///< max | |P|^2 + (1-x^2)Q^2 - 1 | on a grid
};

/// Degree above which the automatic method switches from roots to the
/// cepstral factorization. Below it, a failed root split also falls back to
/// the cepstral factorization.
inline constexpr int kRootFactorizationMaxDegree = 60;

Completion complete_with_complement(const Polynomial &p_real,
                                    CompletionMethod method =
                                        CompletionMethod::automatic);

/// Complex polynomial with real part p_real satisfying the QSP conditions.
Polynomial complete_to_complex(const Polynomial &p_real);

struct QspConditionReport {
    bool parity_ok = false;
    double max_inside = 0.0;  ///< max |P| on [-1, 1]
    double min_outside = 0.0; ///< min |P| at sampled |x| >= 1
    double min_imag_axis = 0.0; ///< min P(ix)P*(ix) (even degree only)
    bool pass = false;
    std::string reason;
};

/// Samples the four QSP admissibility conditions at finitely many points.
QspConditionReport check_qsp_conditions(const Polynomial &p, double tol = 1e-8);

} // namespace qsprep
