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
#include "qsprep/amplifier.hpp"

#include "qsprep/block_encoding.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>

namespace qsprep {

namespace {

/// (1 (x) s) applied to a vector on [ancillas, data].
Eigen::VectorXcd apply_on_data(const Eigen::MatrixXcd &s, const Eigen::VectorXcd &v) {
    const Eigen::Index data = s.rows();
    const Eigen::Index blocks = v.size() / data;
    Eigen::VectorXcd out(v.size());
    for (Eigen::Index b = 0; b < blocks; ++b) {
        out.segment(b * data, data) = s * v.segment(b * data, data);
    }
    return out;
}

void check_dims(const Eigen::MatrixXcd &c, const Eigen::MatrixXcd &s, int ancillas) {
    if (s.rows() != s.cols() || c.rows() != c.cols() ||
        c.rows() != (s.rows() << ancillas)) {
        throw DomainError("C must act on the ancillas plus the data register of S");
    }
}

} // namespace

ProjectorPair build_projectors(int n, const UnitaryMatrix &s, int ancillas) {
    if (s.dim() != (Eigen::Index{1} << n)) {
        throw DomainError("S does not act on n qubits");
    }
    ProjectorPair p;
    p.left = Projector::zero_ancillas(n + ancillas, ancillas);
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(s.dim() << ancillas, 1);
    psi.topRows(s.dim()) = s.matrix().col(0);
    p.right = Projector::from_basis(std::move(psi));
    return p;
}

AmplificationPlan plan_amplification(double sigma, double delta, double margin,
                                     double floor, const PhaseFindingOptions &options) {
    if (!(sigma > 0.0 && sigma <= 1.0)) {
        throw DomainError("sigma must lie in (0, 1]");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("delta must lie in (0, 1)");
    }
    if (sigma < floor) {
        throw DegreeOverflow("sigma " + std::to_string(sigma) +
                                 " is below the configured floor",
                             static_cast<long>(std::ceil(
                                 2.0 / sigma * std::log(16.0 / delta))));
    }
    AmplificationPlan plan;
    plan.sigma = sigma;
    plan.delta = delta;
    plan.Delta = margin * sigma;
    if (plan.Delta >= 1.0 - delta / 2.0) {
        const std::vector<double> x{0.0, 1.0};
        plan.polynomial = Polynomial::monomial(x, Parity::odd);
        plan.phases = {{0.0}};
        plan.rounds = 1;
        return plan;
    }
    const auto sign = sign_approx(plan.Delta, delta);
    plan.polynomial = sign.poly;
    plan.phases = find_phases(complete_with_complement(sign.poly), options);
    plan.rounds = plan.phases.degree();
    return plan;
}

UnitaryMatrix amplify(const UnitaryMatrix &c, const UnitaryMatrix &s,
                      const AmplificationPlan &plan, int ancillas) {
    check_dims(c.matrix(), s.matrix(), ancillas);
    const int n = s.layout().total_qubits();
    const auto proj = build_projectors(n, s, ancillas);
    BlockEncoding be;
    be.unitary = c;
    be.ancillas = ancillas;
    be.proj_left = proj.left;
    be.proj_right = proj.right;
    return qsvt_circuit(be, plan.phases, parity_of_degree(plan.phases.degree()))
        .unitary;
}

AmplificationResult amplify_state(const Eigen::MatrixXcd &c,
                                  const Eigen::MatrixXcd &s,
                                  const AmplificationPlan &plan, int ancillas) {
    check_dims(c, s, ancillas);
    const Eigen::Index data = s.rows();
    const Eigen::MatrixXcd cd = c.adjoint();
    const Eigen::MatrixXcd sd = s.adjoint();
    AmplificationResult r;

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(c.rows());
    psi.head(data) = s.col(0);
    r.s_calls = 1;

    auto apply_c = [&](const Eigen::VectorXcd &v) {
        ++r.c_calls;
        return Eigen::VectorXcd(c * v);
    };
    auto apply_cd = [&](const Eigen::VectorXcd &v) {
        ++r.c_calls;
        return Eigen::VectorXcd(cd * v);
    };
    auto phase_left = [&](const Eigen::VectorXcd &v, double phi) {
        const cplx ep = std::polar(1.0, phi);
        Eigen::VectorXcd out = std::conj(ep) * v;
        out.head(data) = ep * v.head(data);
        return out;
    };
    auto phase_right = [&](const Eigen::VectorXcd &v, double phi) {
        r.s_calls += 2;
        Eigen::VectorXcd w = apply_on_data(sd, v);
        const cplx ep = std::polar(1.0, phi);
        w *= std::conj(ep);
        w(0) *= ep * ep;
        return Eigen::VectorXcd(apply_on_data(s, w));
    };
    r.output = apply_qsvt_sequence(plan.phases, apply_c, apply_cd, phase_left,
                                   phase_right, psi);
    const Eigen::VectorXcd good = r.output.head(data);
    r.success_probability = good.squaredNorm();
    r.data_state = r.success_probability > 0.0 ? Eigen::VectorXcd(good / good.norm())
                                               : good;
    return r;
}

void write_plan(std::ostream &os, const AmplificationPlan &plan) {
    const auto old = os.precision(17);
    os << plan.sigma << ' ' << plan.delta << ' ' << plan.rounds << '\n';
    os.precision(old);
    write_phases(os, plan.phases);
}

AmplificationPlan read_plan(std::istream &is) {
    AmplificationPlan plan;
    if (!(is >> plan.sigma >> plan.delta >> plan.rounds)) {
        throw DomainError("plan header must be 'sigma delta rounds'");
    }
    plan.phases = read_phases(is);
    if (plan.phases.degree() != plan.rounds) {
        throw DomainError("plan lists " + std::to_string(plan.phases.degree()) +
                          " phases but declares " + std::to_string(plan.rounds) +
                          " rounds");
    }
    plan.Delta = plan.sigma;
    return plan;
}

} // namespace qsprep
