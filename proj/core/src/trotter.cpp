// Copyright 2026 The twirl Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "twirl/trotter.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "twirl/error.hpp"
#include "twirl/spectral.hpp"

namespace twirl {

namespace {

struct CompiledTerm {
    PauliMask mask;
    double coeff;
};

std::vector<CompiledTerm> compile(const PauliSum &h) {
    std::vector<CompiledTerm> out;
    out.reserve(h.terms().size());
    for (const auto &term : h.terms()) {
        out.push_back({PauliMask::of(term), term.coeff});
    }
    return out;
}

// amps <- (cos(theta) I - i sin(theta) P) amps
void apply_rotation(const CompiledTerm &term, double theta,
                    Eigen::VectorXcd &amps, Eigen::VectorXcd &scratch) {
    apply_pauli(term.mask, amps, scratch);
    const double c = std::cos(theta);
    const cplx minus_i_s{0.0, -std::sin(theta)};
    amps = c * amps + minus_i_s * scratch;
}

} // namespace

TrotterPlan::TrotterPlan(std::size_t steps_, double tau_) : steps(steps_), tau(tau_) {
    if (steps_ == 0) {
        throw Error("Trotter step count must be at least 1");
    }
    if (!std::isfinite(tau_)) {
        throw Error("evolution time must be finite");
    }
}

Eigen::VectorXcd evolve_trotter_raw(const Eigen::VectorXcd &amps,
                                    const PauliSum &h, double tau,
                                    std::size_t steps) {
    const TrotterPlan plan(steps, tau);
    if (static_cast<std::size_t>(amps.size()) != h.dimension()) {
        throw DimensionError("state and Hamiltonian dimensions differ");
    }
    const auto terms = compile(h);
    const double half_dt = 0.5 * plan.tau / static_cast<double>(plan.steps);
    Eigen::VectorXcd out = amps;
    Eigen::VectorXcd scratch(out.size());
    for (std::size_t step = 0; step < plan.steps; ++step) {
        for (const auto &term : terms) {
            apply_rotation(term, term.coeff * half_dt, out, scratch);
        }
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            apply_rotation(*it, it->coeff * half_dt, out, scratch);
        }
    }
    return out;
}

StateVector evolve_trotter(const StateVector &state, const PauliSum &h,
                           double tau, std::size_t steps) {
    if (state.qubits() != h.qubits()) {
        throw DimensionError("state and Hamiltonian qubit counts differ");
    }
    return StateVector::normalized(
        state.qubits(), evolve_trotter_raw(state.amplitudes(), h, tau, steps));
}

Eigen::MatrixXcd trotter_unitary(const PauliSum &h, double tau,
                                 std::size_t steps) {
    check_dense_limit(h.qubits());
    const auto dim = static_cast<Eigen::Index>(h.dimension());
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
        e[k] = 1.0;
        u.col(k) = evolve_trotter_raw(e, h, tau, steps);
    }
    return u;
}

double trotter_error(const PauliSum &h, double tau, std::size_t steps) {
    const auto spec = eigendecompose(h);
    const Eigen::MatrixXcd diff =
        trotter_unitary(h, tau, steps) - exact_propagator(spec, tau);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
    return svd.singularValues()[0];
}

} // namespace twirl
