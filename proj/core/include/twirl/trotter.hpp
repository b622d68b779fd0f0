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
#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "twirl/pauli.hpp"
#include "twirl/state.hpp"

namespace twirl {

/// Second-order (symmetric) Suzuki-Trotter schedule for e^{-i tau H}.
struct TrotterPlan {
    std::size_t steps{1};
    double tau{0.0};

    TrotterPlan(std::size_t steps, double tau);
};

/**
 * Applies `steps` symmetric steps. Each step runs e^{-i (dt/2) c_k P_k} over
 * the terms in stored order and then in reverse order, with dt = tau/steps.
 * Every factor is cos(theta) I - i sin(theta) P on the amplitudes.
 */
[[nodiscard]] StateVector evolve_trotter(const StateVector &state,
                                         const PauliSum &h, double tau,
                                         std::size_t steps);
[[nodiscard]] Eigen::VectorXcd evolve_trotter_raw(const Eigen::VectorXcd &amps,
                                                  const PauliSum &h, double tau,
                                                  std::size_t steps);

/// Dense product-formula unitary (column k = evolve_trotter of |k>).
[[nodiscard]] Eigen::MatrixXcd trotter_unitary(const PauliSum &h, double tau,
                                               std::size_t steps);

/// Operator norm || U_trotter - e^{-i tau H} ||_2.
[[nodiscard]] double trotter_error(const PauliSum &h, double tau,
                                   std::size_t steps);

} // namespace twirl
