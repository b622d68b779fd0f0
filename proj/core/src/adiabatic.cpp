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
#include "twirl/adiabatic.hpp"

#include <cmath>

#include "twirl/error.hpp"
#include "twirl/spectral.hpp"
#include "twirl/trotter.hpp"

namespace twirl {

void AdiabaticSchedule::validate() const {
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
        throw ConfigError("", "adiabatic total time must be positive and finite");
    }
    if (steps == 0) {
        throw ConfigError("", "adiabatic step count must be at least 1");
    }
}

PauliSum alternating_field(std::size_t n_qubits) {
    PauliSum out(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        std::string label(n_qubits, 'I');
        label[q] = 'Z';
        out.add(q % 2 == 0 ? 1.0 : -1.0, label);
    }
    return out;
}

StateVector adiabatic_prepare(const PauliSum &h0, const PauliSum &h1,
                              const AdiabaticSchedule &schedule,
                              const StateVector &initial, const Backend &backend) {
    schedule.validate();
    if (h0.qubits() != h1.qubits() || initial.qubits() != h1.qubits()) {
        throw DimensionError("adiabatic endpoints and initial state must share a "
                             "qubit count");
    }
    const double dt = schedule.dt();
    Eigen::VectorXcd psi = initial.amplitudes();
    for (std::size_t k = 0; k < schedule.steps; ++k) {
        const double s =
            (static_cast<double>(k) + 0.5) / static_cast<double>(schedule.steps);
        const PauliSum frozen = h0.scaled(1.0 - s) + h1.scaled(s);
        if (const auto *trotter = std::get_if<TrotterBackend>(&backend)) {
            psi = evolve_trotter_raw(psi, frozen, dt, trotter->steps);
        } else {
            psi = evolve_exact_raw(psi, eigendecompose(frozen), dt);
        }
    }
    return StateVector::normalized(initial.qubits(), std::move(psi));
}

} // namespace twirl
