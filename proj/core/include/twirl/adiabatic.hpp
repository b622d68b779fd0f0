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

#include "twirl/pauli.hpp"
#include "twirl/state.hpp"
#include "twirl/twirl.hpp"

namespace twirl {

/// Linear ramp s = t/T over `steps` equal slices.
struct AdiabaticSchedule {
    double total_time{20.0};
    std::size_t steps{400};

    void validate() const;
    [[nodiscard]] double dt() const noexcept {
        return total_time / static_cast<double>(steps);
    }
};

/// sum_q (-1)^q Z_q; on three qubits this is Z0 - Z1 + Z2 with ground |101>.
[[nodiscard]] PauliSum alternating_field(std::size_t n_qubits);

/**
 * Evolves `initial` under H(s) = (1-s) h0 + s h1. Slice k is frozen at the
 * midpoint s = (k + 1/2)/steps and propagated for dt with `backend`.
 */
[[nodiscard]] StateVector adiabatic_prepare(const PauliSum &h0,
                                            const PauliSum &h1,
                                            const AdiabaticSchedule &schedule,
                                            const StateVector &initial,
                                            const Backend &backend = ExactBackend{});

} // namespace twirl
