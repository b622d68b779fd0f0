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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twirl/adiabatic.hpp"
#include "twirl/pauli.hpp"
#include "twirl/twirl.hpp"

namespace twirl {

/// Theoretical value shown in the table; checked when a tolerance is set.
struct TargetSpec {
    std::string observable;
    double value{0.0};
    std::optional<double> tolerance;
};

struct PreparationSpec {
    AdiabaticSchedule schedule;
    /// Empty means alternating_field(n).
    std::optional<PauliSum> h0;
    Backend backend{ExactBackend{}};
};

/**
 * One experiment: Hamiltonian, initial state, optional adiabatic prelude,
 * the twirl schedule and the values to compare against.
 *
 * JSON layout:
 *   {"name": "table-12", "hamiltonian": "schwinger-3q", "J": 1.0,
 *    "initial": "101", "rounds": [{"mode": "quarter", "E_override": 0.5,
 *    "ancillas": 3}], "backend": "exact", "shots": 1000000, "seed": 7,
 *    "observables": ["Zbar", "H"],
 *    "expected": {"H": {"value": -2.73205, "tolerance": 5e-3}},
 *    "prepare": {"adiabatic": {"T": 20, "steps": 400}}, "notes": [...]}
 * "hamiltonian" may also be an inline {"n_qubits", "terms"} object.
 */
struct ExperimentManifest {
    std::string name;
    std::string description;
    std::string hamiltonian_label;
    double J{0.0};
    PauliSum hamiltonian{1};
    std::string initial;
    std::optional<PreparationSpec> prepare;
    TwirlConfig config;
    std::vector<TargetSpec> expected;
    std::vector<std::string> notes;
};

/// Errors carry the JSON pointer of the offending value.
[[nodiscard]] ExperimentManifest parse_manifest(std::string_view json_text);
[[nodiscard]] ExperimentManifest load_manifest(const std::filesystem::path &path);

/**
 * Observable names: "H" (the Hamiltonian), "Zbar", "Z" (alias of Z0),
 * "Z<k>", or "P:<label>" for an arbitrary Pauli string.
 */
[[nodiscard]] PauliSum resolve_observable(std::string_view name,
                                          const PauliSum &hamiltonian);

/// "adiabatic:T=20,steps=400[,backend=trotter:64]"
[[nodiscard]] PreparationSpec parse_prepare_flag(std::string_view text);

/// Command-line overrides layered over a manifest.
struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::optional<Backend> backend;
    std::optional<PreparationSpec> prepare;
};

void apply_overrides(ExperimentManifest &manifest, const RunOverrides &overrides);

} // namespace twirl
