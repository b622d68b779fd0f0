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

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace twirl {

/**
 * Normalized n-qubit pure state. Amplitude index b_0 b_1 ... b_{n-1}
 * read as binary, qubit 0 most significant.
 */
class StateVector {
  public:
    static constexpr double kNormTolerance = 1e-9;

    /// Takes ownership of amplitudes already normalized within 1e-9.
    StateVector(std::size_t n_qubits, Eigen::VectorXcd amplitudes);

    /// Rescales an arbitrary nonzero vector to unit norm.
    static StateVector normalized(std::size_t n_qubits,
                                  Eigen::VectorXcd amplitudes);

    /// Computational basis state from a label such as "010".
    static StateVector basis(std::string_view label);
    static StateVector basis(std::size_t n_qubits, std::size_t index);

    [[nodiscard]] std::size_t qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] const Eigen::VectorXcd &amplitudes() const noexcept {
        return amps_;
    }

    /// <this|other>
    [[nodiscard]] std::complex<double> inner(const StateVector &other) const;
    [[nodiscard]] double fidelity(const StateVector &other) const;
    [[nodiscard]] double fidelity(const Eigen::VectorXcd &other) const;

    [[nodiscard]] std::string to_string(int precision = 6) const;

  private:
    std::size_t n_qubits_;
    Eigen::VectorXcd amps_;
};

/// Number of qubits for a power-of-two dimension; throws otherwise.
[[nodiscard]] std::size_t qubits_for_dimension(std::size_t dim);

} // namespace twirl
