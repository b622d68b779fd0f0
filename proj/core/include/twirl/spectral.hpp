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
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "twirl/pauli.hpp"
#include "twirl/state.hpp"

namespace twirl {

/**
 * Eigenvalues (ascending) and orthonormal eigenvectors (columns).
 *
 * Phase convention: the first component with magnitude above 1e-12 is
 * real and positive. A degenerate block (eigenvalues within
 * kDegeneracyTolerance) is spanned by Gram-Schmidt over the block
 * projector's columns taken in basis-index order, so the basis is
 * deterministic even though the eigenspace alone does not fix one.
 */
struct SpectralDecomposition {
    static constexpr double kDegeneracyTolerance = 1e-9;

    std::size_t n_qubits{0};
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;

    [[nodiscard]] std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(eigenvalues.size());
    }

    /// sum_i e_i |u_i><u_i|
    [[nodiscard]] Eigen::MatrixXcd reconstruct() const;

    /// Index ranges [first, last) of (near-)degenerate eigenvalues.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>>
    degenerate_blocks(double tol = kDegeneracyTolerance) const;

    /// Projector onto columns [first, last).
    [[nodiscard]] Eigen::MatrixXcd projector(std::size_t first,
                                             std::size_t last) const;
};

/// Cyclic Jacobi diagonalization of a dense Hermitian matrix.
[[nodiscard]] SpectralDecomposition
hermitian_eigensystem(const Eigen::MatrixXcd &hermitian);

[[nodiscard]] SpectralDecomposition eigendecompose(const PauliSum &h);

/// Closed-form eigenpair of a Schwinger Hamiltonian; `label` is "u0".."u3"
/// or "E0".."E7".
struct ClosedFormEigenpair {
    std::string label;
    double energy{0.0};
    Eigen::VectorXcd vector;
};

/// Analytic eigenpairs in label order (u0, u1, ... / E0, E1, ...).
[[nodiscard]] std::vector<ClosedFormEigenpair>
closed_form_eigenpairs(std::size_t n_qubits, double J);

/// Analytic eigenpairs sorted ascending (stable in label order).
[[nodiscard]] SpectralDecomposition closed_form_spectrum(std::size_t n_qubits,
                                                         double J);

/// e^{-i tau H} applied through the eigenbasis.
[[nodiscard]] StateVector evolve_exact(const StateVector &state,
                                       const PauliSum &h, double tau);
[[nodiscard]] StateVector evolve_exact(const StateVector &state,
                                       const SpectralDecomposition &spec,
                                       double tau);
/// Unnormalized variant used inside the twirl engine.
[[nodiscard]] Eigen::VectorXcd
evolve_exact_raw(const Eigen::VectorXcd &amps,
                 const SpectralDecomposition &spec, double tau);

/// Dense e^{-i tau H}.
[[nodiscard]] Eigen::MatrixXcd exact_propagator(const SpectralDecomposition &spec,
                                                double tau);

/// Amplitudes <u_j|psi> and weights |<u_j|psi>|^2 in the spectral basis.
struct OverlapDecomposition {
    Eigen::VectorXcd amplitudes;
    Eigen::VectorXd weights;
};

[[nodiscard]] OverlapDecomposition
overlap_decomposition(const StateVector &state,
                      const SpectralDecomposition &spec);

/// One eigenvalue per row, header "index,eigenvalue".
[[nodiscard]] std::string spectrum_csv(const SpectralDecomposition &spec);
[[nodiscard]] std::string spectrum_json(const SpectralDecomposition &spec);

} // namespace twirl
