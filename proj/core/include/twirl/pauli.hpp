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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace twirl {

using cplx = std::complex<double>;

/// Single-qubit Pauli factor.
enum class PauliAxis : std::uint8_t { I, X, Y, Z };

[[nodiscard]] char axis_char(PauliAxis axis) noexcept;
[[nodiscard]] PauliAxis axis_from_char(char c);

/**
 * A real-weighted Pauli string `coeff * P_0 (x) P_1 (x) ... (x) P_{n-1}`.
 *
 * Qubit 0 is the leftmost factor and the most significant bit of a
 * basis index: on two qubits |1>_0|0>_1 is index 2.
 */
struct PauliTerm {
    double coeff{1.0};
    std::vector<PauliAxis> axes;

    /// Parses "XXI"-style labels (qubit 0 first).
    static PauliTerm parse(double coeff, std::string_view label);

    [[nodiscard]] std::string label() const;
    [[nodiscard]] std::size_t qubits() const noexcept { return axes.size(); }
    [[nodiscard]] bool is_identity() const noexcept;
};

/**
 * Bit-level form of a Pauli string acting on basis indices:
 * P|x> = i^{y_count} (-1)^{popcount(x & sign_mask)} |x ^ flip_mask>.
 */
struct PauliMask {
    std::uint64_t flip_mask{0};
    std::uint64_t sign_mask{0};
    unsigned y_count{0};

    static PauliMask of(const PauliTerm &term);

    /// Phase picked up by basis index `x`.
    [[nodiscard]] cplx phase(std::uint64_t x) const noexcept;
};

/// out = P * in for the bare Pauli string (coefficient ignored).
void apply_pauli(const PauliMask &mask, const Eigen::VectorXcd &in,
                 Eigen::VectorXcd &out);

/**
 * Hermitian operator as a sum of Pauli strings. Terms keep insertion
 * order; Trotter splitting and every report use that order.
 */
class PauliSum {
  public:
    explicit PauliSum(std::size_t n_qubits);
    PauliSum(std::size_t n_qubits, std::vector<PauliTerm> terms);

    PauliSum &add(PauliTerm term);
    PauliSum &add(double coeff, std::string_view label);

    [[nodiscard]] std::size_t qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return std::size_t{1} << n_qubits_;
    }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept {
        return terms_;
    }

    /// Comma-separated term labels in splitting order, e.g. "XXI,IXX,...".
    [[nodiscard]] std::string term_order() const;

    [[nodiscard]] PauliSum scaled(double factor) const;
    friend PauliSum operator+(const PauliSum &a, const PauliSum &b);

    /// {"n_qubits": n, "terms": [{"coeff": c, "axes": "XXI"}, ...]}
    [[nodiscard]] std::string to_json() const;
    static PauliSum from_json(std::string_view text);

  private:
    std::size_t n_qubits_;
    std::vector<PauliTerm> terms_;
};

/// Coupling of the lattice model; J = g^2 a^2 = G / w.
struct SchwingerCoupling {
    double g{0.0};
    double a{1.0};

    SchwingerCoupling(double g, double a);

    [[nodiscard]] double G() const noexcept { return 0.5 * g * g * a; }
    [[nodiscard]] double w() const noexcept { return 0.5 / a; }
    [[nodiscard]] double J() const noexcept { return g * g * a * a; }
};

/**
 * Dimensionless Schwinger-model Hamiltonians, terms in defining order:
 *   1 qubit : X + J Z
 *   2 qubits: 1/2 (X0X1 + Y0Y1) + J Z0
 *   3 qubits: 1/2 (X0X1 + X1X2 + Y0Y1 + Y1Y2) + J (Z0 + Z0Z1)
 * Throws Error("unsupported system size") for other n.
 */
[[nodiscard]] PauliSum schwinger_hamiltonian(std::size_t n_qubits, double J);

/// Builder lookup: "schwinger-1q", "schwinger-2q", "schwinger-3q".
[[nodiscard]] PauliSum hamiltonian_by_name(std::string_view name, double J);

/// Zbar = (Z0 - Z1 + Z2) / 3 on three qubits.
[[nodiscard]] PauliSum observable_zbar();

/// Single Z on `qubit` of an n-qubit register.
[[nodiscard]] PauliSum observable_z(std::size_t n_qubits, std::size_t qubit);

/// Qubit cap for dense operators; TWIRL_DENSE_LIMIT overrides the default 12.
[[nodiscard]] std::size_t dense_limit();

/// Throws DenseLimitError("dense limit exceeded") when n exceeds the cap.
void check_dense_limit(std::size_t n_qubits);

[[nodiscard]] Eigen::MatrixXcd dense_matrix(const PauliSum &h);

class StateVector;

/// <psi|O|psi>. Throws if the imaginary residue exceeds 1e-10.
[[nodiscard]] double expectation(const StateVector &state, const PauliSum &obs);

/// Expectation of one bare Pauli string (coefficient ignored).
[[nodiscard]] double pauli_expectation(const Eigen::VectorXcd &amps,
                                       const PauliMask &mask);

/// True iff the dense commutator [a, b] has max-entry norm below 1e-12.
[[nodiscard]] bool commutes(const PauliSum &a, const PauliSum &b);

} // namespace twirl
