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
#include <algorithm>
#include <cmath>
#include <numeric>

#include "twirl/error.hpp"
#include "twirl/spectral.hpp"

namespace twirl {

namespace {

Eigen::VectorXcd ket(std::size_t n_qubits,
                     std::initializer_list<std::pair<std::size_t, double>> entries) {
    Eigen::VectorXcd v =
        Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n_qubits));
    for (const auto &[index, value] : entries) {
        v[static_cast<Eigen::Index>(index)] = value;
    }
    return v;
}

ClosedFormEigenpair pair(std::string label, double energy, Eigen::VectorXcd v) {
    return {std::move(label), energy, v / v.norm()};
}

// Basis indices on three qubits, qubit 0 first.
constexpr std::size_t k000 = 0b000, k001 = 0b001, k010 = 0b010, k011 = 0b011,
                      k100 = 0b100, k101 = 0b101, k110 = 0b110, k111 = 0b111;

std::vector<ClosedFormEigenpair> one_qubit(double J) {
    const double s = std::sqrt(J * J + 1.0);
    return {
        pair("u0", -s, ket(1, {{0, 1.0}, {1, -s - J}})),
        pair("u1", s, ket(1, {{0, s + J}, {1, 1.0}})),
    };
}

// The middle block of the two-qubit matrix is the one-qubit problem on
// {|01>, |10>}; |00> carries +J and |11> carries -J.
std::vector<ClosedFormEigenpair> two_qubit(double J) {
    const double s = std::sqrt(J * J + 1.0);
    return {
        pair("u0", -s, ket(2, {{0b01, 1.0}, {0b10, -s - J}})),
        pair("u1", -J, ket(2, {{0b11, 1.0}})),
        pair("u2", J, ket(2, {{0b00, 1.0}})),
        pair("u3", s, ket(2, {{0b01, s + J}, {0b10, 1.0}})),
    };
}

std::vector<ClosedFormEigenpair> three_qubit(double J) {
    const double r2 = std::sqrt(2.0);
    const double q = std::sqrt(1.0 + 2.0 * J * J);
    const double t = std::sqrt(2.0 + J * J);
    return {
        pair("E0", -(J + t), ket(3, {{k011, 1.0}, {k101, -(J + t)}, {k110, 1.0}})),
        pair("E1", -r2 * q,
             ket(3, {{k001, 1.0 + 4.0 * J * J - 2.0 * r2 * J * q},
                     {k010, 2.0 * J - r2 * q},
                     {k100, 1.0}})),
        pair("E2", 0.0, ket(3, {{k111, 1.0}})),
        pair("E3", 0.0, ket(3, {{k011, -1.0}, {k110, 1.0}})),
        pair("E4", 0.0, ket(3, {{k001, -1.0}, {k010, 2.0 * J}, {k100, 1.0}})),
        pair("E5", t - J, ket(3, {{k011, 1.0}, {k101, t - J}, {k110, 1.0}})),
        pair("E6", 2.0 * J, ket(3, {{k000, 1.0}})),
        pair("E7", r2 * q,
             ket(3, {{k001, 1.0 + 4.0 * J * J + 2.0 * r2 * J * q},
                     {k010, 2.0 * J + r2 * q},
                     {k100, 1.0}})),
    };
}

} // namespace

std::vector<ClosedFormEigenpair> closed_form_eigenpairs(std::size_t n_qubits,
                                                        double J) {
    if (!std::isfinite(J)) {
        throw Error("J must be finite");
    }
    switch (n_qubits) {
    case 1:
        return one_qubit(J);
    case 2:
        return two_qubit(J);
    case 3:
        return three_qubit(J);
    default:
        throw Error("unsupported system size");
    }
}

SpectralDecomposition closed_form_spectrum(std::size_t n_qubits, double J) {
    auto pairs = closed_form_eigenpairs(n_qubits, J);
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto &a, const auto &b) { return a.energy < b.energy; });
    const auto dim = static_cast<Eigen::Index>(pairs.size());
    SpectralDecomposition spec;
    spec.n_qubits = n_qubits;
    spec.eigenvalues.resize(dim);
    spec.eigenvectors.resize(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        spec.eigenvalues[k] = pairs[static_cast<std::size_t>(k)].energy;
        spec.eigenvectors.col(k) = pairs[static_cast<std::size_t>(k)].vector;
    }
    return spec;
}

} // namespace twirl
