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
#include "twirl/state.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "twirl/error.hpp"

namespace twirl {

std::size_t qubits_for_dimension(std::size_t dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionError("dimension " + std::to_string(dim) +
                             " is not a power of two >= 2");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    return n;
}

StateVector::StateVector(std::size_t n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits == 0 || n_qubits > 30) {
        throw DimensionError("qubit count must be in [1, 30]");
    }
    if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n_qubits)) {
        throw DimensionError("amplitude vector of length " +
                             std::to_string(amps_.size()) + " for " +
                             std::to_string(n_qubits) + " qubits");
    }
    const double norm = amps_.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg << "state is not normalized (norm " << norm << ")";
        throw Error(msg.str());
    }
}

StateVector StateVector::normalized(std::size_t n_qubits,
                                    Eigen::VectorXcd amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return StateVector(n_qubits, std::move(amplitudes));
}

StateVector StateVector::basis(std::string_view label) {
    if (label.empty()) {
        throw Error("empty basis-state label");
    }
    std::size_t index = 0;
    for (char c : label) {
        if (c != '0' && c != '1') {
            throw Error("basis-state label '" + std::string(label) +
                        "' must contain only 0 and 1");
        }
        index = (index << 1U) | static_cast<std::size_t>(c == '1');
    }
    return basis(label.size(), index);
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (index >= dim) {
        throw DimensionError("basis index out of range");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

std::complex<double> StateVector::inner(const StateVector &other) const {
    if (other.dimension() != dimension()) {
        throw DimensionError("inner product of states with different dimensions");
    }
    return amps_.dot(other.amps_);
}

double StateVector::fidelity(const StateVector &other) const {
    return std::norm(inner(other));
}

double StateVector::fidelity(const Eigen::VectorXcd &other) const {
    if (static_cast<std::size_t>(other.size()) != dimension()) {
        throw DimensionError("fidelity against a vector of the wrong length");
    }
    return std::norm(other.dot(amps_));
}

std::string StateVector::to_string(int precision) const {
    std::ostringstream out;
    out << std::fixed << std::setprecision(precision);
    for (Eigen::Index k = 0; k < amps_.size(); ++k) {
        if (std::abs(amps_[k]) < 0.5 * std::pow(10.0, -precision)) {
            continue;
        }
        out << '|';
        for (std::size_t q = 0; q < n_qubits_; ++q) {
            out << ((static_cast<std::size_t>(k) >> (n_qubits_ - 1 - q)) & 1U);
        }
        out << ">: " << amps_[k].real() << (amps_[k].imag() < 0 ? " - " : " + ")
            << std::abs(amps_[k].imag()) << "i\n";
    }
    return out.str();
}

} // namespace twirl
