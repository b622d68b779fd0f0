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
#include "twirl/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "twirl/error.hpp"
#include "twirl/state.hpp"

namespace twirl {

namespace {

constexpr std::size_t kDefaultDenseLimit = 12;

std::uint64_t qubit_bit(std::size_t n_qubits, std::size_t qubit) {
    return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

void check_term(const PauliTerm &term, std::size_t n_qubits) {
    if (term.axes.size() != n_qubits) {
        throw DimensionError("Pauli term '" + term.label() + "' has " +
                             std::to_string(term.axes.size()) +
                             " axes, expected " + std::to_string(n_qubits));
    }
    if (!std::isfinite(term.coeff)) {
        throw Error("Pauli term '" + term.label() +
                    "' has a non-finite coefficient");
    }
}

} // namespace

char axis_char(PauliAxis axis) noexcept {
    switch (axis) {
    case PauliAxis::X:
        return 'X';
    case PauliAxis::Y:
        return 'Y';
    case PauliAxis::Z:
        return 'Z';
    case PauliAxis::I:
        break;
    }
    return 'I';
}

PauliAxis axis_from_char(char c) {
    switch (c) {
    case 'I':
        return PauliAxis::I;
    case 'X':
        return PauliAxis::X;
    case 'Y':
        return PauliAxis::Y;
    case 'Z':
        return PauliAxis::Z;
    default:
        throw Error(std::string("invalid Pauli axis '") + c + "'");
    }
}

PauliTerm PauliTerm::parse(double coeff, std::string_view label) {
    PauliTerm term;
    term.coeff = coeff;
    term.axes.reserve(label.size());
    for (char c : label) {
        term.axes.push_back(axis_from_char(c));
    }
    return term;
}

std::string PauliTerm::label() const {
    std::string out;
    out.reserve(axes.size());
    for (auto axis : axes) {
        out.push_back(axis_char(axis));
    }
    return out;
}

bool PauliTerm::is_identity() const noexcept {
    for (auto axis : axes) {
        if (axis != PauliAxis::I) {
            return false;
        }
    }
    return true;
}

PauliMask PauliMask::of(const PauliTerm &term) {
    const std::size_t n = term.axes.size();
    if (n > 63) {
        throw DimensionError("Pauli strings are limited to 63 qubits");
    }
    PauliMask mask;
    for (std::size_t q = 0; q < n; ++q) {
        const auto bit = qubit_bit(n, q);
        switch (term.axes[q]) {
        case PauliAxis::X:
            mask.flip_mask |= bit;
            break;
        case PauliAxis::Y:
            mask.flip_mask |= bit;
            mask.sign_mask |= bit;
            ++mask.y_count;
            break;
        case PauliAxis::Z:
            mask.sign_mask |= bit;
            break;
        case PauliAxis::I:
            break;
        }
    }
    return mask;
}

cplx PauliMask::phase(std::uint64_t x) const noexcept {
    // Y|b> = i (-1)^b |1-b>, Z|b> = (-1)^b |b>.
    static constexpr cplx kIPowers[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const unsigned sign = std::popcount(x & sign_mask) & 1U;
    const unsigned power = (y_count + 2U * sign) & 3U;
    return kIPowers[power];
}

void apply_pauli(const PauliMask &mask, const Eigen::VectorXcd &in,
                 Eigen::VectorXcd &out) {
    const auto dim = static_cast<std::uint64_t>(in.size());
    out.resize(in.size());
    for (std::uint64_t x = 0; x < dim; ++x) {
        out[static_cast<Eigen::Index>(x ^ mask.flip_mask)] =
            mask.phase(x) * in[static_cast<Eigen::Index>(x)];
    }
}

PauliSum::PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > 63) {
        throw DimensionError("qubit count must be in [1, 63], got " +
                             std::to_string(n_qubits));
    }
}

PauliSum::PauliSum(std::size_t n_qubits, std::vector<PauliTerm> terms)
    : PauliSum(n_qubits) {
    for (auto &term : terms) {
        add(std::move(term));
    }
}

PauliSum &PauliSum::add(PauliTerm term) {
    check_term(term, n_qubits_);
    terms_.push_back(std::move(term));
    return *this;
}

PauliSum &PauliSum::add(double coeff, std::string_view label) {
    return add(PauliTerm::parse(coeff, label));
}

std::string PauliSum::term_order() const {
    std::string out;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (k != 0) {
            out += ',';
        }
        out += terms_[k].label();
    }
    return out;
}

PauliSum PauliSum::scaled(double factor) const {
    PauliSum out(n_qubits_);
    for (const auto &term : terms_) {
        out.add(PauliTerm{term.coeff * factor, term.axes});
    }
    return out;
}

PauliSum operator+(const PauliSum &a, const PauliSum &b) {
    if (a.qubits() != b.qubits()) {
        throw DimensionError("cannot add Pauli sums on " +
                             std::to_string(a.qubits()) + " and " +
                             std::to_string(b.qubits()) + " qubits");
    }
    PauliSum out = a;
    for (const auto &term : b.terms()) {
        out.add(term);
    }
    return out;
}

std::string PauliSum::to_json() const {
    nlohmann::ordered_json doc;
    doc["n_qubits"] = n_qubits_;
    doc["terms"] = nlohmann::ordered_json::array();
    for (const auto &term : terms_) {
        doc["terms"].push_back({{"coeff", term.coeff}, {"axes", term.label()}});
    }
    return doc.dump();
}

PauliSum PauliSum::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(std::string("invalid Hamiltonian JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n_qubits") ||
        !doc["n_qubits"].is_number_unsigned() || !doc.contains("terms") ||
        !doc["terms"].is_array()) {
        throw Error(
            "Hamiltonian JSON needs an unsigned \"n_qubits\" and a \"terms\" array");
    }
    PauliSum out(doc["n_qubits"].get<std::size_t>());
    for (const auto &t : doc["terms"]) {
        if (!t.is_object() || !t.contains("coeff") || !t["coeff"].is_number() ||
            !t.contains("axes") || !t["axes"].is_string()) {
            throw Error("each term needs numeric \"coeff\" and string \"axes\"");
        }
        out.add(t["coeff"].get<double>(), t["axes"].get<std::string>());
    }
    return out;
}

SchwingerCoupling::SchwingerCoupling(double g_, double a_) : g(g_), a(a_) {
    if (!(a_ > 0.0) || !std::isfinite(a_) || !std::isfinite(g_)) {
        throw Error("lattice spacing must be positive and finite");
    }
}

PauliSum schwinger_hamiltonian(std::size_t n_qubits, double J) {
    if (!std::isfinite(J)) {
        throw Error("J must be finite");
    }
    switch (n_qubits) {
    case 1:
        return PauliSum(1).add(1.0, "X").add(J, "Z");
    case 2:
        return PauliSum(2).add(0.5, "XX").add(0.5, "YY").add(J, "ZI");
    case 3:
        return PauliSum(3)
            .add(0.5, "XXI")
            .add(0.5, "IXX")
            .add(0.5, "YYI")
            .add(0.5, "IYY")
            .add(J, "ZII")
            .add(J, "ZZI");
    default:
        throw Error("unsupported system size");
    }
}

PauliSum hamiltonian_by_name(std::string_view name, double J) {
    if (name == "schwinger-1q") {
        return schwinger_hamiltonian(1, J);
    }
    if (name == "schwinger-2q") {
        return schwinger_hamiltonian(2, J);
    }
    if (name == "schwinger-3q") {
        return schwinger_hamiltonian(3, J);
    }
    throw Error("unknown Hamiltonian '" + std::string(name) + "'");
}

PauliSum observable_zbar() {
    return PauliSum(3)
        .add(1.0 / 3.0, "ZII")
        .add(-1.0 / 3.0, "IZI")
        .add(1.0 / 3.0, "IIZ");
}

PauliSum observable_z(std::size_t n_qubits, std::size_t qubit) {
    if (qubit >= n_qubits) {
        throw DimensionError("qubit " + std::to_string(qubit) +
                             " out of range for " + std::to_string(n_qubits) +
                             " qubits");
    }
    std::string label(n_qubits, 'I');
    label[qubit] = 'Z';
    return PauliSum(n_qubits).add(1.0, label);
}

std::size_t dense_limit() {
    if (const char *env = std::getenv("TWIRL_DENSE_LIMIT"); env != nullptr) {
        char *end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0 && value < 31) {
            return static_cast<std::size_t>(value);
        }
    }
    return kDefaultDenseLimit;
}

void check_dense_limit(std::size_t n_qubits) {
    if (n_qubits > dense_limit()) {
        throw DenseLimitError("dense limit exceeded: " +
                              std::to_string(n_qubits) + " qubits > " +
                              std::to_string(dense_limit()));
    }
}

Eigen::MatrixXcd dense_matrix(const PauliSum &h) {
    check_dense_limit(h.qubits());
    const auto dim = static_cast<std::uint64_t>(h.dimension());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto &term : h.terms()) {
        const auto mask = PauliMask::of(term);
        for (std::uint64_t x = 0; x < dim; ++x) {
            m(static_cast<Eigen::Index>(x ^ mask.flip_mask),
              static_cast<Eigen::Index>(x)) += term.coeff * mask.phase(x);
        }
    }
    return m;
}

double pauli_expectation(const Eigen::VectorXcd &amps, const PauliMask &mask) {
    const auto dim = static_cast<std::uint64_t>(amps.size());
    cplx acc{0.0, 0.0};
    for (std::uint64_t x = 0; x < dim; ++x) {
        acc += std::conj(amps[static_cast<Eigen::Index>(x ^ mask.flip_mask)]) *
               mask.phase(x) * amps[static_cast<Eigen::Index>(x)];
    }
    return acc.real();
}

double expectation(const StateVector &state, const PauliSum &obs) {
    if (state.qubits() != obs.qubits()) {
        throw DimensionError("state has " + std::to_string(state.qubits()) +
                             " qubits, observable has " +
                             std::to_string(obs.qubits()));
    }
    const auto &amps = state.amplitudes();
    const auto dim = static_cast<std::uint64_t>(amps.size());
    cplx total{0.0, 0.0};
    for (const auto &term : obs.terms()) {
        const auto mask = PauliMask::of(term);
        cplx acc{0.0, 0.0};
        for (std::uint64_t x = 0; x < dim; ++x) {
            acc += std::conj(amps[static_cast<Eigen::Index>(x ^ mask.flip_mask)]) *
                   mask.phase(x) * amps[static_cast<Eigen::Index>(x)];
        }
        total += term.coeff * acc;
    }
    if (std::abs(total.imag()) > 1e-10) {
        std::ostringstream msg;
        msg << "expectation has imaginary residue " << total.imag();
        throw Error(msg.str());
    }
    return total.real();
}

bool commutes(const PauliSum &a, const PauliSum &b) {
    if (a.qubits() != b.qubits()) {
        throw DimensionError("commutator of operators on different qubit counts");
    }
    const auto ma = dense_matrix(a);
    const auto mb = dense_matrix(b);
    const Eigen::MatrixXcd comm = ma * mb - mb * ma;
    return comm.cwiseAbs().maxCoeff() < 1e-12;
}

} // namespace twirl
