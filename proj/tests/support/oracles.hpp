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
// Reference implementations that share no code with the library: dense
// Kronecker-product operators, Eigen's own eigensolver and matrix
// exponential, and the closed-form survival sum.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <string_view>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char c) {
    Mat m(2, 2);
    switch (c) {
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, cplx(0, -1), cplx(0, 1), 0;
        break;
    case 'Z':
        m << 1, 0, 0, -1;
        break;
    default:
        m.setIdentity();
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Qubit 0 is the leftmost Kronecker factor.
inline Mat pauli_string(std::string_view label) {
    Mat out = Mat::Identity(1, 1);
    for (char c : label) {
        out = kron(out, pauli(c));
    }
    return out;
}

/// Schwinger Hamiltonians written out directly from their definitions.
inline Mat schwinger(std::size_t n, double J) {
    if (n == 1) {
        return pauli_string("X") + J * pauli_string("Z");
    }
    if (n == 2) {
        return 0.5 * (pauli_string("XX") + pauli_string("YY")) + J * pauli_string("ZI");
    }
    return 0.5 * (pauli_string("XXI") + pauli_string("IXX") + pauli_string("YYI") +
                  pauli_string("IYY")) +
           J * (pauli_string("ZII") + pauli_string("ZZI"));
}

inline Mat zbar() {
    return (pauli_string("ZII") - pauli_string("IZI") + pauli_string("IIZ")) / 3.0;
}

struct Eig {
    Eigen::VectorXd values;
    Mat vectors;
};

inline Eig eig(const Mat &h) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline Mat expm(const Mat &h, double tau) {
    const Mat a = cplx(0, -tau) * h;
    return a.exp();
}

inline double expect(const Mat &op, const Vec &v) {
    return (v.adjoint() * op * v)(0, 0).real();
}

inline Vec basis(std::string_view bits) {
    Vec v = Vec::Zero(Eigen::Index{1} << bits.size());
    std::size_t idx = 0;
    for (char c : bits) {
        idx = (idx << 1) | (c == '1' ? 1U : 0U);
    }
    v[static_cast<Eigen::Index>(idx)] = 1.0;
    return v;
}

/**
 * Survival probability of one round with r ancillas:
 * sum_j w_j |(1 + phi e^{-i tau e_j}) / 2|^{2r} = sum_j w_j cos^{2r}(theta_j / 2).
 */
inline double survival(const Mat &h, const Vec &psi, double tau, cplx phi,
                       std::size_t r) {
    const auto e = eig(h);
    double p = 0.0;
    for (Eigen::Index j = 0; j < e.values.size(); ++j) {
        const double w = std::norm(e.vectors.col(j).dot(psi));
        const double theta = std::arg(phi * std::exp(cplx(0, -tau * e.values[j])));
        p += w * std::pow(std::cos(theta / 2.0), 2.0 * static_cast<double>(r));
    }
    return p;
}

/// One filter round computed with the dense exponential.
inline Vec filter(const Mat &h, const Vec &psi, double tau, cplx phi, std::size_t r) {
    const Mat u = expm(h, tau);
    const Mat f = 0.5 * (Mat::Identity(h.rows(), h.cols()) + phi * u);
    Vec out = psi;
    for (std::size_t k = 0; k < r; ++k) {
        out = f * out;
    }
    return out;
}

inline Vec random_state(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec v(static_cast<Eigen::Index>(dim));
    for (auto &x : v) {
        x = cplx(n(rng), n(rng));
    }
    return v.normalized();
}

} // namespace oracle
