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
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "twirl/error.hpp"
#include "twirl/pauli.hpp"
#include "twirl/spectral.hpp"

using Catch::Matchers::WithinAbs;
using namespace twirl;

namespace {

double max_abs(const Eigen::MatrixXcd &m) { return m.cwiseAbs().maxCoeff(); }

PauliSum random_sum(std::size_t n, std::size_t terms, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const char axes[] = {'I', 'X', 'Y', 'Z'};
    PauliSum h(n);
    for (std::size_t k = 0; k < terms; ++k) {
        std::string label;
        for (std::size_t q = 0; q < n; ++q) {
            label += axes[rng() % 4];
        }
        h.add(coeff(rng), label);
    }
    return h;
}

const ClosedFormEigenpair &pair_named(const std::vector<ClosedFormEigenpair> &pairs,
                                      const std::string &label) {
    for (const auto &p : pairs) {
        if (p.label == label) {
            return p;
        }
    }
    FAIL("no eigenpair " << label);
    return pairs.front();
}

} // namespace

TEST_CASE("known spectra", "[spectral]") {
    const auto one = eigendecompose(schwinger_hamiltonian(1, 1.0));
    CHECK_THAT(one.eigenvalues[0], WithinAbs(-std::numbers::sqrt2, 1e-12));
    CHECK_THAT(one.eigenvalues[1], WithinAbs(std::numbers::sqrt2, 1e-12));

    const auto two = eigendecompose(schwinger_hamiltonian(2, 1.0));
    const double expect2[] = {-std::numbers::sqrt2, -1.0, 1.0, std::numbers::sqrt2};
    for (int i = 0; i < 4; ++i) {
        CHECK_THAT(two.eigenvalues[i], WithinAbs(expect2[i], 1e-12));
    }

    const auto three = eigendecompose(schwinger_hamiltonian(3, 1.0));
    const double s3 = std::sqrt(3.0);
    const double s6 = std::sqrt(6.0);
    const double expect3[] = {-1.0 - s3, -s6, 0.0, 0.0, 0.0, s3 - 1.0, 2.0, s6};
    for (int i = 0; i < 8; ++i) {
        CHECK_THAT(three.eigenvalues[i], WithinAbs(expect3[i], 1e-12));
    }

    const auto zero = eigendecompose(PauliSum(2));
    CHECK(zero.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("numeric and closed-form spectra agree", "[spectral]") {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (double J : {0.0, 0.5, 1.0, 2.0, 3.7}) {
            const auto h = schwinger_hamiltonian(n, J);
            const auto num = eigendecompose(h);
            const auto cf = closed_form_spectrum(n, J);
            REQUIRE(((num.eigenvalues - cf.eigenvalues).cwiseAbs().maxCoeff()) < 1e-10);
            for (const auto &[first, last] : num.degenerate_blocks()) {
                CHECK(max_abs(num.projector(first, last) - cf.projector(first, last)) <
                      1e-10);
            }
        }
    }
}

TEST_CASE("closed-form eigenpairs are normalized eigenvectors", "[spectral]") {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (double J : {0.0, 0.5, 1.0, 2.0, 3.7}) {
            const auto h = oracle::schwinger(n, J);
            for (const auto &p : closed_form_eigenpairs(n, J)) {
                CHECK_THAT(p.vector.norm(), WithinAbs(1.0, 1e-12));
                CHECK(((h * p.vector - p.energy * p.vector).cwiseAbs().maxCoeff()) <
                      1e-10);
            }
        }
    }
    CHECK_THAT(pair_named(closed_form_eigenpairs(3, 0.0), "E6").energy,
               WithinAbs(0.0, 1e-15));
    CHECK_THROWS_WITH(closed_form_eigenpairs(5, 1.0), "unsupported system size");
}

TEST_CASE("Zbar of the three-qubit eigenstates", "[spectral]") {
    const auto pairs = closed_form_eigenpairs(3, 1.0);
    const auto zbar = oracle::zbar();
    const auto value = [&](const char *label) {
        return oracle::expect(zbar, pair_named(pairs, label).vector);
    };
    CHECK_THAT(value("E7"), WithinAbs(-1.0 / 9.0, 1e-12));
    CHECK_THAT(value("E6"), WithinAbs(1.0 / 3.0, 1e-12));
    CHECK_THAT(value("E5"), WithinAbs(0.05157, 5e-6));
    CHECK_THAT(value("E4"), WithinAbs(5.0 / 9.0, 1e-12));
    CHECK_THAT(value("E3"), WithinAbs(1.0 / 3.0, 1e-12));
    CHECK_THAT(value("E2"), WithinAbs(-1.0 / 3.0, 1e-12));
    CHECK_THAT(value("E1"), WithinAbs(-1.0 / 9.0, 1e-12));
    CHECK_THAT(value("E0"), WithinAbs(-0.71823, 5e-6));
}

TEST_CASE("random Pauli sums reconstruct and match the reference solver",
          "[spectral]") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const auto h = random_sum(n, 2 + rng() % 6, rng);
        const auto dense = dense_matrix(h);
        const auto spec = eigendecompose(h);
        const auto ref = oracle::eig(dense);
        const auto dim = static_cast<Eigen::Index>(h.dimension());

        REQUIRE(max_abs(spec.reconstruct() - dense) < 1e-10);
        REQUIRE(max_abs(spec.eigenvectors.adjoint() * spec.eigenvectors -
                        Eigen::MatrixXcd::Identity(dim, dim)) < 1e-10);
        REQUIRE(((spec.eigenvalues - ref.values).cwiseAbs().maxCoeff()) < 1e-10);
        for (Eigen::Index i = 1; i < dim; ++i) {
            REQUIRE(spec.eigenvalues[i - 1] <= spec.eigenvalues[i]);
        }
    }
}

TEST_CASE("eigenvector phase convention and determinism", "[spectral]") {
    const auto h = schwinger_hamiltonian(3, 1.0);
    const auto a = eigendecompose(h);
    const auto b = eigendecompose(h);
    CHECK(max_abs(a.eigenvectors - b.eigenvectors) == 0.0);
    for (Eigen::Index k = 0; k < a.eigenvectors.cols(); ++k) {
        const Eigen::VectorXcd v = a.eigenvectors.col(k);
        Eigen::Index first = 0;
        while (std::abs(v[first]) <= 1e-12) {
            ++first;
        }
        CHECK(v[first].real() > 0.0);
        CHECK(std::abs(v[first].imag()) < 1e-12);
    }
    // The zero block is spanned in basis-index order: |001>-|010>-|100> first.
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (const auto &block : a.degenerate_blocks()) {
        if (block.second - block.first > 1) {
            blocks.push_back(block);
        }
    }
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0] == std::pair<std::size_t, std::size_t>{2, 5});
    CHECK(std::abs(a.eigenvectors(1, 2)) > 0.1);
}

TEST_CASE("non-Hermitian input is rejected", "[spectral]") {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 0, 0;
    CHECK_THROWS_AS(hermitian_eigensystem(m), Error);
}

TEST_CASE("exact evolution", "[spectral]") {
    const auto h3 = schwinger_hamiltonian(3, 1.0);
    const auto e2 = StateVector::basis("111");
    for (double tau : {0.3, -2.0, 17.0}) {
        CHECK(evolve_exact(e2, h3, tau).fidelity(e2) > 1.0 - 1e-12);
    }

    std::mt19937_64 rng(5);
    const StateVector psi(3, oracle::random_state(8, rng));
    CHECK(((evolve_exact(psi, h3, 0.0).amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff()) <
          1e-14);

    const auto h1 = schwinger_hamiltonian(1, 1.0);
    const auto spec1 = eigendecompose(h1);
    const StateVector u1(1, spec1.eigenvectors.col(1));
    const double tau = std::numbers::pi / 2.0;
    const Eigen::VectorXcd expect =
        std::exp(std::complex<double>(0, -tau * std::numbers::sqrt2)) * u1.amplitudes();
    CHECK(((evolve_exact(u1, h1, tau).amplitudes() - expect).cwiseAbs().maxCoeff()) < 1e-12);

    for (double t : {0.1, 1.0, -3.3}) {
        const Eigen::VectorXcd ref = oracle::expm(oracle::schwinger(3, 1.0), t) * psi.amplitudes();
        CHECK(((evolve_exact(psi, h3, t).amplitudes() - ref).cwiseAbs().maxCoeff()) < 1e-10);
    }

    CHECK_THROWS_AS(evolve_exact(StateVector::basis("00"), h3, 1.0), DimensionError);
}

TEST_CASE("overlap decomposition", "[spectral]") {
    const auto h1 = schwinger_hamiltonian(1, 1.0);
    const auto spec1 = eigendecompose(h1);
    const auto ov = overlap_decomposition(StateVector::basis("0"), spec1);
    const double s = std::numbers::sqrt2;
    CHECK_THAT(ov.weights[1], WithinAbs((s + 1) * (s + 1) / (2 * (2 + s)), 1e-12));
    CHECK_THAT(ov.weights.sum(), WithinAbs(1.0, 1e-12));

    const StateVector u0(1, spec1.eigenvectors.col(0));
    const auto pure = overlap_decomposition(u0, spec1);
    CHECK_THAT(pure.weights[0], WithinAbs(1.0, 1e-12));
    CHECK_THAT(pure.weights[1], WithinAbs(0.0, 1e-12));

    const auto cf = closed_form_spectrum(3, 1.0);
    const auto psi = StateVector::basis("001");
    const auto ov3 = overlap_decomposition(psi, cf);
    const auto pairs = closed_form_eigenpairs(3, 1.0);
    const double brute = std::norm(pair_named(pairs, "E7").vector.dot(psi.amplitudes()));
    CHECK_THAT(ov3.weights[7], WithinAbs(brute, 1e-12));
    CHECK_THAT(ov3.weights.sum(), WithinAbs(1.0, 1e-9));
}

TEST_CASE("spectrum exports", "[spectral]") {
    const auto spec = eigendecompose(schwinger_hamiltonian(1, 0.0));
    std::istringstream csv(spectrum_csv(spec));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "index,eigenvalue");
    std::vector<double> values;
    while (std::getline(csv, line)) {
        values.push_back(std::stod(line.substr(line.find(',') + 1)));
    }
    REQUIRE(values.size() == 2);
    CHECK_THAT(values[0], WithinAbs(-1.0, 1e-15));
    CHECK_THAT(values[1], WithinAbs(1.0, 1e-15));
    const auto json = spectrum_json(spec);
    CHECK(json.find("\"eigenvalues\":[") != std::string::npos);
    CHECK(json.find("\"eigenvectors\":[") != std::string::npos);
}
