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
#include <bit>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>
#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "twirl/error.hpp"
#include "twirl/manifest.hpp"
#include "twirl/sampling.hpp"

using Catch::Matchers::WithinAbs;
using namespace twirl;

namespace {

TwirlConfig one_qubit_config(std::uint64_t shots, std::uint64_t seed) {
    const auto h = schwinger_hamiltonian(1, 1.0);
    TwirlConfig c;
    for (int k = 0; k < 5; ++k) {
        c.rounds.push_back({TauMode::Quarter, std::nullopt, 1});
    }
    c.shots = shots;
    c.rng_seed = seed;
    c.config_id = fnv1a64("one-qubit");
    c.observables = {{"Z", observable_z(1, 0)}, {"H", h}};
    return c;
}

} // namespace

TEST_CASE("hashes and streams are stable", "[sampling]") {
    CHECK(fnv1a64("") == 0xCBF29CE484222325ULL);
    CHECK(fnv1a64("a") == 0xAF63DC4C8601EC8CULL);
    CHECK(mix64(0) != mix64(1));

    auto a = make_stream(42, {1, 2, 3});
    auto b = make_stream(42, {1, 2, 3});
    auto c = make_stream(42, {1, 2, 4});
    auto d = make_stream(43, {1, 2, 3});
    const auto first = a();
    CHECK(first == b());
    CHECK(first != c());
    CHECK(first != d());
}

TEST_CASE("multinomial counts", "[sampling]") {
    Eigen::VectorXd p(4);
    p << 0.1, 0.2, 0.3, 0.4;
    auto rng = make_stream(1, {});
    const std::uint64_t n = 1'000'000;
    const auto counts = sample_counts(p, n, rng);
    CHECK(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}) == n);
    for (int k = 0; k < 4; ++k) {
        const double mean = static_cast<double>(n) * p[k];
        const double sigma = std::sqrt(mean * (1.0 - p[k]));
        CHECK(std::abs(static_cast<double>(counts[static_cast<std::size_t>(k)]) - mean) <
              5.0 * sigma);
    }
    Eigen::VectorXd point = Eigen::VectorXd::Zero(4);
    point[2] = 1.0;
    const auto sure = sample_counts(point, 99, rng);
    CHECK(sure[2] == 99);
}

TEST_CASE("diagonalizing rotations", "[sampling]") {
    const double h = std::numbers::sqrt2 / 2.0;
    Eigen::VectorXcd plus(2);
    plus << h, h;
    const auto x = rotate_to_z_basis(plus, PauliTerm::parse(1.0, "X"));
    CHECK_THAT(std::norm(x[0]), WithinAbs(1.0, 1e-15));

    Eigen::VectorXcd plus_i(2);
    plus_i << h, std::complex<double>(0.0, h);
    const auto y = rotate_to_z_basis(plus_i, PauliTerm::parse(1.0, "Y"));
    CHECK_THAT(std::norm(y[0]), WithinAbs(1.0, 1e-15));

    // For any state, Z-basis parity after rotation reproduces <P>.
    std::mt19937_64 rng(4);
    const auto psi = oracle::random_state(8, rng);
    for (const char *label : {"XYZ", "YIX", "ZZI", "IYY"}) {
        const auto term = PauliTerm::parse(1.0, label);
        const Eigen::VectorXd probs = rotate_to_z_basis(psi, term).cwiseAbs2();
        std::uint64_t support = 0;
        for (int q = 0; q < 3; ++q) {
            if (label[q] != 'I') {
                support |= 1U << (2 - q);
            }
        }
        double parity = 0.0;
        for (int i = 0; i < 8; ++i) {
            parity += ((std::popcount(static_cast<unsigned>(i) & support) & 1) ? -1.0 : 1.0) *
                      probs[i];
        }
        CHECK_THAT(parity, WithinAbs(oracle::expect(oracle::pauli_string(label), psi), 1e-12));
    }
}

TEST_CASE("sampler edge cases", "[sampling]") {
    CHECK_THROWS_AS(ShotSampler(0, 1, 1), ConfigError);
    const ShotSampler sampler(1000, 7, 3);
    CHECK(sampler.thin_active(1000, 1.0, 1) == 1000);
    CHECK(sampler.thin_active(1000, 0.0, 1) == 0);
    CHECK(sampler.thin_active(0, 0.5, 1) == 0);

    const auto basis = StateVector::basis("01");
    CHECK(sampler.sample_pauli(basis, PauliTerm::parse(1.0, "ZZ"), 0, 0, 0) == -1.0);
    CHECK(sampler.sample_pauli(basis, PauliTerm::parse(1.0, "II"), 0, 0, 0) == 1.0);
    const auto est = sampler.estimate(basis, {"Z0", observable_z(2, 0)}, 0, 0);
    CHECK(est.mean == 1.0);
    CHECK(est.stddev == 0.0);
}

TEST_CASE("sampling is reproducible and order independent", "[sampling]") {
    const auto h = schwinger_hamiltonian(1, 1.0);
    const auto a = run_protocol("0", h, one_qubit_config(10'000, 5));
    const auto b = run_protocol("0", h, one_qubit_config(10'000, 5));
    const auto c = run_protocol("0", h, one_qubit_config(10'000, 6));
    bool differs = false;
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        CHECK(a.records[k].active_count == b.records[k].active_count);
        CHECK(a.records[k].estimates[0].mean == b.records[k].estimates[0].mean);
        differs = differs || a.records[k].estimates[1].mean != c.records[k].estimates[1].mean;
    }
    CHECK(differs);

    const ShotSampler sampler(10'000, 5, 9);
    const auto psi = StateVector::basis("0");
    const NamedObservable x{"X", PauliSum(1).add(1.0, "X")};
    const auto first = sampler.estimate(psi, x, 2, 1).mean;
    (void)sampler.estimate(psi, x, 2, 0);
    CHECK(sampler.estimate(psi, x, 2, 1).mean == first);
}

TEST_CASE("eigenstate input keeps every shot", "[sampling]") {
    const auto h = schwinger_hamiltonian(3, 1.0);
    TwirlConfig c;
    c.rounds.push_back({TauMode::Quarter, std::nullopt, 3});
    c.shots = 1'000'000;
    c.observables = {{"H", h}};
    const auto res = run_protocol("000", h, c);
    CHECK(res.records[1].active_count == std::optional<std::uint64_t>(1'000'000));
}

TEST_CASE("estimates are consistent with shot noise", "[sampling]") {
    const auto h = schwinger_hamiltonian(1, 1.0);
    const std::uint64_t n = 1'000'000;
    const int seeds = 20;
    const auto exact = run_protocol("0", h, one_qubit_config(n, 0));
    const std::size_t rounds = exact.records.size();

    std::vector<std::vector<double>> sum(rounds, std::vector<double>(2, 0.0));
    std::vector<double> chi2(rounds, 0.0);
    for (int s = 0; s < seeds; ++s) {
        const auto res = run_protocol("0", h, one_qubit_config(n, 1000 + s));
        for (std::size_t r = 0; r < rounds; ++r) {
            for (std::size_t k = 0; k < 2; ++k) {
                sum[r][k] += res.records[r].estimates[k].mean;
            }
            const double p = res.records[r].p_cumulative;
            if (r > 0) {
                const double mean = static_cast<double>(n) * p;
                const double z = (static_cast<double>(*res.records[r].active_count) - mean) /
                                 std::sqrt(mean * (1.0 - p));
                chi2[r] += z * z;
            }
        }
    }
    for (std::size_t r = 0; r < rounds; ++r) {
        for (std::size_t k = 0; k < 2; ++k) {
            const double avg = sum[r][k] / seeds;
            const double truth = exact.records[r].expectations[k].second;
            const double sigma = exact.records[r].estimates[k].stddev / std::sqrt(seeds);
            CHECK(std::abs(avg - truth) <= 5.0 * sigma);
        }
        if (r > 0) {
            const double p_value = boost::math::gamma_q(seeds / 2.0, chi2[r] / 2.0);
            CHECK(p_value > 0.001);
        }
    }
}

TEST_CASE("post-hoc sampling of an exact run", "[sampling]") {
    const auto h = schwinger_hamiltonian(1, 1.0);
    auto config = one_qubit_config(50'000, 3);
    auto plain = config;
    plain.shots.reset();
    auto res = run_protocol("0", h, plain);
    CHECK_FALSE(res.records[1].active_count);
    CHECK_THROWS_AS(sample_shots(res, plain), ConfigError);
    sample_shots(res, config);
    const auto direct = run_protocol("0", h, config);
    for (std::size_t r = 0; r < res.records.size(); ++r) {
        CHECK(res.records[r].active_count == direct.records[r].active_count);
        CHECK(res.records[r].estimates[1].mean == direct.records[r].estimates[1].mean);
    }
}
