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
#include "twirl/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "twirl/error.hpp"

namespace twirl {

namespace {

constexpr std::uint64_t kActiveStream = 0xAC71'0000ULL;
constexpr std::uint64_t kTermStream = 0x7E50'0000ULL;

// amps <- G amps on one qubit, G given row-major.
void apply_single(Eigen::VectorXcd &amps, std::uint64_t bit, cplx g00, cplx g01,
                  cplx g10, cplx g11) {
    const auto dim = static_cast<std::uint64_t>(amps.size());
    for (std::uint64_t x = 0; x < dim; ++x) {
        if ((x & bit) != 0) {
            continue;
        }
        const auto i0 = static_cast<Eigen::Index>(x);
        const auto i1 = static_cast<Eigen::Index>(x | bit);
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = g00 * a0 + g01 * a1;
        amps[i1] = g10 * a0 + g11 * a1;
    }
}

} // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::mt19937_64 make_stream(std::uint64_t seed,
                            std::initializer_list<std::uint64_t> ids) {
    std::uint64_t state = mix64(seed);
    for (auto id : ids) {
        state = mix64(state ^ mix64(id + 0x632BE59BD9B4E019ULL));
    }
    std::seed_seq seq{static_cast<std::uint32_t>(state),
                      static_cast<std::uint32_t>(state >> 32U),
                      static_cast<std::uint32_t>(mix64(state)),
                      static_cast<std::uint32_t>(mix64(state) >> 32U)};
    return std::mt19937_64(seq);
}

std::vector<std::uint64_t> sample_counts(const Eigen::VectorXd &probabilities,
                                         std::uint64_t shots,
                                         std::mt19937_64 &rng) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(probabilities.size()), 0);
    std::uint64_t remaining = shots;
    double mass = probabilities.sum();
    for (Eigen::Index k = 0; k < probabilities.size() && remaining > 0; ++k) {
        const double p = std::max(probabilities[k], 0.0);
        if (k == probabilities.size() - 1 || mass <= p) {
            counts[static_cast<std::size_t>(k)] = remaining;
            break;
        }
        const double conditional = std::clamp(p / mass, 0.0, 1.0);
        std::binomial_distribution<std::uint64_t> draw(remaining, conditional);
        const auto c = draw(rng);
        counts[static_cast<std::size_t>(k)] = c;
        remaining -= c;
        mass -= p;
    }
    return counts;
}

Eigen::VectorXcd rotate_to_z_basis(const Eigen::VectorXcd &amps,
                                   const PauliTerm &term) {
    const std::size_t n = term.qubits();
    if (static_cast<std::size_t>(amps.size()) != (std::size_t{1} << n)) {
        throw DimensionError("Pauli term and state dimensions differ");
    }
    const double h = std::numbers::sqrt2 / 2.0;
    const cplx minus_i{0.0, -1.0};
    Eigen::VectorXcd out = amps;
    for (std::size_t q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
        switch (term.axes[q]) {
        case PauliAxis::X:
            apply_single(out, bit, h, h, h, -h);
            break;
        case PauliAxis::Y:
            // H S^dagger
            apply_single(out, bit, h, h * minus_i, h, -h * minus_i);
            break;
        case PauliAxis::Z:
        case PauliAxis::I:
            break;
        }
    }
    return out;
}

ShotSampler::ShotSampler(std::uint64_t shots, std::uint64_t seed,
                         std::uint64_t config_id)
    : shots_(shots), seed_(seed), config_id_(config_id) {
    if (shots == 0) {
        throw ConfigError("/shots", "shots must be positive");
    }
}

std::uint64_t ShotSampler::thin_active(std::uint64_t previous_active,
                                       double p_round, std::uint64_t round) const {
    const double p = std::clamp(p_round, 0.0, 1.0);
    if (p >= 1.0 || previous_active == 0) {
        return previous_active;
    }
    auto rng = make_stream(seed_, {config_id_, kActiveStream, round});
    std::binomial_distribution<std::uint64_t> draw(previous_active, p);
    return draw(rng);
}

double ShotSampler::sample_pauli(const StateVector &state, const PauliTerm &term,
                                 std::uint64_t round, std::uint64_t observable,
                                 std::uint64_t term_index) const {
    if (term.is_identity()) {
        return 1.0;
    }
    const Eigen::VectorXd probs =
        rotate_to_z_basis(state.amplitudes(), term).cwiseAbs2();
    auto rng = make_stream(seed_, {config_id_, kTermStream, round, observable,
                                   term_index});
    const auto counts = sample_counts(probs, shots_, rng);

    std::uint64_t support = 0;
    const std::size_t n = term.qubits();
    for (std::size_t q = 0; q < n; ++q) {
        if (term.axes[q] != PauliAxis::I) {
            support |= std::uint64_t{1} << (n - 1 - q);
        }
    }
    std::int64_t signed_total = 0;
    for (std::size_t x = 0; x < counts.size(); ++x) {
        const auto c = static_cast<std::int64_t>(counts[x]);
        signed_total += (std::popcount(x & support) & 1U) ? -c : c;
    }
    return static_cast<double>(signed_total) / static_cast<double>(shots_);
}

ObservableEstimate ShotSampler::estimate(const StateVector &state,
                                         const NamedObservable &obs,
                                         std::uint64_t round,
                                         std::uint64_t observable) const {
    ObservableEstimate out;
    out.name = obs.name;
    double variance = 0.0;
    const auto &terms = obs.op.terms();
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const auto &term = terms[k];
        out.mean += term.coeff * sample_pauli(state, term, round, observable, k);
        if (!term.is_identity()) {
            const double exact =
                pauli_expectation(state.amplitudes(), PauliMask::of(term));
            variance += term.coeff * term.coeff *
                        std::max(0.0, 1.0 - exact * exact) /
                        static_cast<double>(shots_);
        }
    }
    out.stddev = std::sqrt(variance);
    return out;
}

void sample_shots(ProtocolResult &result, const TwirlConfig &config) {
    if (!config.shots || *config.shots == 0) {
        throw ConfigError("/shots", "shots must be set and positive to sample");
    }
    const ShotSampler sampler(*config.shots, config.rng_seed, config.config_id);
    std::uint64_t active = sampler.shots();
    for (std::size_t r = 0; r < result.records.size(); ++r) {
        auto &record = result.records[r];
        if (r > 0) {
            active = sampler.thin_active(active, record.p_round, record.round);
        }
        record.active_count = active;
        record.estimates.clear();
        for (std::size_t k = 0; k < config.observables.size(); ++k) {
            record.estimates.push_back(sampler.estimate(
                result.states[r], config.observables[k], record.round, k));
        }
    }
}

} // namespace twirl
