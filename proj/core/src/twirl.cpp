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
#include "twirl/twirl.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "twirl/error.hpp"
#include "twirl/sampling.hpp"
#include "twirl/trotter.hpp"

namespace twirl {

namespace {

constexpr std::uint64_t kEnergyStream = 0xE0E0E0E0ULL;

struct Overloaded {
    std::size_t operator()(const ExactBackend &) const noexcept { return 0; }
    std::size_t operator()(const TrotterBackend &b) const noexcept {
        return b.steps;
    }
};

std::string describe_energy(double energy) {
    std::ostringstream out;
    out.precision(3);
    out << energy;
    return out.str();
}

} // namespace

std::string_view to_string(TauMode mode) noexcept {
    return mode == TauMode::Quarter ? "quarter" : "full";
}

TauMode parse_tau_mode(std::string_view text) {
    if (text == "quarter") {
        return TauMode::Quarter;
    }
    if (text == "full") {
        return TauMode::Full;
    }
    throw Error("tau mode must be \"quarter\" or \"full\", got \"" +
                std::string(text) + "\"");
}

Backend parse_backend(std::string_view text) {
    if (text == "exact") {
        return ExactBackend{};
    }
    if (text == "trotter") {
        return TrotterBackend{};
    }
    constexpr std::string_view prefix = "trotter:";
    if (text.substr(0, prefix.size()) == prefix) {
        const auto digits = text.substr(prefix.size());
        std::size_t steps = 0;
        const auto [end, ec] =
            std::from_chars(digits.data(), digits.data() + digits.size(), steps);
        if (ec == std::errc{} && end == digits.data() + digits.size() && steps > 0) {
            return TrotterBackend{steps};
        }
    }
    throw Error("backend must be \"exact\" or \"trotter:N\" with N >= 1, got \"" +
                std::string(text) + "\"");
}

std::string to_string(const Backend &backend) {
    const auto steps = trotter_steps(backend);
    return steps == 0 ? "exact" : "trotter:" + std::to_string(steps);
}

std::size_t trotter_steps(const Backend &backend) noexcept {
    return std::visit(Overloaded{}, backend);
}

void RoundSpec::validate() const {
    if (energy_override &&
        (!std::isfinite(*energy_override) || *energy_override == 0.0)) {
        throw ConfigError("", "energy override must be finite and nonzero");
    }
    if (ancillas == 0) {
        throw ConfigError("", "ancillas per round must be at least 1");
    }
}

std::optional<double> RoundRecord::expectation(std::string_view name) const {
    for (const auto &[key, value] : expectations) {
        if (key == name) {
            return value;
        }
    }
    return std::nullopt;
}

double PhaseProfile::survival(std::size_t ancillas) const {
    double total = 0.0;
    for (Eigen::Index j = 0; j < angles.size(); ++j) {
        const double c2 = std::pow(std::cos(0.5 * angles[j]), 2);
        total += weights[j] * std::pow(c2, static_cast<double>(ancillas));
    }
    return total;
}

TauChoice choose_tau(double energy, TauMode mode) {
    if (!std::isfinite(energy)) {
        throw Error("energy must be finite");
    }
    if (std::abs(energy) < kZeroEnergyThreshold) {
        throw ZeroEnergyError("zero energy requires override");
    }
    if (mode == TauMode::Quarter) {
        return {std::numbers::pi / (2.0 * energy), {0.0, 1.0}};
    }
    return {2.0 * std::numbers::pi / energy, {1.0, 0.0}};
}

Evolver::Evolver(const PauliSum &h, const Backend &backend)
    : Evolver(h, backend,
              std::holds_alternative<ExactBackend>(backend)
                  ? std::make_shared<const SpectralDecomposition>(eigendecompose(h))
                  : nullptr) {}

Evolver::Evolver(const PauliSum &h, const Backend &backend,
                 std::shared_ptr<const SpectralDecomposition> spectrum)
    : h_(h), backend_(backend), spectrum_(std::move(spectrum)) {
    if (std::holds_alternative<ExactBackend>(backend_) && !spectrum_) {
        spectrum_ = std::make_shared<const SpectralDecomposition>(eigendecompose(h_));
    }
}

Eigen::VectorXcd Evolver::apply(const Eigen::VectorXcd &amps, double tau) const {
    if (const auto *trotter = std::get_if<TrotterBackend>(&backend_)) {
        return evolve_trotter_raw(amps, h_, tau, trotter->steps);
    }
    return evolve_exact_raw(amps, *spectrum_, tau);
}

TwirlOutcome twirl_round(const StateVector &state, const Evolver &evolver,
                         double tau, std::complex<double> prefactor,
                         std::size_t ancillas) {
    if (std::abs(std::abs(prefactor) - 1.0) > 1e-12) {
        throw Error("twirl prefactor must have unit modulus");
    }
    if (ancillas == 0) {
        throw Error("ancillas per round must be at least 1");
    }
    if (!std::isfinite(tau)) {
        throw Error("twirl time must be finite");
    }
    if (state.qubits() != evolver.hamiltonian().qubits()) {
        throw DimensionError("state and Hamiltonian qubit counts differ");
    }
    Eigen::VectorXcd psi = state.amplitudes();
    for (std::size_t k = 0; k < ancillas; ++k) {
        psi = 0.5 * (psi + prefactor * evolver.apply(psi, tau));
    }
    const double p = psi.squaredNorm();
    if (!(p >= kExtinctionFloor)) {
        throw ExtinguishedError("post-selection extinguished");
    }
    return {StateVector::normalized(state.qubits(), std::move(psi)),
            std::min(p, 1.0)};
}

TwirlOutcome twirl_round(const StateVector &state, const PauliSum &h,
                         double tau, std::complex<double> prefactor,
                         std::size_t ancillas, const Backend &backend) {
    return twirl_round(state, Evolver(h, backend), tau, prefactor, ancillas);
}

PhaseProfile phase_profile(const StateVector &state, const PauliSum &h,
                           double tau, std::complex<double> prefactor) {
    const auto spec = eigendecompose(h);
    const auto overlap = overlap_decomposition(state, spec);
    PhaseProfile profile;
    profile.weights = overlap.weights;
    profile.angles.resize(spec.eigenvalues.size());
    for (Eigen::Index j = 0; j < spec.eigenvalues.size(); ++j) {
        double theta =
            std::arg(prefactor * std::polar(1.0, -tau * spec.eigenvalues[j]));
        if (theta <= -std::numbers::pi) {
            theta = std::numbers::pi;
        }
        profile.angles[j] = theta;
    }
    return profile;
}

ProtocolResult run_protocol(const StateVector &initial, const PauliSum &h,
                            const TwirlConfig &config) {
    if (initial.qubits() != h.qubits()) {
        throw DimensionError("initial state has " +
                             std::to_string(initial.qubits()) +
                             " qubits, Hamiltonian has " +
                             std::to_string(h.qubits()));
    }
    for (const auto &obs : config.observables) {
        if (obs.op.qubits() != h.qubits()) {
            throw DimensionError("observable '" + obs.name +
                                 "' does not match the Hamiltonian's qubit count");
        }
    }
    for (const auto &round : config.rounds) {
        round.validate();
    }
    std::optional<ShotSampler> sampler;
    if (config.shots) {
        if (*config.shots == 0) {
            throw ConfigError("/shots", "shots must be positive");
        }
        sampler.emplace(*config.shots, config.rng_seed, config.config_id);
    }

    const Evolver evolver(h, config.backend);
    const NamedObservable energy_observable{"H", h};

    auto measure = [&](RoundRecord &record, const StateVector &state) {
        for (std::size_t k = 0; k < config.observables.size(); ++k) {
            const auto &obs = config.observables[k];
            record.expectations.emplace_back(obs.name, expectation(state, obs.op));
            if (sampler) {
                record.estimates.push_back(
                    sampler->estimate(state, obs, record.round, k));
            }
        }
    };

    ProtocolResult result;
    RoundRecord first;
    first.round = 0;
    if (sampler) {
        first.active_count = sampler->shots();
    }
    measure(first, initial);
    result.records.push_back(std::move(first));
    result.states.push_back(initial);

    for (std::size_t i = 0; i < config.rounds.size(); ++i) {
        const auto &spec = config.rounds[i];
        const std::size_t round = i + 1;
        const StateVector &state = result.states.back();

        double energy = 0.0;
        if (spec.energy_override) {
            energy = *spec.energy_override;
        } else if (sampler && config.energy_estimator == EnergyEstimator::Sampled) {
            energy = sampler->estimate(state, energy_observable, round, kEnergyStream)
                         .mean;
        } else {
            energy = expectation(state, h);
        }

        TauChoice choice;
        try {
            choice = choose_tau(energy, spec.mode);
        } catch (const ZeroEnergyError &) {
            result.halt = ProtocolHalt{
                round, "round " + std::to_string(round) + ": <H> = " +
                           describe_energy(energy) +
                           " is zero; zero energy requires override. Set "
                           "\"E_override\" to a nonzero energy and use mode "
                           "\"full\" (tau = 2*pi/E, e^{-2 pi i} = 1)"};
            break;
        }

        TwirlOutcome outcome{state, 0.0};
        try {
            outcome = twirl_round(state, evolver, choice.tau, choice.prefactor,
                                  spec.ancillas);
        } catch (const ExtinguishedError &) {
            result.halt = ProtocolHalt{
                round, "round " + std::to_string(round) +
                           ": post-selection extinguished (p < 1e-14)"};
            break;
        }

        const auto &previous = result.records.back();
        RoundRecord record;
        record.round = round;
        record.energy_used = energy;
        record.energy_overridden = spec.energy_override.has_value();
        record.mode = spec.mode;
        record.tau = choice.tau;
        record.prefactor = choice.prefactor;
        record.ancillas = spec.ancillas;
        record.p_round = outcome.p_round;
        record.p_cumulative = previous.p_cumulative * outcome.p_round;
        if (sampler) {
            record.active_count = sampler->thin_active(
                previous.active_count.value_or(sampler->shots()), outcome.p_round,
                round);
        }
        measure(record, outcome.posterior);
        result.records.push_back(std::move(record));
        result.states.push_back(std::move(outcome.posterior));
    }
    return result;
}

ProtocolResult run_protocol(std::string_view initial_label, const PauliSum &h,
                            const TwirlConfig &config) {
    return run_protocol(StateVector::basis(initial_label), h, config);
}

} // namespace twirl
