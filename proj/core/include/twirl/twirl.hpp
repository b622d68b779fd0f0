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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "twirl/pauli.hpp"
#include "twirl/spectral.hpp"
#include "twirl/state.hpp"

namespace twirl {

/// Default Trotter depth per twirl application.
inline constexpr std::size_t kDefaultTrotterSteps = 64;

/// |E| below this counts as zero energy when choosing tau.
inline constexpr double kZeroEnergyThreshold = 1e-12;

/// Post-selection probability below this extinguishes the run.
inline constexpr double kExtinctionFloor = 1e-14;

/**
 * Quarter: tau = pi/(2E), prefactor i, so i e^{-i pi/2} = 1 on the target.
 * Full:    tau = 2pi/E, prefactor 1, so e^{-2 pi i} = 1 on the target.
 */
enum class TauMode { Quarter, Full };

[[nodiscard]] std::string_view to_string(TauMode mode) noexcept;
[[nodiscard]] TauMode parse_tau_mode(std::string_view text);

struct ExactBackend {};
struct TrotterBackend {
    std::size_t steps{kDefaultTrotterSteps};
};
using Backend = std::variant<ExactBackend, TrotterBackend>;

/// "exact" or "trotter:N" (bare "trotter" means N = 64).
[[nodiscard]] Backend parse_backend(std::string_view text);
[[nodiscard]] std::string to_string(const Backend &backend);
/// 0 for the exact backend.
[[nodiscard]] std::size_t trotter_steps(const Backend &backend) noexcept;

struct RoundSpec {
    TauMode mode{TauMode::Quarter};
    std::optional<double> energy_override;
    std::size_t ancillas{1};

    /// Throws ConfigError on a zero/non-finite override or zero ancillas.
    void validate() const;
};

/// How the energy that schedules tau is obtained in shots mode.
enum class EnergyEstimator { Exact, Sampled };

struct NamedObservable {
    std::string name;
    PauliSum op;
};

struct TwirlConfig {
    std::vector<RoundSpec> rounds;
    Backend backend{ExactBackend{}};
    std::optional<std::uint64_t> shots;
    std::uint64_t rng_seed{0};
    /// Stream id mixed into every RNG stream; batch runs use a name hash.
    std::uint64_t config_id{0};
    EnergyEstimator energy_estimator{EnergyEstimator::Exact};
    std::vector<NamedObservable> observables;
};

struct ObservableEstimate {
    std::string name;
    double mean{0.0};
    /// Propagated one-sigma shot error, sqrt(sum_k c_k^2 (1 - <P_k>^2) / n).
    double stddev{0.0};
};

struct RoundRecord {
    std::size_t round{0};
    std::optional<double> energy_used;
    bool energy_overridden{false};
    std::optional<TauMode> mode;
    double tau{0.0};
    std::complex<double> prefactor{1.0, 0.0};
    std::size_t ancillas{0};
    double p_round{1.0};
    double p_cumulative{1.0};
    std::optional<std::uint64_t> active_count;
    std::vector<std::pair<std::string, double>> expectations;
    std::vector<ObservableEstimate> estimates;

    [[nodiscard]] std::optional<double> expectation(std::string_view name) const;
};

struct PhaseProfile {
    Eigen::VectorXd angles;
    Eigen::VectorXd weights;

    /// sum_j w_j cos^{2r}(theta_j / 2)
    [[nodiscard]] double survival(std::size_t ancillas = 1) const;
};

struct TauChoice {
    double tau{0.0};
    std::complex<double> prefactor{1.0, 0.0};
};

/// Throws ZeroEnergyError("zero energy requires override") for |E| < 1e-12.
[[nodiscard]] TauChoice choose_tau(double energy, TauMode mode);

/**
 * Applies e^{-i tau H} for one backend. The exact form reuses a cached
 * eigensystem; the Trotter form replays the product formula.
 */
class Evolver {
  public:
    Evolver(const PauliSum &h, const Backend &backend);
    Evolver(const PauliSum &h, const Backend &backend,
            std::shared_ptr<const SpectralDecomposition> spectrum);

    [[nodiscard]] Eigen::VectorXcd apply(const Eigen::VectorXcd &amps,
                                         double tau) const;
    [[nodiscard]] const PauliSum &hamiltonian() const noexcept { return h_; }
    [[nodiscard]] const Backend &backend() const noexcept { return backend_; }

  private:
    PauliSum h_;
    Backend backend_;
    std::shared_ptr<const SpectralDecomposition> spectrum_;
};

struct TwirlOutcome {
    StateVector posterior;
    double p_round{0.0};
};

/**
 * One twirling operation with `ancillas` single-qubit ancillas, each run
 * through H - controlled(phi U(tau)) - H and post-selected on |0>:
 *   psi' = [(I + phi U) / 2]^r psi,  p = ||psi'||^2,  posterior = psi'/sqrt(p).
 * Throws ExtinguishedError("post-selection extinguished") if p < 1e-14.
 */
[[nodiscard]] TwirlOutcome twirl_round(const StateVector &state,
                                       const Evolver &evolver, double tau,
                                       std::complex<double> prefactor,
                                       std::size_t ancillas);
[[nodiscard]] TwirlOutcome twirl_round(const StateVector &state,
                                       const PauliSum &h, double tau,
                                       std::complex<double> prefactor,
                                       std::size_t ancillas,
                                       const Backend &backend);

/// theta_j = arg(phi e^{-i tau e_j}) in (-pi, pi], weights from the overlap.
[[nodiscard]] PhaseProfile phase_profile(const StateVector &state,
                                         const PauliSum &h, double tau,
                                         std::complex<double> prefactor);

struct ProtocolHalt {
    std::size_t round{0};
    std::string message;
};

struct ProtocolResult {
    /// Round 0 (measurement only) followed by one record per twirl.
    std::vector<RoundRecord> records;
    /// Post-selected state after each recorded round.
    std::vector<StateVector> states;
    /// Set when a round could not run; records stop before it.
    std::optional<ProtocolHalt> halt;

    [[nodiscard]] const StateVector &final_state() const {
        return states.back();
    }
};

/**
 * Iterated twirling. Round i uses the override if present, otherwise the
 * current <H>. Zero energy without an override, or an extinguished
 * post-selection, stops the run and fills `halt`.
 */
[[nodiscard]] ProtocolResult run_protocol(const StateVector &initial,
                                          const PauliSum &h,
                                          const TwirlConfig &config);
[[nodiscard]] ProtocolResult run_protocol(std::string_view initial_label,
                                          const PauliSum &h,
                                          const TwirlConfig &config);

} // namespace twirl
