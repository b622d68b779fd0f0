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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

#include "twirl/pauli.hpp"
#include "twirl/state.hpp"
#include "twirl/twirl.hpp"

namespace twirl {

/// SplitMix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a, used to turn manifest names into stream ids.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view text) noexcept;

/**
 * Derives an independent generator from (seed, ids...). Streams depend
 * only on their coordinates, never on the order in which they are drawn.
 */
[[nodiscard]] std::mt19937_64 make_stream(std::uint64_t seed,
                                          std::initializer_list<std::uint64_t> ids);

/**
 * Monte-Carlo measurement model. Each Pauli term is estimated from
 * `shots` computational-basis samples taken after the term's
 * diagonalizing rotations (H for X, S^dagger H for Y); active counts are
 * thinned binomially round by round.
 */
class ShotSampler {
  public:
    ShotSampler(std::uint64_t shots, std::uint64_t seed, std::uint64_t config_id);

    [[nodiscard]] std::uint64_t shots() const noexcept { return shots_; }

    /// Bin(previous_active, p_round) on the (round) stream.
    [[nodiscard]] std::uint64_t thin_active(std::uint64_t previous_active,
                                            double p_round,
                                            std::uint64_t round) const;

    /// Sampled <P> for one bare Pauli string.
    [[nodiscard]] double sample_pauli(const StateVector &state,
                                      const PauliTerm &term,
                                      std::uint64_t round,
                                      std::uint64_t observable,
                                      std::uint64_t term_index) const;

    [[nodiscard]] ObservableEstimate estimate(const StateVector &state,
                                              const NamedObservable &obs,
                                              std::uint64_t round,
                                              std::uint64_t observable) const;

  private:
    std::uint64_t shots_;
    std::uint64_t seed_;
    std::uint64_t config_id_;
};

/// Multinomial draw of `shots` outcomes over `probabilities`.
[[nodiscard]] std::vector<std::uint64_t>
sample_counts(const Eigen::VectorXd &probabilities, std::uint64_t shots,
              std::mt19937_64 &rng);

/// Amplitudes after rotating every non-Z axis of `term` into the Z basis.
[[nodiscard]] Eigen::VectorXcd rotate_to_z_basis(const Eigen::VectorXcd &amps,
                                                 const PauliTerm &term);

/**
 * Fills active counts and estimates of a finished exact-path result.
 * Throws ConfigError when config.shots is unset or zero.
 */
void sample_shots(ProtocolResult &result, const TwirlConfig &config);

} // namespace twirl
