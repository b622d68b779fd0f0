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

#include <numbers>

#include <benchmark/benchmark.h>

#include "twirl/adiabatic.hpp"
#include "twirl/manifest.hpp"
#include "twirl/spectral.hpp"
#include "twirl/trotter.hpp"
#include "twirl/twirl.hpp"

namespace {

using namespace twirl;

void BM_Eigendecompose(benchmark::State &state) {
    const auto h = schwinger_hamiltonian(static_cast<std::size_t>(state.range(0)), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigendecompose(h));
    }
}
BENCHMARK(BM_Eigendecompose)->DenseRange(1, 3);

void BM_TrotterEvolve(benchmark::State &state) {
    const auto h = schwinger_hamiltonian(3, 1.0);
    const auto psi = StateVector::basis("101");
    const auto steps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_trotter(psi, h, std::numbers::pi / 2.0, steps));
    }
}
BENCHMARK(BM_TrotterEvolve)->RangeMultiplier(4)->Range(16, 1024);

void BM_TwirlRound(benchmark::State &state) {
    const auto h = schwinger_hamiltonian(3, 1.0);
    const Evolver evolver(h, ExactBackend{});
    const auto psi = StateVector::basis("101");
    const auto choice = choose_tau(-2.73205, TauMode::Quarter);
    for (auto _ : state) {
        benchmark::DoNotOptimize(twirl_round(psi, evolver, choice.tau, choice.prefactor, 3));
    }
}
BENCHMARK(BM_TwirlRound);

void BM_Protocol(benchmark::State &state) {
    const auto h = schwinger_hamiltonian(3, 1.0);
    TwirlConfig config;
    config.observables = {{"Zbar", resolve_observable("Zbar", h)}, {"H", h}};
    config.rounds.assign(4, RoundSpec{TauMode::Quarter, std::nullopt, 3});
    if (state.range(0) > 0) {
        config.shots = static_cast<std::uint64_t>(state.range(0));
        config.rng_seed = 1;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_protocol("101", h, config));
    }
}
BENCHMARK(BM_Protocol)->Arg(0)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_AdiabaticPrepare(benchmark::State &state) {
    const auto h = schwinger_hamiltonian(3, 1.0);
    const auto h0 = alternating_field(3);
    const auto psi = StateVector::basis("101");
    for (auto _ : state) {
        benchmark::DoNotOptimize(adiabatic_prepare(h0, h, AdiabaticSchedule{}, psi));
    }
}
BENCHMARK(BM_AdiabaticPrepare)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
