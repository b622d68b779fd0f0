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
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "twirl/error.hpp"
#include "twirl/manifest.hpp"
#include "twirl/runner.hpp"

namespace {

constexpr std::uint64_t kPaperShots = 10'000'000;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    bool paper_shots{false};
    std::string backend;
    std::string prepare;

    void attach(CLI::App *cmd) {
        cmd->add_option("--seed", seed, "RNG seed (overrides the manifest)");
        auto *shots_opt =
            cmd->add_option("--shots", shots, "shots per Pauli term")->check(CLI::PositiveNumber);
        cmd->add_flag("--paper-shots", paper_shots, "sample with 10^7 shots")
            ->excludes(shots_opt);
        cmd->add_option("--backend", backend, "exact | trotter | trotter:N");
        cmd->add_option("--prepare", prepare,
                        "adiabatic[:T=20,steps=400,backend=exact] prelude");
    }

    [[nodiscard]] twirl::RunOverrides resolve() const {
        twirl::RunOverrides out;
        out.seed = seed;
        out.shots = paper_shots ? std::optional<std::uint64_t>(kPaperShots) : shots;
        if (!backend.empty()) {
            try {
                out.backend = twirl::parse_backend(backend);
            } catch (const twirl::ConfigError &) {
                throw;
            } catch (const twirl::Error &e) {
                throw twirl::ConfigError("--backend", e.what());
            }
        }
        if (!prepare.empty()) {
            out.prepare = twirl::parse_prepare_flag(prepare);
        }
        return out;
    }
};

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Iterated energy-filter twirling on Pauli-string Hamiltonians"};
    app.set_version_flag("--version", std::string(twirl::version()));
    app.require_subcommand(1);

    std::string format = "text";
    auto add_format = [&format](CLI::App *cmd) {
        cmd->add_option("--format", format, "text | csv | json")
            ->check(CLI::IsMember({"text", "csv", "json"}));
    };

    std::size_t qubits = 3;
    double J = 1.0;

    auto *spectrum = app.add_subcommand("spectrum", "numeric and closed-form spectrum");
    spectrum->add_option("--qubits,-n", qubits, "system size (1, 2 or 3)");
    spectrum->add_option("--J", J, "coupling");
    add_format(spectrum);

    std::string config;
    std::string out_dir;
    Overrides overrides;
    auto *run = app.add_subcommand("run", "run one manifest");
    run->add_option("--config,-c", config, "manifest path")->required()->check(
        CLI::ExistingFile);
    run->add_option("--out,-o", out_dir, "directory for .txt/.csv/.json outputs");
    overrides.attach(run);
    add_format(run);

    std::string hamiltonian;
    double tau = std::numbers::pi / 2.0;
    std::vector<std::size_t> steps{8, 16, 32, 64};
    auto *scan = app.add_subcommand("trotter-scan", "Trotter error versus step count");
    scan->add_option("--qubits,-n", qubits, "system size (1, 2 or 3)");
    scan->add_option("--J", J, "coupling");
    scan->add_option("--hamiltonian", hamiltonian, "builder name, e.g. schwinger-2q");
    scan->add_option("--tau", tau, "evolution time");
    scan->add_option("--steps", steps, "step counts")->delimiter(',')->check(
        CLI::PositiveNumber);
    add_format(scan);

    std::vector<std::string> configs;
    std::size_t jobs = 0;
    auto *batch = app.add_subcommand("batch", "run several manifests concurrently");
    batch->add_option("configs,--config", configs, "manifest paths")
        ->required()
        ->check(CLI::ExistingFile);
    batch->add_option("--out,-o", out_dir, "directory for outputs");
    batch->add_option("--jobs,-j", jobs, "concurrent manifests (0 = hardware)");
    overrides.attach(batch);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto fmt = twirl::parse_format(format);
        if (*spectrum) {
            std::cout << twirl::cmd_spectrum(qubits, J, fmt);
            return 0;
        }
        if (*scan) {
            const auto h = hamiltonian.empty()
                               ? twirl::schwinger_hamiltonian(qubits, J)
                               : twirl::hamiltonian_by_name(hamiltonian, J);
            std::cout << twirl::cmd_trotter_scan(h, tau, steps, fmt);
            return 0;
        }
        if (*run) {
            return twirl::cmd_run(config, overrides.resolve(), fmt, out_dir, std::cout,
                                  std::cerr);
        }
        std::vector<std::filesystem::path> paths(configs.begin(), configs.end());
        return twirl::cmd_batch(paths, overrides.resolve(), out_dir, jobs, std::cout,
                                std::cerr);
    } catch (const twirl::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
