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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "twirl/manifest.hpp"
#include "twirl/report.hpp"
#include "twirl/twirl.hpp"

namespace twirl {

[[nodiscard]] std::string_view version() noexcept;

enum class OutputFormat { Text, Csv, Json };
[[nodiscard]] OutputFormat parse_format(std::string_view text);

struct RunOutcome {
    ExperimentManifest manifest;
    ProtocolResult result;
    std::vector<TargetVerdict> verdicts;
    bool prepared{false};
    std::string text;
    std::string csv;
    std::string json;

    /// No halt and every toleranced target met.
    [[nodiscard]] bool ok() const;
};

/// Runs the optional preparation, the protocol and shot sampling, then renders.
[[nodiscard]] RunOutcome execute(ExperimentManifest manifest);

/// Writes through a sibling temporary file and a rename.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

/// Writes <out>/<name>.{txt,csv,json}; no-op for an empty `out_dir`.
void write_outputs(const RunOutcome &outcome, const std::filesystem::path &out_dir);

/// Prints one format to `out`; exit code 0 iff outcome.ok().
int cmd_run(const std::filesystem::path &config, const RunOverrides &overrides,
            OutputFormat format, const std::filesystem::path &out_dir,
            std::ostream &out, std::ostream &err);

/// Runs every manifest (a directory is expanded to its *.json files)
/// concurrently, writing each manifest's outputs and a summary line.
int cmd_batch(const std::vector<std::filesystem::path> &configs,
              const RunOverrides &overrides,
              const std::filesystem::path &out_dir, std::size_t jobs,
              std::ostream &out, std::ostream &err);

/**
 * Numeric spectrum next to the closed form: eigenvalues, eigenvectors,
 * <Zbar> (3 qubits) or <Z0> for each closed-form eigenstate, and a
 * max-deviation line. Throws Error("unsupported system size") for bad n.
 */
[[nodiscard]] std::string cmd_spectrum(std::size_t n_qubits, double J,
                                       OutputFormat format);

struct TrotterScanRow {
    std::size_t steps{0};
    double error{0.0};
    /// log2(error(prev) / error(this)) scaled by log2(steps ratio); NaN on row 0.
    double order{0.0};
};

struct TrotterScan {
    std::vector<TrotterScanRow> rows;
    /// Mean of the finite per-row order estimates; NaN if none.
    double order_estimate{0.0};
};

[[nodiscard]] TrotterScan trotter_scan(const PauliSum &h, double tau,
                                       const std::vector<std::size_t> &steps);
[[nodiscard]] std::string cmd_trotter_scan(const PauliSum &h, double tau,
                                           const std::vector<std::size_t> &steps,
                                           OutputFormat format);

} // namespace twirl
