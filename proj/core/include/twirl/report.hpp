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

#include <optional>
#include <string>
#include <vector>

#include "twirl/manifest.hpp"
#include "twirl/twirl.hpp"

namespace twirl {

struct TargetVerdict {
    std::string observable;
    double expected{0.0};
    double actual{0.0};
    std::optional<double> tolerance;
    bool pass{true};
};

/// Everything a report needs besides the records.
struct RunReport {
    const ExperimentManifest *manifest{nullptr};
    const ProtocolResult *result{nullptr};
    std::vector<TargetVerdict> verdicts;
    bool prepared{false};
};

/// Aligned table: observables x rounds, active-state row, theoretical column.
[[nodiscard]] std::string render_text(const RunReport &report);
/// '#'-prefixed metadata lines, then round,E_used,tau,p_round,p_cum,active_count,<obs...>
[[nodiscard]] std::string render_csv(const RunReport &report);
[[nodiscard]] std::string render_json(const RunReport &report);

/// Fixed-point with `digits` decimals; "-" for empty.
[[nodiscard]] std::string format_fixed(double value, int digits = 6);

} // namespace twirl
