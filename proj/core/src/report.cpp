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
#include "twirl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "twirl/runner.hpp"

namespace twirl {

namespace {

using ojson = nlohmann::ordered_json;

std::string format_g(double value, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

std::string format_csv(double value) {
    return format_g(value, 12);
}

std::string round_label(const RoundRecord &r, bool prepared) {
    if (r.round == 0) {
        return prepared ? "adiabatic" : "0";
    }
    return std::to_string(r.round) + "(E=" + format_g(*r.energy_used) + ")";
}

std::optional<double> target_for(const ExperimentManifest &m, const std::string &name) {
    for (const auto &t : m.expected) {
        if (t.observable == name) {
            return t.value;
        }
    }
    return std::nullopt;
}

const ObservableEstimate *estimate_for(const RoundRecord &r, const std::string &name) {
    for (const auto &e : r.estimates) {
        if (e.name == name) {
            return &e;
        }
    }
    return nullptr;
}

std::string shot_note(const TwirlConfig &config) {
    if (!config.shots) {
        return "exact expectations only; no shot sampling";
    }
    return "each Pauli term estimated from " + std::to_string(*config.shots) +
           " shots per round; sampled values scatter by roughly 1/sqrt(shots)";
}

/// Plain grid with a left-aligned first column and right-aligned cells.
class Table {
  public:
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    [[nodiscard]] std::string str() const {
        std::vector<std::size_t> width;
        for (const auto &row : rows_) {
            width.resize(std::max(width.size(), row.size()), 0);
            for (std::size_t c = 0; c < row.size(); ++c) {
                width[c] = std::max(width[c], row[c].size());
            }
        }
        std::string out;
        for (const auto &row : rows_) {
            std::string line;
            for (std::size_t c = 0; c < row.size(); ++c) {
                const auto pad = std::string(width[c] - row[c].size(), ' ');
                line += c == 0 ? row[c] + pad : "  " + pad + row[c];
            }
            while (!line.empty() && line.back() == ' ') {
                line.pop_back();
            }
            out += line + '\n';
        }
        return out;
    }

  private:
    std::vector<std::vector<std::string>> rows_;
};

} // namespace

std::string format_fixed(double value, int digits) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    std::string s = buf;
    // Avoid printing "-0.000000".
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') {
        s.erase(0, 1);
    }
    return s;
}

std::string render_text(const RunReport &report) {
    const auto &m = *report.manifest;
    const auto &res = *report.result;
    const bool sampled = m.config.shots.has_value();
    const bool has_targets = !m.expected.empty();

    std::ostringstream out;
    out << m.name;
    if (!m.description.empty()) {
        out << " - " << m.description;
    }
    out << '\n';
    out << "hamiltonian " << m.hamiltonian_label;
    if (m.hamiltonian_label != "custom") {
        out << " (J=" << format_g(m.J) << ")";
    }
    out << "  terms " << m.hamiltonian.term_order() << '\n';
    out << "initial |" << m.initial << ">";
    if (report.prepared) {
        out << " prepared adiabatically (T=" << format_g(m.prepare->schedule.total_time)
            << ", steps=" << m.prepare->schedule.steps << ")";
    }
    out << "  backend " << to_string(m.config.backend) << "  seed "
        << m.config.rng_seed;
    if (sampled) {
        out << "  shots " << *m.config.shots;
    }
    out << "\n\n";

    Table table;
    std::vector<std::string> header{"round"};
    for (const auto &r : res.records) {
        header.push_back(round_label(r, report.prepared));
    }
    if (has_targets) {
        header.emplace_back("theoretical");
    }
    table.add(header);

    auto detail_row = [&](const std::string &name, auto &&cell) {
        std::vector<std::string> row{name};
        for (const auto &r : res.records) {
            row.push_back(r.round == 0 ? "-" : cell(r));
        }
        table.add(std::move(row));
    };
    detail_row("mode", [](const RoundRecord &r) {
        return std::string(to_string(*r.mode)) + "/" + std::to_string(r.ancillas);
    });
    detail_row("tau", [](const RoundRecord &r) { return format_fixed(r.tau); });
    detail_row("p_round", [](const RoundRecord &r) { return format_fixed(r.p_round); });
    detail_row("p_cum", [](const RoundRecord &r) { return format_fixed(r.p_cumulative); });

    for (const auto &obs : m.config.observables) {
        std::vector<std::string> row{"<" + obs.name + ">"};
        for (const auto &r : res.records) {
            row.push_back(format_fixed(r.expectation(obs.name).value_or(NAN)));
        }
        if (has_targets) {
            const auto t = target_for(m, obs.name);
            row.push_back(t ? format_fixed(*t) : "");
        }
        table.add(std::move(row));
    }
    if (sampled) {
        for (const auto &obs : m.config.observables) {
            std::vector<std::string> row{"<" + obs.name + "> sampled"};
            for (const auto &r : res.records) {
                const auto *e = estimate_for(r, obs.name);
                row.push_back(e ? format_fixed(e->mean) : "");
            }
            table.add(std::move(row));
        }
        std::vector<std::string> row{"active state"};
        for (const auto &r : res.records) {
            row.push_back(r.active_count ? std::to_string(*r.active_count) : "");
        }
        table.add(std::move(row));
    }
    out << table.str();

    if (res.halt) {
        out << "\nhalted: " << res.halt->message << '\n';
    }
    if (!report.verdicts.empty()) {
        out << "\ntargets (final round)\n";
        Table targets;
        for (const auto &v : report.verdicts) {
            std::string status = "info";
            if (v.tolerance) {
                status = v.pass ? "PASS" : res.halt ? "FAIL (halted)" : "FAIL";
            }
            targets.add({v.observable, "expected", format_fixed(v.expected), "actual",
                         format_fixed(v.actual), "tol",
                         v.tolerance ? format_g(*v.tolerance) : "-", status});
        }
        out << targets.str();
    }
    if (!m.notes.empty()) {
        out << "\nnotes\n";
        for (const auto &note : m.notes) {
            out << "  " << note << '\n';
        }
    }
    return out.str();
}

std::string render_csv(const RunReport &report) {
    const auto &m = *report.manifest;
    const auto &res = *report.result;
    const bool sampled = m.config.shots.has_value();

    std::ostringstream out;
    out << "# name=" << m.name << '\n';
    out << "# version=" << version() << '\n';
    out << "# hamiltonian=" << m.hamiltonian_label << '\n';
    out << "# J=" << format_csv(m.J) << '\n';
    out << "# term_order=" << m.hamiltonian.term_order() << '\n';
    out << "# initial=" << m.initial << '\n';
    out << "# prepared=" << (report.prepared ? "adiabatic" : "none") << '\n';
    out << "# backend=" << to_string(m.config.backend) << '\n';
    out << "# seed=" << m.config.rng_seed << '\n';
    out << "# shots=" << (sampled ? std::to_string(*m.config.shots) : "none") << '\n';
    if (res.halt) {
        out << "# halted=" << res.halt->message << '\n';
    }

    out << "round,E_used,tau,p_round,p_cum,active_count";
    for (const auto &obs : m.config.observables) {
        out << ',' << obs.name;
    }
    if (sampled) {
        for (const auto &obs : m.config.observables) {
            out << ',' << obs.name << "_sampled," << obs.name << "_stddev";
        }
    }
    out << '\n';

    for (const auto &r : res.records) {
        out << r.round << ',' << (r.energy_used ? format_csv(*r.energy_used) : "")
            << ',' << format_csv(r.tau) << ',' << format_csv(r.p_round) << ','
            << format_csv(r.p_cumulative) << ','
            << (r.active_count ? std::to_string(*r.active_count) : "");
        for (const auto &obs : m.config.observables) {
            out << ',' << format_csv(r.expectation(obs.name).value_or(NAN));
        }
        if (sampled) {
            for (const auto &obs : m.config.observables) {
                const auto *e = estimate_for(r, obs.name);
                out << ',' << (e ? format_csv(e->mean) : "") << ','
                    << (e ? format_csv(e->stddev) : "");
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render_json(const RunReport &report) {
    const auto &m = *report.manifest;
    const auto &res = *report.result;

    ojson meta;
    meta["name"] = m.name;
    meta["description"] = m.description;
    meta["version"] = std::string(version());
    meta["hamiltonian"] = m.hamiltonian_label;
    meta["J"] = m.J;
    meta["n_qubits"] = m.hamiltonian.qubits();
    meta["term_order"] = m.hamiltonian.term_order();
    meta["initial"] = m.initial;
    if (report.prepared) {
        meta["prepare"] = {{"T", m.prepare->schedule.total_time},
                           {"steps", m.prepare->schedule.steps},
                           {"backend", to_string(m.prepare->backend)}};
    } else {
        meta["prepare"] = nullptr;
    }
    meta["backend"] = to_string(m.config.backend);
    const auto steps = trotter_steps(m.config.backend);
    meta["trotter_steps"] = steps == 0 ? ojson(nullptr) : ojson(steps);
    meta["seed"] = m.config.rng_seed;
    meta["config_id"] = m.config.config_id;
    meta["shots"] = m.config.shots ? ojson(*m.config.shots) : ojson(nullptr);
    meta["energy_estimator"] =
        m.config.energy_estimator == EnergyEstimator::Exact ? "exact" : "sampled";
    meta["shot_budget"] = shot_note(m.config);
    meta["notes"] = m.notes;

    ojson rounds = ojson::array();
    for (const auto &r : res.records) {
        ojson row;
        row["round"] = r.round;
        row["label"] = round_label(r, report.prepared);
        row["E_used"] = r.energy_used ? ojson(*r.energy_used) : ojson(nullptr);
        row["E_overridden"] = r.energy_overridden;
        row["mode"] = r.mode ? ojson(std::string(to_string(*r.mode))) : ojson(nullptr);
        row["ancillas"] = r.ancillas;
        row["tau"] = r.tau;
        row["p_round"] = r.p_round;
        row["p_cum"] = r.p_cumulative;
        row["active_count"] = r.active_count ? ojson(*r.active_count) : ojson(nullptr);
        ojson exp = ojson::object();
        for (const auto &[name, value] : r.expectations) {
            exp[name] = value;
        }
        row["expectations"] = exp;
        if (!r.estimates.empty()) {
            ojson est = ojson::object();
            for (const auto &e : r.estimates) {
                est[e.name] = {{"mean", e.mean}, {"stddev", e.stddev}};
            }
            row["sampled"] = est;
        }
        rounds.push_back(row);
    }

    ojson verdicts = ojson::array();
    for (const auto &v : report.verdicts) {
        verdicts.push_back({{"observable", v.observable},
                            {"expected", v.expected},
                            {"actual", v.actual},
                            {"tolerance", v.tolerance ? ojson(*v.tolerance)
                                                      : ojson(nullptr)},
                            {"pass", v.pass}});
    }

    ojson doc;
    doc["metadata"] = meta;
    doc["rounds"] = rounds;
    doc["halt"] = res.halt ? ojson{{"round", res.halt->round},
                                   {"message", res.halt->message}}
                           : ojson(nullptr);
    doc["targets"] = verdicts;
    return doc.dump(2) + '\n';
}

} // namespace twirl
