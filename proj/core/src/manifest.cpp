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
#include "twirl/manifest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "twirl/error.hpp"
#include "twirl/sampling.hpp"

namespace twirl {

namespace {

using nlohmann::json;

std::string escape_token(std::string_view token) {
    std::string out;
    for (char c : token) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

std::string child(const std::string &pointer, std::string_view key) {
    return pointer + "/" + escape_token(key);
}

std::string child(const std::string &pointer, std::size_t index) {
    return pointer + "/" + std::to_string(index);
}

void check_keys(const json &obj, const std::string &pointer,
                std::initializer_list<std::string_view> allowed) {
    for (const auto &[key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ConfigError(child(pointer, key), "unknown key");
        }
    }
}

const json &require(const json &obj, const std::string &pointer,
                    std::string_view key) {
    const auto it = obj.find(std::string(key));
    if (it == obj.end()) {
        throw ConfigError(child(pointer, key), "required key is missing");
    }
    return *it;
}

double as_number(const json &value, const std::string &pointer) {
    if (!value.is_number()) {
        throw ConfigError(pointer, "expected a number");
    }
    const double x = value.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(pointer, "expected a finite number");
    }
    return x;
}

std::uint64_t as_unsigned(const json &value, const std::string &pointer) {
    if (!value.is_number_unsigned()) {
        throw ConfigError(pointer, "expected a non-negative integer");
    }
    return value.get<std::uint64_t>();
}

std::string as_string(const json &value, const std::string &pointer) {
    if (!value.is_string()) {
        throw ConfigError(pointer, "expected a string");
    }
    return value.get<std::string>();
}

PauliSum parse_inline_hamiltonian(const json &value, const std::string &pointer) {
    if (!value.is_object()) {
        throw ConfigError(pointer, "expected a builder name or an object");
    }
    check_keys(value, pointer, {"n_qubits", "terms"});
    const auto n = as_unsigned(require(value, pointer, "n_qubits"),
                               child(pointer, "n_qubits"));
    if (n == 0 || n > 30) {
        throw ConfigError(child(pointer, "n_qubits"), "must be in [1, 30]");
    }
    const auto &terms = require(value, pointer, "terms");
    const auto terms_ptr = child(pointer, "terms");
    if (!terms.is_array()) {
        throw ConfigError(terms_ptr, "expected an array");
    }
    PauliSum out(n);
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const auto ptr = child(terms_ptr, k);
        const auto &t = terms[k];
        if (!t.is_object()) {
            throw ConfigError(ptr, "expected an object");
        }
        check_keys(t, ptr, {"coeff", "axes"});
        const double coeff = as_number(require(t, ptr, "coeff"), child(ptr, "coeff"));
        const auto axes = as_string(require(t, ptr, "axes"), child(ptr, "axes"));
        try {
            out.add(coeff, axes);
        } catch (const Error &e) {
            throw ConfigError(child(ptr, "axes"), e.what());
        }
    }
    return out;
}

PreparationSpec parse_prepare(const json &value, const std::string &pointer,
                              std::size_t n_qubits) {
    if (!value.is_object()) {
        throw ConfigError(pointer, "expected an object");
    }
    check_keys(value, pointer, {"adiabatic"});
    const auto ptr = child(pointer, "adiabatic");
    const auto &a = require(value, pointer, "adiabatic");
    if (!a.is_object()) {
        throw ConfigError(ptr, "expected an object");
    }
    check_keys(a, ptr, {"T", "steps", "h0", "backend"});
    PreparationSpec spec;
    if (a.contains("T")) {
        spec.schedule.total_time = as_number(a["T"], child(ptr, "T"));
    }
    if (a.contains("steps")) {
        spec.schedule.steps = as_unsigned(a["steps"], child(ptr, "steps"));
    }
    try {
        spec.schedule.validate();
    } catch (const ConfigError &e) {
        throw ConfigError(ptr, e.what());
    }
    if (a.contains("h0")) {
        spec.h0 = parse_inline_hamiltonian(a["h0"], child(ptr, "h0"));
        if (spec.h0->qubits() != n_qubits) {
            throw ConfigError(child(ptr, "h0"),
                              "qubit count differs from the Hamiltonian");
        }
    }
    if (a.contains("backend")) {
        const auto bptr = child(ptr, "backend");
        try {
            spec.backend = parse_backend(as_string(a["backend"], bptr));
        } catch (const ConfigError &) {
            throw;
        } catch (const Error &e) {
            throw ConfigError(bptr, e.what());
        }
    }
    return spec;
}

RoundSpec parse_round(const json &value, const std::string &pointer) {
    if (!value.is_object()) {
        throw ConfigError(pointer, "expected an object");
    }
    check_keys(value, pointer, {"mode", "E_override", "ancillas"});
    RoundSpec spec;
    const auto mode_ptr = child(pointer, "mode");
    const auto mode = as_string(require(value, pointer, "mode"), mode_ptr);
    if (mode == "quarter") {
        spec.mode = TauMode::Quarter;
    } else if (mode == "full") {
        spec.mode = TauMode::Full;
    } else {
        throw ConfigError(mode_ptr, "expected \"quarter\" or \"full\"");
    }
    if (value.contains("E_override")) {
        const auto ptr = child(pointer, "E_override");
        const double e = as_number(value["E_override"], ptr);
        if (e == 0.0) {
            throw ConfigError(ptr, "energy override must be nonzero");
        }
        spec.energy_override = e;
    }
    if (value.contains("ancillas")) {
        const auto ptr = child(pointer, "ancillas");
        spec.ancillas = as_unsigned(value["ancillas"], ptr);
        if (spec.ancillas == 0) {
            throw ConfigError(ptr, "must be at least 1");
        }
    }
    return spec;
}

std::size_t parse_index(std::string_view digits) {
    std::size_t value = 0;
    const auto [end, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size()) {
        throw Error("bad qubit index '" + std::string(digits) + "'");
    }
    return value;
}

} // namespace

PauliSum resolve_observable(std::string_view name, const PauliSum &hamiltonian) {
    const auto n = hamiltonian.qubits();
    if (name == "H") {
        return hamiltonian;
    }
    if (name == "Zbar") {
        if (n != 3) {
            throw Error("Zbar is defined on three qubits only");
        }
        return observable_zbar();
    }
    if (name == "Z") {
        return observable_z(n, 0);
    }
    if (name.size() > 1 && name[0] == 'Z') {
        return observable_z(n, parse_index(name.substr(1)));
    }
    if (name.substr(0, 2) == "P:") {
        const auto label = name.substr(2);
        if (label.size() != n) {
            throw DimensionError("Pauli label '" + std::string(label) +
                                 "' does not match " + std::to_string(n) +
                                 " qubits");
        }
        return PauliSum(n).add(1.0, label);
    }
    throw Error("unknown observable '" + std::string(name) + "'");
}

ExperimentManifest parse_manifest(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    const std::string root;
    if (!doc.is_object()) {
        throw ConfigError("/", "manifest must be a JSON object");
    }
    check_keys(doc, root,
               {"name", "description", "hamiltonian", "J", "initial", "prepare",
                "rounds", "backend", "shots", "seed", "energy_estimator",
                "observables", "expected", "notes"});

    ExperimentManifest m;
    m.name = as_string(require(doc, root, "name"), "/name");
    if (m.name.empty()) {
        throw ConfigError("/name", "must not be empty");
    }
    if (doc.contains("description")) {
        m.description = as_string(doc["description"], "/description");
    }

    const auto &ham = require(doc, root, "hamiltonian");
    if (ham.is_string()) {
        m.hamiltonian_label = ham.get<std::string>();
        m.J = as_number(require(doc, root, "J"), "/J");
        try {
            m.hamiltonian = hamiltonian_by_name(m.hamiltonian_label, m.J);
        } catch (const Error &e) {
            throw ConfigError("/hamiltonian", e.what());
        }
    } else {
        m.hamiltonian = parse_inline_hamiltonian(ham, "/hamiltonian");
        m.hamiltonian_label = "custom";
        if (doc.contains("J")) {
            m.J = as_number(doc["J"], "/J");
        }
    }
    const auto n = m.hamiltonian.qubits();

    m.initial = as_string(require(doc, root, "initial"), "/initial");
    if (m.initial.size() != n ||
        m.initial.find_first_not_of("01") != std::string::npos) {
        throw ConfigError("/initial", "expected a " + std::to_string(n) +
                                          "-character string of 0 and 1");
    }

    if (doc.contains("prepare")) {
        m.prepare = parse_prepare(doc["prepare"], "/prepare", n);
    }

    if (doc.contains("rounds")) {
        const auto &rounds = doc["rounds"];
        if (!rounds.is_array()) {
            throw ConfigError("/rounds", "expected an array");
        }
        for (std::size_t k = 0; k < rounds.size(); ++k) {
            m.config.rounds.push_back(parse_round(rounds[k], child("/rounds", k)));
        }
    }

    if (doc.contains("backend")) {
        try {
            m.config.backend = parse_backend(as_string(doc["backend"], "/backend"));
        } catch (const ConfigError &) {
            throw;
        } catch (const Error &e) {
            throw ConfigError("/backend", e.what());
        }
    }
    if (doc.contains("shots")) {
        const auto shots = as_unsigned(doc["shots"], "/shots");
        if (shots == 0) {
            throw ConfigError("/shots", "must be positive");
        }
        m.config.shots = shots;
    }
    if (doc.contains("seed")) {
        m.config.rng_seed = as_unsigned(doc["seed"], "/seed");
    }
    if (doc.contains("energy_estimator")) {
        const auto e = as_string(doc["energy_estimator"], "/energy_estimator");
        if (e == "exact") {
            m.config.energy_estimator = EnergyEstimator::Exact;
        } else if (e == "sampled") {
            m.config.energy_estimator = EnergyEstimator::Sampled;
        } else {
            throw ConfigError("/energy_estimator", "expected \"exact\" or \"sampled\"");
        }
    }

    std::vector<std::string> names{"H"};
    if (doc.contains("observables")) {
        const auto &obs = doc["observables"];
        if (!obs.is_array() || obs.empty()) {
            throw ConfigError("/observables", "expected a non-empty array");
        }
        names.clear();
        for (std::size_t k = 0; k < obs.size(); ++k) {
            names.push_back(as_string(obs[k], child("/observables", k)));
        }
    }
    std::set<std::string> seen;
    for (std::size_t k = 0; k < names.size(); ++k) {
        const auto ptr = child("/observables", k);
        if (!seen.insert(names[k]).second) {
            throw ConfigError(ptr, "duplicate observable '" + names[k] + "'");
        }
        try {
            m.config.observables.push_back(
                {names[k], resolve_observable(names[k], m.hamiltonian)});
        } catch (const Error &e) {
            throw ConfigError(ptr, e.what());
        }
    }

    if (doc.contains("expected")) {
        const auto &expected = doc["expected"];
        if (!expected.is_object()) {
            throw ConfigError("/expected", "expected an object");
        }
        for (const auto &[key, value] : expected.items()) {
            const auto ptr = child("/expected", key);
            if (!seen.contains(key)) {
                throw ConfigError(ptr, "not one of the manifest's observables");
            }
            TargetSpec target;
            target.observable = key;
            if (value.is_number()) {
                target.value = as_number(value, ptr);
            } else if (value.is_object()) {
                check_keys(value, ptr, {"value", "tolerance"});
                target.value =
                    as_number(require(value, ptr, "value"), child(ptr, "value"));
                if (value.contains("tolerance")) {
                    const double tol =
                        as_number(value["tolerance"], child(ptr, "tolerance"));
                    if (!(tol > 0.0)) {
                        throw ConfigError(child(ptr, "tolerance"), "must be positive");
                    }
                    target.tolerance = tol;
                }
            } else {
                throw ConfigError(ptr, "expected a number or {value, tolerance}");
            }
            m.expected.push_back(target);
        }
        // Report targets in observable order, not key order.
        std::vector<TargetSpec> ordered;
        for (const auto &name : names) {
            for (const auto &t : m.expected) {
                if (t.observable == name) {
                    ordered.push_back(t);
                }
            }
        }
        m.expected = std::move(ordered);
    }

    if (doc.contains("notes")) {
        const auto &notes = doc["notes"];
        if (!notes.is_array()) {
            throw ConfigError("/notes", "expected an array of strings");
        }
        for (std::size_t k = 0; k < notes.size(); ++k) {
            m.notes.push_back(as_string(notes[k], child("/notes", k)));
        }
    }

    m.config.config_id = fnv1a64(m.name);
    return m;
}

ExperimentManifest load_manifest(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("", "cannot open manifest '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_manifest(buffer.str());
    } catch (const ConfigError &e) {
        throw ConfigError(e.pointer(), path.string() + ": " +
                                           std::string(e.what()).substr(
                                               e.pointer().empty()
                                                   ? 0
                                                   : e.pointer().size() + 2));
    }
}

PreparationSpec parse_prepare_flag(std::string_view text) {
    constexpr std::string_view prefix = "adiabatic";
    if (text.substr(0, prefix.size()) != prefix) {
        throw ConfigError("--prepare", "expected adiabatic[:T=..,steps=..]");
    }
    PreparationSpec spec;
    auto rest = text.substr(prefix.size());
    if (!rest.empty()) {
        if (rest[0] != ':') {
            throw ConfigError("--prepare", "expected ':' after 'adiabatic'");
        }
        rest.remove_prefix(1);
    }
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{}
                                               : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("--prepare", "expected key=value, got '" +
                                               std::string(item) + "'");
        }
        const auto key = item.substr(0, eq);
        const std::string value(item.substr(eq + 1));
        try {
            if (key == "T") {
                std::size_t used = 0;
                spec.schedule.total_time = std::stod(value, &used);
                if (used != value.size()) {
                    throw Error("bad number");
                }
            } else if (key == "steps") {
                spec.schedule.steps = parse_index(value);
            } else if (key == "backend") {
                spec.backend = parse_backend(value);
            } else {
                throw Error("unknown key '" + std::string(key) + "'");
            }
        } catch (const std::exception &e) {
            throw ConfigError("--prepare", std::string(key) + ": " + e.what());
        }
    }
    spec.schedule.validate();
    return spec;
}

void apply_overrides(ExperimentManifest &manifest, const RunOverrides &overrides) {
    if (overrides.seed) {
        manifest.config.rng_seed = *overrides.seed;
    }
    if (overrides.shots) {
        if (*overrides.shots == 0) {
            throw ConfigError("--shots", "must be positive");
        }
        manifest.config.shots = *overrides.shots;
    }
    if (overrides.backend) {
        manifest.config.backend = *overrides.backend;
    }
    if (overrides.prepare) {
        manifest.prepare = *overrides.prepare;
    }
}

} // namespace twirl
