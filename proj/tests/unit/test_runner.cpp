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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "json.hpp"
#include "twirl/error.hpp"
#include "twirl/manifest.hpp"
#include "twirl/runner.hpp"
#include "twirl/sampling.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using namespace twirl;
namespace fs = std::filesystem;

namespace {

const fs::path kManifests{TWIRL_MANIFEST_DIR};

constexpr const char *kSmall = R"({
  "name": "small",
  "hamiltonian": "schwinger-1q",
  "J": 1.0,
  "initial": "0",
  "rounds": [{"mode": "quarter"}, {"mode": "quarter"}, {"mode": "quarter"},
             {"mode": "quarter"}, {"mode": "quarter"}],
  "shots": 20000,
  "seed": 3,
  "observables": ["Z", "H"],
  "expected": {"H": {"value": 1.414214, "tolerance": 1e-3}, "Z": 0.707107}
})";

std::string pointer_of(const std::string &text) {
    try {
        (void)parse_manifest(text);
    } catch (const ConfigError &e) {
        return e.pointer();
    }
    return "<no error>";
}

std::string with(const std::string &key, const std::string &value) {
    auto doc = nlohmann::json::parse(kSmall);
    doc[key] = nlohmann::json::parse(value);
    return doc.dump();
}

fs::path scratch(const std::string &name) {
    auto dir = fs::temp_directory_path() / ("twirl-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("manifest parsing", "[runner]") {
    const auto m = parse_manifest(kSmall);
    CHECK(m.name == "small");
    CHECK(m.hamiltonian.term_order() == "X,Z");
    CHECK(m.config.rounds.size() == 5);
    CHECK(m.config.shots == std::optional<std::uint64_t>(20000));
    CHECK(m.config.rng_seed == 3);
    CHECK(m.config.config_id == fnv1a64("small"));
    REQUIRE(m.expected.size() == 2);
    CHECK(m.expected[0].observable == "Z");
    CHECK_FALSE(m.expected[0].tolerance);
    CHECK(m.expected[1].tolerance == std::optional<double>(1e-3));

    const auto inline_h = parse_manifest(R"({"name": "c", "initial": "01",
        "hamiltonian": {"n_qubits": 2, "terms": [{"coeff": 0.5, "axes": "XX"}]}})");
    CHECK(inline_h.hamiltonian_label == "custom");
    CHECK(inline_h.config.observables.front().name == "H");
}

TEST_CASE("schema violations carry JSON pointers", "[runner]") {
    CHECK(pointer_of("[1]") == "/");
    CHECK(pointer_of("{") == "");
    CHECK(pointer_of(R"({"initial": "0"})") == "/name");
    CHECK(pointer_of(with("rounds", R"([{"mode": "quarter"}, {"mode": "full"},
                                        {"mode": "half"}])")) == "/rounds/2/mode");
    CHECK(pointer_of(with("rounds", R"([{"mode": "full", "E_override": 0}])")) ==
          "/rounds/0/E_override");
    CHECK(pointer_of(with("rounds", R"([{"mode": "full", "ancillas": 0}])")) ==
          "/rounds/0/ancillas");
    CHECK(pointer_of(with("rounds", R"([{"mode": "full", "extra": 1}])")) ==
          "/rounds/0/extra");
    CHECK(pointer_of(with("initial", R"("012")")) == "/initial");
    CHECK(pointer_of(with("initial", R"("00")")) == "/initial");
    CHECK(pointer_of(with("shots", "0")) == "/shots");
    CHECK(pointer_of(with("seed", "-4")) == "/seed");
    CHECK(pointer_of(with("backend", R"("trotter:x")")) == "/backend");
    CHECK(pointer_of(with("hamiltonian", R"("schwinger-5q")")) == "/hamiltonian");
    CHECK(pointer_of(with("observables", R"(["H", "Zbar"])")) == "/observables/1");
    CHECK(pointer_of(with("observables", R"(["H", "H"])")) == "/observables/1");
    CHECK(pointer_of(with("expected", R"({"Z7": 1})")) == "/expected/Z7");
    CHECK(pointer_of(with("expected", R"({"H": {"value": 1, "tolerance": -1}})")) ==
          "/expected/H/tolerance");
    CHECK(pointer_of(with("prepare", R"({"adiabatic": {"steps": 0}})")) ==
          "/prepare/adiabatic");
    CHECK(pointer_of(with("colour", "1")) == "/colour");
    CHECK_THROWS_WITH(parse_manifest(with("shots", "0")),
                      ContainsSubstring("/shots: must be positive"));
    CHECK_THROWS_AS(load_manifest("/nonexistent/manifest.json"), ConfigError);
}

TEST_CASE("observable names", "[runner]") {
    const auto h = schwinger_hamiltonian(3, 1.0);
    CHECK(resolve_observable("H", h).term_order() == h.term_order());
    CHECK(resolve_observable("Zbar", h).term_order() == "ZII,IZI,IIZ");
    CHECK(resolve_observable("Z", h).term_order() == "ZII");
    CHECK(resolve_observable("Z2", h).term_order() == "IIZ");
    CHECK(resolve_observable("P:XYZ", h).term_order() == "XYZ");
    CHECK_THROWS_AS(resolve_observable("Z3", h), DimensionError);
    CHECK_THROWS_AS(resolve_observable("P:XY", h), DimensionError);
    CHECK_THROWS_AS(resolve_observable("Zx", h), Error);
    CHECK_THROWS_AS(resolve_observable("Zbar", schwinger_hamiltonian(2, 1.0)), Error);
}

TEST_CASE("prepare flag and overrides", "[runner]") {
    const auto p = parse_prepare_flag("adiabatic:T=20,steps=400");
    CHECK(p.schedule.total_time == 20.0);
    CHECK(p.schedule.steps == 400);
    CHECK(trotter_steps(p.backend) == 0);
    CHECK(trotter_steps(parse_prepare_flag("adiabatic:backend=trotter:8").backend) == 8);
    CHECK(parse_prepare_flag("adiabatic").schedule.steps == 400);
    CHECK_THROWS_AS(parse_prepare_flag("annealing"), ConfigError);
    CHECK_THROWS_AS(parse_prepare_flag("adiabatic:T=abc"), ConfigError);
    CHECK_THROWS_AS(parse_prepare_flag("adiabatic:T=-1"), ConfigError);
    CHECK_THROWS_AS(parse_prepare_flag("adiabatic:speed=2"), ConfigError);

    auto m = parse_manifest(kSmall);
    RunOverrides o;
    o.seed = 99;
    o.shots = 10;
    o.backend = TrotterBackend{16};
    apply_overrides(m, o);
    CHECK(m.config.rng_seed == 99);
    CHECK(m.config.shots == std::optional<std::uint64_t>(10));
    CHECK(trotter_steps(m.config.backend) == 16);
    o.shots = 0;
    CHECK_THROWS_AS(apply_overrides(m, o), ConfigError);
}

TEST_CASE("run output layout", "[runner]") {
    const auto out = execute(parse_manifest(kSmall));
    CHECK(out.ok());
    CHECK_THAT(out.text, ContainsSubstring("round "));
    CHECK_THAT(out.text, ContainsSubstring("theoretical"));
    CHECK_THAT(out.text, ContainsSubstring("active state"));
    CHECK_THAT(out.text, ContainsSubstring("1.414214"));
    CHECK(out.csv.find("round,E_used,tau,p_round,p_cum,active_count,Z,H") !=
          std::string::npos);

    for (const auto *blob : {&out.text, &out.csv, &out.json}) {
        CHECK_THAT(*blob, ContainsSubstring("X,Z"));
    }
    CHECK_THAT(out.csv, ContainsSubstring("# seed=3"));
    CHECK_THAT(out.csv, ContainsSubstring("# backend=exact"));
    CHECK_THAT(out.csv, ContainsSubstring(std::string("# version=") + std::string(version())));

    const auto meta = nlohmann::json::parse(out.json)["metadata"];
    CHECK(meta["seed"] == 3);
    CHECK(meta["backend"] == "exact");
    CHECK(meta["trotter_steps"].is_null());
    CHECK(meta["term_order"] == "X,Z");
    CHECK(meta["version"] == std::string(version()));
    CHECK(meta.contains("shot_budget"));

    auto doc = nlohmann::json::parse(kSmall);
    doc["rounds"] = nlohmann::json::array();
    doc.erase("expected");
    const auto empty = execute(parse_manifest(doc.dump()));
    CHECK(empty.result.records.size() == 1);
    CHECK(empty.text.find("theoretical") == std::string::npos);
    CHECK(nlohmann::json::parse(empty.json)["rounds"].size() == 1);
}

TEST_CASE("identical manifest and seed give identical bytes", "[runner]") {
    const auto a = execute(parse_manifest(kSmall));
    const auto b = execute(parse_manifest(kSmall));
    CHECK(a.text == b.text);
    CHECK(a.csv == b.csv);
    CHECK(a.json == b.json);

    auto m = parse_manifest(kSmall);
    m.config.rng_seed = 4;
    CHECK(execute(m).csv != a.csv);
}

TEST_CASE("run command exit codes and files", "[runner]") {
    const auto dir = scratch("run");
    {
        std::ofstream(dir / "ok.json") << kSmall;
        auto doc = nlohmann::json::parse(kSmall);
        doc["name"] = "miss";
        doc["expected"]["H"]["value"] = -1.414214;
        std::ofstream(dir / "miss.json") << doc.dump();
        std::ofstream(dir / "broken.json") << with("shots", "0");
    }
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_run(dir / "ok.json", {}, OutputFormat::Csv, dir / "out", out, err) == 0);
    CHECK(out.str().rfind("# name=small", 0) == 0);
    for (const char *ext : {".txt", ".csv", ".json"}) {
        CHECK(fs::exists(dir / "out" / (std::string("small") + ext)));
    }
    for (const auto &entry : fs::directory_iterator(dir / "out")) {
        CHECK(entry.path().string().find(".tmp") == std::string::npos);
    }
    CHECK(cmd_run(dir / "miss.json", {}, OutputFormat::Text, {}, out, err) == 1);
    CHECK_THAT(err.str(), ContainsSubstring("target H"));
    CHECK(cmd_run(dir / "broken.json", {}, OutputFormat::Text, {}, out, err) == 2);
    CHECK_THAT(err.str(), ContainsSubstring("/shots"));
    fs::remove_all(dir);
}

TEST_CASE("batch runs bundled manifests concurrently", "[runner]") {
    const auto dir = scratch("batch");
    std::vector<fs::path> configs;
    for (const char *name : {"table-01-ket0", "table-04", "table-10", "table-12"}) {
        configs.push_back(kManifests / (std::string(name) + ".json"));
    }
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_batch(configs, {}, dir, 3, out, err) == 0);
    CHECK_THAT(out.str(), ContainsSubstring("table-12: ok"));
    CHECK(fs::exists(dir / "table-04.json"));

    const auto serial = execute(load_manifest(configs[3]));
    std::ifstream in(dir / "table-12.csv");
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == serial.csv);

    std::vector<fs::path> twice{configs[0], configs[0]};
    CHECK(cmd_batch(twice, {}, dir, 2, out, err) == 2);
    CHECK_THAT(err.str(), ContainsSubstring("duplicate name"));
    fs::remove_all(dir);
}

TEST_CASE("every bundled manifest parses", "[runner]") {
    std::size_t count = 0;
    for (const auto &entry : fs::directory_iterator(kManifests)) {
        if (entry.path().extension() == ".json") {
            const auto m = load_manifest(entry.path());
            CHECK(m.name == entry.path().stem().string());
            CHECK(m.config.shots == std::optional<std::uint64_t>(1'000'000));
            ++count;
        }
    }
    CHECK(count == 15);
}

TEST_CASE("spectrum command", "[runner]") {
    const auto three = cmd_spectrum(3, 1.0, OutputFormat::Text);
    CHECK_THAT(three, ContainsSubstring("E4  +0.000000  <Zbar> +0.555556"));
    CHECK_THAT(three, ContainsSubstring("E7  +2.449490  <Zbar> -0.111111"));
    CHECK_THAT(three, ContainsSubstring("max deviation"));

    const auto one = nlohmann::json::parse(cmd_spectrum(1, 0.0, OutputFormat::Json));
    CHECK_THAT(one["numeric"][0]["energy"].get<double>(), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(one["numeric"][1]["energy"].get<double>(), WithinAbs(1.0, 1e-12));
    CHECK(one["max_deviation"].get<double>() < 1e-10);

    const auto two = cmd_spectrum(2, 1.0, OutputFormat::Csv);
    CHECK_THAT(two, ContainsSubstring("numeric,0,-1.41421356237"));
    CHECK_THAT(two, ContainsSubstring("closed,u3,1.41421356237"));
    CHECK(cmd_spectrum(3, 2.0, OutputFormat::Csv) == cmd_spectrum(3, 2.0, OutputFormat::Csv));
    CHECK_THROWS_WITH(cmd_spectrum(4, 1.0, OutputFormat::Text), "unsupported system size");
}

TEST_CASE("trotter scan", "[runner]") {
    const double tau = std::numbers::pi / 2.0;
    const auto scan = trotter_scan(schwinger_hamiltonian(1, 1.0), tau, {8, 16, 32});
    REQUIRE(scan.rows.size() == 3);
    CHECK(std::isnan(scan.rows[0].order));
    CHECK(scan.rows[1].error < scan.rows[0].error);
    CHECK(scan.rows[2].error < scan.rows[1].error);
    CHECK_THAT(scan.order_estimate, WithinAbs(2.0, 0.2));

    const auto single = trotter_scan(schwinger_hamiltonian(2, 1.0), tau, {1});
    CHECK(single.rows.size() == 1);
    CHECK(std::isnan(single.order_estimate));

    const auto commuting = PauliSum(2).add(1.0, "ZI").add(1.0, "ZZ");
    for (const auto &row : trotter_scan(commuting, tau, {2, 4, 8}).rows) {
        CHECK(row.error < 1e-12);
    }
    CHECK_THAT(cmd_trotter_scan(schwinger_hamiltonian(1, 1.0), tau, {8, 16},
                                OutputFormat::Text),
               ContainsSubstring("order estimate: 2.0"));
}
