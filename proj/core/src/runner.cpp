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
#include "twirl/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "twirl/adiabatic.hpp"
#include "twirl/error.hpp"
#include "twirl/trotter.hpp"

namespace twirl {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitTargetMissed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string fmt(double value, const char *spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

const std::string &select(const RunOutcome &o, OutputFormat format) {
    switch (format) {
    case OutputFormat::Csv:
        return o.csv;
    case OutputFormat::Json:
        return o.json;
    case OutputFormat::Text:
        break;
    }
    return o.text;
}

std::string observable_name(std::size_t n) { return n == 3 ? "Zbar" : "Z0"; }

PauliSum spectrum_observable(std::size_t n) {
    return n == 3 ? observable_zbar() : observable_z(n, 0);
}

double quadratic_form(const PauliSum &op, const Eigen::VectorXcd &v) {
    return expectation(StateVector::normalized(op.qubits(), v), op);
}

std::string vector_string(const Eigen::VectorXcd &v) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) {
            out += ' ';
        }
        const auto z = v[i];
        out += fmt(std::abs(z.real()) < 5e-7 ? 0.0 : z.real(), "%+.6f");
        if (std::abs(z.imag()) > 5e-7) {
            out += fmt(z.imag(), "%+.6fi");
        }
    }
    return out + "]";
}

/// Largest |P_num - P_closed| over matching degenerate blocks, plus eigenvalues.
double spectrum_deviation(const SpectralDecomposition &a,
                          const SpectralDecomposition &b) {
    double worst = (a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff();
    for (const auto &[first, last] : a.degenerate_blocks()) {
        const auto diff = a.projector(first, last) - b.projector(first, last);
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
    return worst;
}

} // namespace

std::string_view version() noexcept { return TWIRL_VERSION; }

OutputFormat parse_format(std::string_view text) {
    if (text == "text") {
        return OutputFormat::Text;
    }
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "json") {
        return OutputFormat::Json;
    }
    throw ConfigError("--format", "expected text, csv or json, got '" +
                                      std::string(text) + "'");
}

bool RunOutcome::ok() const {
    if (result.halt) {
        return false;
    }
    for (const auto &v : verdicts) {
        if (!v.pass) {
            return false;
        }
    }
    return true;
}

RunOutcome execute(ExperimentManifest manifest) {
    RunOutcome outcome;
    outcome.manifest = std::move(manifest);
    const auto &m = outcome.manifest;

    auto initial = StateVector::basis(m.initial);
    if (m.prepare) {
        const auto h0 = m.prepare->h0.value_or(alternating_field(m.hamiltonian.qubits()));
        initial = adiabatic_prepare(h0, m.hamiltonian, m.prepare->schedule, initial,
                                    m.prepare->backend);
        outcome.prepared = true;
    }
    outcome.result = run_protocol(initial, m.hamiltonian, m.config);

    const auto &last = outcome.result.records.back();
    for (const auto &target : m.expected) {
        TargetVerdict v;
        v.observable = target.observable;
        v.expected = target.value;
        v.actual = last.expectation(target.observable).value_or(NAN);
        v.tolerance = target.tolerance;
        v.pass = !v.tolerance || std::abs(v.actual - v.expected) <= *v.tolerance;
        // A halted run did not reach the final round the target refers to.
        if (outcome.result.halt && v.tolerance) {
            v.pass = false;
        }
        outcome.verdicts.push_back(v);
    }

    const RunReport report{&outcome.manifest, &outcome.result, outcome.verdicts,
                           outcome.prepared};
    outcome.text = render_text(report);
    outcome.csv = render_csv(report);
    outcome.json = render_json(report);
    return outcome;
}

void write_file_atomic(const std::filesystem::path &path, std::string_view content) {
    const auto tag = std::hash<std::thread::id>{}(std::this_thread::get_id());
    auto tmp = path;
    tmp += ".tmp." + std::to_string(tag);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write '" + tmp.string() + "'");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw Error("short write to '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot rename to '" + path.string() + "': " + ec.message());
    }
}

void write_outputs(const RunOutcome &outcome, const std::filesystem::path &out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto &name = outcome.manifest.name;
    write_file_atomic(out_dir / (name + ".txt"), outcome.text);
    write_file_atomic(out_dir / (name + ".csv"), outcome.csv);
    write_file_atomic(out_dir / (name + ".json"), outcome.json);
}

namespace {

int report_outcome(const RunOutcome &outcome, std::ostream &err) {
    if (outcome.result.halt) {
        err << outcome.manifest.name << ": halted: " << outcome.result.halt->message
            << '\n';
    }
    for (const auto &v : outcome.verdicts) {
        if (!v.pass) {
            err << outcome.manifest.name << ": target " << v.observable
                << " expected " << format_fixed(v.expected) << " got "
                << format_fixed(v.actual) << '\n';
        }
    }
    return outcome.ok() ? kExitOk : kExitTargetMissed;
}

template <class F> int guarded(std::ostream &err, F &&body) {
    try {
        return body();
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace

int cmd_run(const std::filesystem::path &config, const RunOverrides &overrides,
            OutputFormat format, const std::filesystem::path &out_dir,
            std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        auto manifest = load_manifest(config);
        apply_overrides(manifest, overrides);
        const auto outcome = execute(std::move(manifest));
        out << select(outcome, format);
        if (!out_dir.empty()) {
            write_outputs(outcome, out_dir);
        }
        return report_outcome(outcome, err);
    });
}

int cmd_batch(const std::vector<std::filesystem::path> &configs,
              const RunOverrides &overrides, const std::filesystem::path &out_dir,
              std::size_t jobs, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        std::vector<ExperimentManifest> manifests;
        std::set<std::string> names;
        for (const auto &path : configs) {
            auto m = load_manifest(path);
            apply_overrides(m, overrides);
            if (!names.insert(m.name).second) {
                throw ConfigError("/name", path.string() + ": duplicate name '" +
                                               m.name + "' in batch");
            }
            manifests.push_back(std::move(m));
        }
        if (jobs == 0) {
            jobs = std::max(1U, std::thread::hardware_concurrency());
        }

        // Manifests run concurrently in waves of `jobs`; each run is sequential.
        std::vector<std::string> status(manifests.size());
        std::vector<int> codes(manifests.size(), kExitOk);
        for (std::size_t start = 0; start < manifests.size(); start += jobs) {
            const auto stop = std::min(manifests.size(), start + jobs);
            std::vector<std::future<void>> wave;
            for (std::size_t i = start; i < stop; ++i) {
                wave.push_back(std::async(std::launch::async, [&, i] {
                    std::ostringstream log;
                    codes[i] = guarded(log, [&] {
                        const auto outcome = execute(manifests[i]);
                        if (!out_dir.empty()) {
                            write_outputs(outcome, out_dir);
                        }
                        return report_outcome(outcome, log);
                    });
                    status[i] = log.str();
                }));
            }
            for (auto &f : wave) {
                f.get();
            }
        }

        int worst = kExitOk;
        for (std::size_t i = 0; i < manifests.size(); ++i) {
            out << manifests[i].name << ": " << (codes[i] == kExitOk ? "ok" : "FAILED")
                << '\n';
            err << status[i];
            worst = std::max(worst, codes[i]);
        }
        return worst;
    });
}

std::string cmd_spectrum(std::size_t n_qubits, double J, OutputFormat format) {
    const auto h = schwinger_hamiltonian(n_qubits, J);
    const auto numeric = eigendecompose(h);
    const auto closed = closed_form_eigenpairs(n_qubits, J);
    const auto closed_spec = closed_form_spectrum(n_qubits, J);
    const auto obs = spectrum_observable(n_qubits);
    const auto obs_name = observable_name(n_qubits);
    const double deviation = spectrum_deviation(numeric, closed_spec);

    if (format == OutputFormat::Json) {
        ojson doc;
        doc["version"] = std::string(version());
        doc["n_qubits"] = n_qubits;
        doc["J"] = J;
        doc["term_order"] = h.term_order();
        ojson num = ojson::array();
        for (Eigen::Index i = 0; i < numeric.eigenvalues.size(); ++i) {
            const Eigen::VectorXcd v = numeric.eigenvectors.col(i);
            ojson re = ojson::array();
            ojson im = ojson::array();
            for (Eigen::Index k = 0; k < v.size(); ++k) {
                re.push_back(v[k].real());
                im.push_back(v[k].imag());
            }
            num.push_back({{"index", i},
                           {"energy", numeric.eigenvalues[i]},
                           {"vector_re", re},
                           {"vector_im", im},
                           {obs_name, quadratic_form(obs, v)}});
        }
        ojson cf = ojson::array();
        for (const auto &pair : closed) {
            cf.push_back({{"label", pair.label},
                          {"energy", pair.energy},
                          {obs_name, quadratic_form(obs, pair.vector)}});
        }
        doc["numeric"] = num;
        doc["closed_form"] = cf;
        doc["max_deviation"] = deviation;
        return doc.dump(2) + '\n';
    }

    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        out << "# version=" << version() << '\n';
        out << "# n_qubits=" << n_qubits << '\n';
        out << "# J=" << fmt(J, "%.12g") << '\n';
        out << "# term_order=" << h.term_order() << '\n';
        out << "source,label,energy," << obs_name << ",vector\n";
        for (Eigen::Index i = 0; i < numeric.eigenvalues.size(); ++i) {
            const Eigen::VectorXcd v = numeric.eigenvectors.col(i);
            out << "numeric," << i << ',' << fmt(numeric.eigenvalues[i], "%.12g")
                << ',' << fmt(quadratic_form(obs, v), "%.12g") << ",\""
                << vector_string(v) << "\"\n";
        }
        for (const auto &pair : closed) {
            out << "closed," << pair.label << ',' << fmt(pair.energy, "%.12g") << ','
                << fmt(quadratic_form(obs, pair.vector), "%.12g") << ",\""
                << vector_string(pair.vector) << "\"\n";
        }
        out << "# max_deviation=" << fmt(deviation, "%.3e") << '\n';
        return out.str();
    }

    out << "schwinger-" << n_qubits << "q  J=" << fmt(J, "%g") << "  terms "
        << h.term_order() << "  (twirl " << version() << ")\n\n";
    out << "numeric (ascending)\n";
    for (Eigen::Index i = 0; i < numeric.eigenvalues.size(); ++i) {
        const Eigen::VectorXcd v = numeric.eigenvectors.col(i);
        out << "  " << i << "  " << fmt(numeric.eigenvalues[i], "%+.6f") << "  <"
            << obs_name << "> " << fmt(quadratic_form(obs, v), "%+.6f") << "  "
            << vector_string(v) << '\n';
    }
    out << "\nclosed form\n";
    for (const auto &pair : closed) {
        out << "  " << pair.label << "  " << fmt(pair.energy, "%+.6f") << "  <"
            << obs_name << "> " << fmt(quadratic_form(obs, pair.vector), "%+.6f")
            << "  " << vector_string(pair.vector) << '\n';
    }
    out << "\nmax deviation (eigenvalues, block projectors): "
        << fmt(deviation, "%.3e") << '\n';
    return out.str();
}

TrotterScan trotter_scan(const PauliSum &h, double tau,
                         const std::vector<std::size_t> &steps) {
    TrotterScan scan;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        TrotterScanRow row;
        row.steps = steps[i];
        row.error = trotter_error(h, tau, steps[i]);
        row.order = std::numeric_limits<double>::quiet_NaN();
        if (i > 0) {
            const auto &prev = scan.rows.back();
            const double ratio = static_cast<double>(row.steps) /
                                 static_cast<double>(prev.steps);
            // Errors at rounding level carry no order information.
            if (prev.error > 1e-13 && row.error > 1e-13 && ratio != 1.0) {
                row.order = std::log(prev.error / row.error) / std::log(ratio);
                sum += row.order;
                ++count;
            }
        }
        scan.rows.push_back(row);
    }
    scan.order_estimate =
        count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
    return scan;
}

std::string cmd_trotter_scan(const PauliSum &h, double tau,
                             const std::vector<std::size_t> &steps,
                             OutputFormat format) {
    const auto scan = trotter_scan(h, tau, steps);
    auto number = [](double x, const char *spec) {
        return std::isnan(x) ? std::string("nan") : fmt(x, spec);
    };

    if (format == OutputFormat::Json) {
        ojson rows = ojson::array();
        for (const auto &r : scan.rows) {
            rows.push_back({{"steps", r.steps},
                            {"error", r.error},
                            {"order", std::isnan(r.order) ? ojson(nullptr)
                                                          : ojson(r.order)}});
        }
        ojson doc;
        doc["version"] = std::string(version());
        doc["term_order"] = h.term_order();
        doc["tau"] = tau;
        doc["rows"] = rows;
        doc["order_estimate"] = std::isnan(scan.order_estimate)
                                    ? ojson(nullptr)
                                    : ojson(scan.order_estimate);
        return doc.dump(2) + '\n';
    }

    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        out << "# version=" << version() << '\n';
        out << "# term_order=" << h.term_order() << '\n';
        out << "# tau=" << fmt(tau, "%.12g") << '\n';
        out << "steps,error,order\n";
        for (const auto &r : scan.rows) {
            out << r.steps << ',' << fmt(r.error, "%.6e") << ','
                << (std::isnan(r.order) ? "" : fmt(r.order, "%.6f")) << '\n';
        }
        out << "# order_estimate=" << number(scan.order_estimate, "%.4f") << '\n';
        return out.str();
    }

    out << "trotter scan  tau=" << fmt(tau, "%.6f") << "  terms " << h.term_order()
        << "  (twirl " << version() << ")\n";
    out << "   steps         error     order\n";
    for (const auto &r : scan.rows) {
        char line[96];
        std::snprintf(line, sizeof line, "%8zu  %12.6e  %8s\n", r.steps, r.error,
                      number(r.order, "%.4f").c_str());
        out << line;
    }
    out << "order estimate: " << number(scan.order_estimate, "%.4f") << '\n';
    return out.str();
}

} // namespace twirl
