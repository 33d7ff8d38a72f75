// Copyright 2026 The arrayqft Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Subcommands: run, sweep, search, gen-excitations,
// dump-circuit. Exit codes: 0 success, 2 invalid usage/config, 3 runtime
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arrayqft/harness.hpp"

namespace {

using arrayqft::ExperimentConfig;

struct CliOptions {
    std::string config_file;
    std::optional<std::string> excitation;
    std::optional<double> sll_db;
    std::optional<int> n_bar;
    std::optional<std::string> file;
    std::optional<int> elements;
    std::optional<int> samples;
    std::optional<double> spacing;
    std::optional<std::vector<std::uint64_t>> shots;
    std::optional<int> repetitions;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> outdir;
    std::optional<double> target;
    bool exact = false;
    std::optional<std::string> sign;
    std::optional<std::uint64_t> search_start;
    std::optional<double> search_factor;
    std::optional<std::uint64_t> search_cap;
};

void add_common_options(CLI::App &cmd, CliOptions &opts) {
    cmd.add_option("--config", opts.config_file, "Key-value config file; flags override it");
    cmd.add_option("--excitation", opts.excitation, "Excitation source: dc, taylor or file");
    cmd.add_option("--sll", opts.sll_db, "Sidelobe level in dB (negative)");
    cmd.add_option("--nbar", opts.n_bar, "Taylor near-in sidelobe count");
    cmd.add_option("--file", opts.file, "Excitation CSV path (with --excitation file)");
    cmd.add_option("--elements", opts.elements, "Number of array elements");
    cmd.add_option("--samples", opts.samples, "Pattern samples (power of two)");
    cmd.add_option("--spacing", opts.spacing, "Element spacing in wavelengths");
    cmd.add_option("--shots", opts.shots, "Shot count(s); comma-separated for sweeps")
        ->delimiter(',');
    cmd.add_option("--reps", opts.repetitions, "Repetitions per shot budget");
    cmd.add_option("--seed", opts.seed, "Master seed");
    cmd.add_option("--out", opts.outdir, "Output directory");
    cmd.add_option("--target", opts.target, "Sidelobe mismatch target for search");
    cmd.add_flag("--exact", opts.exact, "Bypass sampling; use exact state probabilities");
    cmd.add_option("--sign", opts.sign, "Transform exponent sign: negative or positive");
    cmd.add_option("--search-start", opts.search_start, "First shot budget of the search");
    cmd.add_option("--search-factor", opts.search_factor, "Geometric search multiplier");
    cmd.add_option("--search-cap", opts.search_cap, "Largest shot budget to try");
}

ExperimentConfig build_config(const CliOptions &opts) {
    ExperimentConfig config;
    if (!opts.config_file.empty()) {
        std::ifstream in(opts.config_file);
        if (!in) {
            throw arrayqft::IoError("cannot open config file: " + opts.config_file);
        }
        config = arrayqft::parse_config(in);
    }
    if (opts.excitation) {
        if (*opts.excitation == "dc") {
            config.source = arrayqft::ExcitationSource::dolph_chebyshev;
        } else if (*opts.excitation == "taylor") {
            config.source = arrayqft::ExcitationSource::taylor;
        } else if (*opts.excitation == "file") {
            config.source = arrayqft::ExcitationSource::file;
        } else {
            throw arrayqft::ParameterError("unknown excitation '" + *opts.excitation + "'");
        }
    }
    if (opts.sll_db) {
        config.sll_db = *opts.sll_db;
    }
    if (opts.n_bar) {
        config.n_bar = *opts.n_bar;
    }
    if (opts.file) {
        config.excitation_file = *opts.file;
    }
    if (opts.elements) {
        config.grid.n_elements = *opts.elements;
    }
    if (opts.samples) {
        config.grid.n_samples = *opts.samples;
    }
    if (opts.spacing) {
        config.grid.spacing_wl = *opts.spacing;
    }
    if (opts.shots) {
        config.shots = *opts.shots;
    }
    if (opts.repetitions) {
        config.repetitions = *opts.repetitions;
    }
    if (opts.seed) {
        config.master_seed = *opts.seed;
    }
    if (opts.outdir) {
        config.output_dir = *opts.outdir;
    }
    if (opts.target) {
        config.gamma_sl_target = *opts.target;
    }
    if (opts.exact) {
        config.exact = true;
    }
    if (opts.sign) {
        if (*opts.sign == "negative") {
            config.sign = arrayqft::FourierSign::negative;
        } else if (*opts.sign == "positive") {
            config.sign = arrayqft::FourierSign::positive;
        } else {
            throw arrayqft::ParameterError("unknown sign '" + *opts.sign + "'");
        }
    }
    if (opts.search_start) {
        config.search_start = *opts.search_start;
    }
    if (opts.search_factor) {
        config.search_factor = *opts.search_factor;
    }
    if (opts.search_cap) {
        config.search_cap = *opts.search_cap;
    }
    return config;
}

int cmd_run(const CliOptions &opts) {
    const auto config = build_config(opts);
    const auto result = arrayqft::run_single(config);
    arrayqft::write_single_result(config.output_dir, result);
    std::printf("runs=%zu gamma=%.6g gamma_ml=%.6g gamma_sl=%.6g\n", result.report.per_run.size(),
                result.report.gamma, result.report.gamma_ml, result.report.gamma_sl);
    if (result.report.delta_db) {
        std::printf("delta_mean=%.4f dB  peak_probability=%.6g\n", *result.report.delta_db,
                    result.estimated.p_max);
    } else {
        std::printf("exact pathway: peak_probability=%.6g\n", result.estimated.p_max);
    }
    std::printf("outputs in %s\n", config.output_dir.c_str());
    return 0;
}

int cmd_sweep(const CliOptions &opts) {
    const auto config = build_config(opts);
    const auto rows = arrayqft::sweep_shots(config);
    arrayqft::write_sweep_result(config.output_dir, rows);
    for (const auto &row : rows) {
        std::printf("T=%llu delta_mean=%.2f dB gamma=%.5g gamma_ml=%.5g gamma_sl=%.5g\n",
                    static_cast<unsigned long long>(row.shots), row.delta.mean_db, row.gamma,
                    row.gamma_ml, row.gamma_sl);
    }
    std::printf("outputs in %s\n", config.output_dir.c_str());
    return 0;
}

int cmd_search(const CliOptions &opts) {
    const auto config = build_config(opts);
    const auto result = arrayqft::search_shots(config);
    arrayqft::write_search_result(config.output_dir, result);
    for (const auto &row : result.trajectory) {
        std::printf("T=%llu gamma_sl=%.5g\n", static_cast<unsigned long long>(row.shots),
                    row.gamma_sl);
    }
    if (result.found) {
        std::printf("target met at T=%llu\n",
                    static_cast<unsigned long long>(result.shots_required));
    } else {
        std::printf("target not met before the schedule cap\n");
    }
    std::printf("outputs in %s\n", config.output_dir.c_str());
    return 0;
}

int cmd_gen_excitations(const CliOptions &opts, const std::string &output_file) {
    const auto config = build_config(opts);
    if (config.source == arrayqft::ExcitationSource::file) {
        throw arrayqft::ParameterError("gen-excitations generates dc or taylor sets");
    }
    const auto set = arrayqft::make_excitations(config);
    std::ofstream out(output_file);
    if (!out) {
        throw arrayqft::IoError("cannot write " + output_file);
    }
    arrayqft::write_excitations(out, set);
    std::printf("wrote %d weights (%s) to %s\n", set.size(), set.label.c_str(),
                output_file.c_str());
    return 0;
}

int cmd_dump_circuit(const CliOptions &opts, int qubits, const std::string &output_file) {
    const auto config = build_config(opts);
    const int width = qubits > 0 ? qubits
                                 : arrayqft::register_size(config.grid.n_elements,
                                                           config.grid.n_samples);
    const auto circuit = arrayqft::qft_circuit(width, config.sign);
    if (output_file.empty()) {
        arrayqft::write_circuit(std::cout, circuit);
    } else {
        std::ofstream out(output_file);
        if (!out) {
            throw arrayqft::IoError("cannot write " + output_file);
        }
        arrayqft::write_circuit(out, circuit);
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Phased-array power patterns via an emulated quantum Fourier transform"};
    app.require_subcommand(1);

    CliOptions opts;
    std::string gen_output = "excitations.csv";
    std::string circuit_output;
    int qubits = 0;

    auto *run = app.add_subcommand("run", "Single analysis at one shot budget");
    add_common_options(*run, opts);
    auto *sweep = app.add_subcommand("sweep", "Repeat the analysis over a list of shot budgets");
    add_common_options(*sweep, opts);
    auto *search = app.add_subcommand(
        "search", "Grow the shot budget until the sidelobe mismatch target is met");
    add_common_options(*search, opts);
    auto *gen = app.add_subcommand("gen-excitations", "Write a generated taper as CSV");
    add_common_options(*gen, opts);
    gen->add_option("--output", gen_output, "Destination CSV file");
    auto *dump = app.add_subcommand("dump-circuit", "Print the transform's gate sequence");
    add_common_options(*dump, opts);
    dump->add_option("--qubits", qubits, "Register width (otherwise derived from the grid)");
    dump->add_option("--output", circuit_output, "Destination file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(opts);
        }
        if (sweep->parsed()) {
            return cmd_sweep(opts);
        }
        if (search->parsed()) {
            return cmd_search(opts);
        }
        if (gen->parsed()) {
            return cmd_gen_excitations(opts, gen_output);
        }
        if (dump->parsed()) {
            return cmd_dump_circuit(opts, qubits, circuit_output);
        }
    } catch (const arrayqft::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const arrayqft::ParameterError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const arrayqft::SizeError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const arrayqft::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
