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

/**
 * @file
 * Experiment runner: single analyses, shot sweeps with repetitions, the
 * sidelobe-accuracy shot search, and plot-ready CSV emission. Every run is a
 * pure function of the configuration; per-repetition seeds derive from the
 * master seed through the documented mixing chain.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "arrayqft/errors.hpp"
#include "arrayqft/excitations.hpp"
#include "arrayqft/metrics.hpp"
#include "arrayqft/qsim.hpp"
#include "arrayqft/reference.hpp"
#include "arrayqft/rng.hpp"

namespace arrayqft {

enum class ExcitationSource { dolph_chebyshev, taylor, file };

/**
 * @brief Everything a run needs: the excitation source, the grid, the shot
 * budget(s), repetition count and master seed.
 *
 * `shots` holds one entry for single runs and the schedule for sweeps.
 * Search parameters left at zero fall back to their documented defaults
 * (start M*80, cap M*10000).
 */
struct ExperimentConfig {
    ExcitationSource source = ExcitationSource::dolph_chebyshev;
    double sll_db = -15.0;
    int n_bar = 4;
    std::string excitation_file;
    GridSpec grid;
    std::vector<std::uint64_t> shots = {1024 * 1000};
    int repetitions = 20;
    std::uint64_t master_seed = 424242;
    std::string output_dir = "out";
    std::optional<double> gamma_sl_target;
    bool exact = false;
    FourierSign sign = FourierSign::negative;
    std::uint64_t search_start = 0;
    double search_factor = 1.2;
    std::uint64_t search_cap = 0;
};

inline void validate(const ExperimentConfig &config) {
    validate(config.grid);
    if (config.repetitions < 1) {
        throw ParameterError("config: repetitions must be at least 1");
    }
    if (config.shots.empty()) {
        throw ParameterError("config: no shot count given");
    }
    for (auto t : config.shots) {
        if (t < 1) {
            throw ParameterError("config: shot counts must be at least 1");
        }
    }
    if (config.source == ExcitationSource::file && config.excitation_file.empty()) {
        throw ParameterError("config: excitation file source needs a path");
    }
    if (config.search_factor <= 1.0) {
        throw ParameterError("config: search factor must exceed 1");
    }
    if (config.gamma_sl_target && !(*config.gamma_sl_target > 0.0)) {
        throw ParameterError("config: sidelobe mismatch target must be positive");
    }
}

/// Builds the normalized excitation set the configuration asks for.
inline ExcitationSet make_excitations(const ExperimentConfig &config) {
    switch (config.source) {
    case ExcitationSource::dolph_chebyshev:
        return dolph_chebyshev(config.grid.n_elements, config.sll_db);
    case ExcitationSource::taylor:
        return taylor(config.grid.n_elements, config.sll_db, config.n_bar);
    case ExcitationSource::file: {
        std::ifstream in(config.excitation_file);
        if (!in) {
            throw IoError("cannot open excitation file: " + config.excitation_file);
        }
        auto set = normalize(load_excitations(in));
        if (set.size() != config.grid.n_elements) {
            throw SizeError("excitation file holds " + std::to_string(set.size()) +
                            " elements, grid expects " +
                            std::to_string(config.grid.n_elements));
        }
        return set;
    }
    }
    throw ParameterError("config: unknown excitation source");
}

/**
 * @brief Key-value configuration file.
 *
 * One `key = value` pair per line; `#` starts a comment; blank lines are
 * ignored. Keys: excitation (dc|taylor|file), sll_db, n_bar, file,
 * n_elements, n_samples, spacing, shots (single value or comma list),
 * repetitions, seed, outdir, gamma_sl_target, exact (true|false),
 * sign (negative|positive), search_start, search_factor, search_cap.
 */
inline ExperimentConfig parse_config(std::istream &in) {
    ExperimentConfig config;
    std::string line;
    int line_number = 0;
    auto fail = [&](const std::string &what) {
        throw ParseError("config line " + std::to_string(line_number) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_number;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        if (trim(line).empty()) {
            continue;
        }
        if (eq == std::string::npos) {
            fail("expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) {
            fail("empty value for '" + key + "'");
        }
        try {
            if (key == "excitation") {
                if (value == "dc") {
                    config.source = ExcitationSource::dolph_chebyshev;
                } else if (value == "taylor") {
                    config.source = ExcitationSource::taylor;
                } else if (value == "file") {
                    config.source = ExcitationSource::file;
                } else {
                    fail("unknown excitation '" + value + "'");
                }
            } else if (key == "sll_db") {
                config.sll_db = std::stod(value);
            } else if (key == "n_bar") {
                config.n_bar = std::stoi(value);
            } else if (key == "file") {
                config.excitation_file = value;
            } else if (key == "n_elements") {
                config.grid.n_elements = std::stoi(value);
            } else if (key == "n_samples") {
                config.grid.n_samples = std::stoi(value);
            } else if (key == "spacing") {
                config.grid.spacing_wl = std::stod(value);
            } else if (key == "shots") {
                config.shots.clear();
                std::istringstream list(value);
                std::string item;
                while (std::getline(list, item, ',')) {
                    config.shots.push_back(std::stoull(trim(item)));
                }
            } else if (key == "repetitions") {
                config.repetitions = std::stoi(value);
            } else if (key == "seed") {
                config.master_seed = std::stoull(value);
            } else if (key == "outdir") {
                config.output_dir = value;
            } else if (key == "gamma_sl_target") {
                config.gamma_sl_target = std::stod(value);
            } else if (key == "exact") {
                if (value == "true") {
                    config.exact = true;
                } else if (value == "false") {
                    config.exact = false;
                } else {
                    fail("expected true or false");
                }
            } else if (key == "sign") {
                if (value == "negative") {
                    config.sign = FourierSign::negative;
                } else if (value == "positive") {
                    config.sign = FourierSign::positive;
                } else {
                    fail("expected negative or positive");
                }
            } else if (key == "search_start") {
                config.search_start = std::stoull(value);
            } else if (key == "search_factor") {
                config.search_factor = std::stod(value);
            } else if (key == "search_cap") {
                config.search_cap = std::stoull(value);
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument &) {
            fail("cannot parse value '" + value + "' for '" + key + "'");
        } catch (const std::out_of_range &) {
            fail("value out of range for '" + key + "'");
        }
    }
    return config;
}

namespace detail {

/// The QFT side of the pipeline, prepared once per excitation set.
struct PreparedState {
    QuantumState transformed;
    std::vector<double> probabilities;
};

inline PreparedState prepare_state(const ExcitationSet &set, const ExperimentConfig &config) {
    const int qubits = register_size(config.grid.n_elements, config.grid.n_samples);
    PreparedState prepared;
    prepared.transformed = apply_qft(encode(set, qubits), config.sign);
    prepared.probabilities = exact_probabilities(prepared.transformed);
    return prepared;
}

/// Exact-probability pattern, peak-normalized in display order.
inline PatternSamples exact_estimate(const std::vector<double> &probabilities,
                                     const GridSpec &grid) {
    const int m = grid.n_samples;
    PatternSamples pattern;
    pattern.values.resize(m);
    pattern.u_grid = u_grid(grid);
    double p_max = 0.0;
    for (double p : probabilities) {
        p_max = std::max(p_max, p);
    }
    pattern.p_max = p_max;
    for (int i = 0; i < m; ++i) {
        pattern.values[i] = probabilities[display_to_state(i, m)] / p_max;
    }
    for (int i = 0; i < m; ++i) {
        if (pattern.values[i] == 1.0) {
            pattern.m_peak = i;
            break;
        }
    }
    return pattern;
}

/// Runs the repetitions of one sweep point, in parallel. Each repetition's
/// seed depends only on (master, sweep_index, run_index), so the outcome is
/// schedule-independent.
inline std::vector<ShotHistogram> run_repetitions(const QuantumState &state,
                                                  const ExperimentConfig &config,
                                                  std::uint64_t shots,
                                                  std::uint64_t sweep_index) {
    const int reps = config.repetitions;
    std::vector<ShotHistogram> histograms(reps);
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(reps));
    std::vector<std::future<void>> tasks;
    tasks.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&, w] {
            for (int r = static_cast<int>(w); r < reps; r += static_cast<int>(workers)) {
                histograms[r] = sample_shots(
                    state, shots, derive_seed(config.master_seed, sweep_index, r));
            }
        }));
    }
    for (auto &task : tasks) {
        task.get();
    }
    return histograms;
}

} // namespace detail

/**
 * @brief One full analysis at a single shot budget.
 *
 * `estimated` is the first repetition's pattern (or the exact-probability
 * pattern when `exact` is set); the report covers all repetitions.
 */
struct SingleResult {
    PatternSamples reference;
    PatternSamples estimated;
    MatchReport report;
    std::vector<ShotHistogram> histograms;
};

inline SingleResult run_single(const ExperimentConfig &config) {
    validate(config);
    const auto set = make_excitations(config);
    const auto prepared = detail::prepare_state(set, config);

    SingleResult result;
    result.reference = power_pattern(dft_array_factor(set, config.grid), config.grid);
    find_mainlobe_nulls(result.reference);

    std::vector<PatternSamples> estimates;
    if (config.exact) {
        estimates.push_back(detail::exact_estimate(prepared.probabilities, config.grid));
    } else {
        result.histograms =
            detail::run_repetitions(prepared.transformed, config, config.shots.front(), 0);
        estimates.reserve(result.histograms.size());
        for (const auto &histogram : result.histograms) {
            estimates.push_back(estimate_pattern(histogram, config.grid));
        }
    }
    result.estimated = estimates.front();
    result.report = build_match_report(result.reference, estimates, result.histograms);
    return result;
}

/// One sweep point: the shot budget, resolution-threshold statistics over
/// the repetitions, and the mean mismatch metrics.
struct SweepRow {
    std::uint64_t shots = 0;
    DeltaStats delta;
    double gamma = 0.0;
    double gamma_ml = 0.0;
    double gamma_sl = 0.0;
};

inline std::vector<SweepRow> sweep_shots(const ExperimentConfig &config) {
    validate(config);
    if (config.shots.size() < 2) {
        throw ParameterError("sweep_shots: need at least two shot counts");
    }
    if (config.exact) {
        throw ParameterError("sweep_shots: the exact pathway has no shot budget to sweep");
    }
    const auto set = make_excitations(config);
    const auto prepared = detail::prepare_state(set, config);
    auto reference = power_pattern(dft_array_factor(set, config.grid), config.grid);
    find_mainlobe_nulls(reference);

    std::vector<SweepRow> rows;
    rows.reserve(config.shots.size());
    for (std::size_t t = 0; t < config.shots.size(); ++t) {
        const auto histograms =
            detail::run_repetitions(prepared.transformed, config, config.shots[t], t);
        std::vector<PatternSamples> estimates;
        estimates.reserve(histograms.size());
        for (const auto &histogram : histograms) {
            estimates.push_back(estimate_pattern(histogram, config.grid));
        }
        const auto report = build_match_report(reference, estimates, histograms);
        SweepRow row;
        row.shots = config.shots[t];
        row.delta = delta_statistics(histograms);
        row.gamma = report.gamma;
        row.gamma_ml = report.gamma_ml;
        row.gamma_sl = report.gamma_sl;
        rows.push_back(row);
    }
    return rows;
}

/**
 * @brief Result of the shot search: the smallest scheduled budget whose mean
 * sidelobe mismatch meets the target.
 *
 * `found == false` means the schedule reached its cap first; the trajectory
 * and the report at the last budget are still returned.
 */
struct SearchResult {
    bool found = false;
    std::uint64_t shots_required = 0;
    MatchReport report;
    std::vector<SweepRow> trajectory;
};

inline SearchResult search_shots(const ExperimentConfig &config) {
    validate(config);
    if (!config.gamma_sl_target) {
        throw ParameterError("search_shots: no sidelobe mismatch target set");
    }
    const std::uint64_t m = static_cast<std::uint64_t>(config.grid.n_samples);
    const std::uint64_t start = config.search_start > 0 ? config.search_start : m * 80;
    const std::uint64_t cap = config.search_cap > 0 ? config.search_cap : m * 10000;

    const auto set = make_excitations(config);
    const auto prepared = detail::prepare_state(set, config);
    auto reference = power_pattern(dft_array_factor(set, config.grid), config.grid);
    find_mainlobe_nulls(reference);

    SearchResult result;
    std::uint64_t shots = start;
    for (std::uint64_t index = 0; shots <= cap; ++index) {
        const auto histograms =
            detail::run_repetitions(prepared.transformed, config, shots, index);
        std::vector<PatternSamples> estimates;
        estimates.reserve(histograms.size());
        for (const auto &histogram : histograms) {
            estimates.push_back(estimate_pattern(histogram, config.grid));
        }
        const auto report = build_match_report(reference, estimates, histograms);
        SweepRow row;
        row.shots = shots;
        row.delta = delta_statistics(histograms);
        row.gamma = report.gamma;
        row.gamma_ml = report.gamma_ml;
        row.gamma_sl = report.gamma_sl;
        result.trajectory.push_back(row);
        result.report = report;
        if (report.gamma_sl <= *config.gamma_sl_target) {
            result.found = true;
            result.shots_required = shots;
            return result;
        }
        const auto next = static_cast<std::uint64_t>(
            std::ceil(static_cast<double>(shots) * config.search_factor));
        shots = std::max(next, shots + 1);
    }
    return result;
}

// --- output emission ---------------------------------------------------

namespace detail {

inline std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    return out;
}

} // namespace detail

inline std::filesystem::path ensure_output_dir(const std::string &dir) {
    std::filesystem::path path(dir);
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) {
        throw IoError("cannot create output directory " + path.string() + ": " + ec.message());
    }
    return path;
}

/// reference_pattern.csv, estimated_pattern.csv and match_report.csv.
inline void write_single_result(const std::string &dir, const SingleResult &result) {
    const auto path = ensure_output_dir(dir);
    {
        auto out = detail::open_output(path / "reference_pattern.csv");
        write_pattern_csv(out, result.reference);
    }
    {
        auto out = detail::open_output(path / "estimated_pattern.csv");
        write_pattern_csv(out, result.estimated);
    }
    {
        auto out = detail::open_output(path / "match_report.csv");
        write_report_csv(out, result.report);
    }
}

/// delta_vs_shots.csv: shot budget against the threshold statistics.
inline void write_delta_csv(std::ostream &out, std::span<const SweepRow> rows) {
    out << "shots,delta_mean_db,delta_min_db,delta_max_db\n";
    char buffer[160];
    for (const auto &row : rows) {
        std::snprintf(buffer, sizeof(buffer), "%llu,%.12g,%.12g,%.12g\n",
                      static_cast<unsigned long long>(row.shots), row.delta.mean_db,
                      row.delta.min_db, row.delta.max_db);
        out << buffer;
    }
}

/// gamma_vs_shots.csv: shot budget against the mismatch family.
inline void write_gamma_csv(std::ostream &out, std::span<const SweepRow> rows) {
    out << "shots,gamma,gamma_ml,gamma_sl\n";
    char buffer[160];
    for (const auto &row : rows) {
        std::snprintf(buffer, sizeof(buffer), "%llu,%.12g,%.12g,%.12g\n",
                      static_cast<unsigned long long>(row.shots), row.gamma, row.gamma_ml,
                      row.gamma_sl);
        out << buffer;
    }
}

inline void write_sweep_result(const std::string &dir, std::span<const SweepRow> rows) {
    const auto path = ensure_output_dir(dir);
    {
        auto out = detail::open_output(path / "delta_vs_shots.csv");
        write_delta_csv(out, rows);
    }
    {
        auto out = detail::open_output(path / "gamma_vs_shots.csv");
        write_gamma_csv(out, rows);
    }
}

inline void write_search_result(const std::string &dir, const SearchResult &result) {
    const auto path = ensure_output_dir(dir);
    {
        auto out = detail::open_output(path / "search_trajectory.csv");
        write_gamma_csv(out, result.trajectory);
    }
    {
        auto out = detail::open_output(path / "match_report.csv");
        write_report_csv(out, result.report);
    }
}

} // namespace arrayqft
