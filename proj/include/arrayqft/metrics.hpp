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
 * Pattern-matching metrics between a reference pattern and shot-estimated
 * patterns: the resolution threshold delta = 1/V_max, and the normalized
 * mean-L1 mismatch Gamma with its mainlobe/sidelobe split.
 *
 * Both patterns are peak-normalized before differencing and the split
 * shares the total's denominator, so Gamma = Gamma_ML + Gamma_SL holds by
 * construction, bit for bit.
 */

#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "arrayqft/errors.hpp"
#include "arrayqft/qsim.hpp"
#include "arrayqft/reference.hpp"

namespace arrayqft {

struct ResolutionThreshold {
    double linear = 0.0;
    double db = 0.0;
};

/// delta = 1 / V_max: the smallest normalized pattern value a histogram can
/// represent. Always at most one, i.e. non-positive in dB.
inline ResolutionThreshold resolution_threshold(const ShotHistogram &histogram) {
    std::uint64_t v_max = 0;
    for (auto c : histogram.counts) {
        v_max = std::max(v_max, c);
    }
    if (v_max == 0) {
        throw ParameterError("resolution_threshold: empty histogram");
    }
    ResolutionThreshold threshold;
    threshold.linear = 1.0 / static_cast<double>(v_max);
    threshold.db = 10.0 * std::log10(threshold.linear);
    return threshold;
}

struct DeltaStats {
    double mean_db = 0.0;
    double min_db = 0.0;
    double max_db = 0.0;
};

/// Per-run resolution thresholds reduced to mean/min/max. The mean is taken
/// on the linear values and converted to dB.
inline DeltaStats delta_statistics(std::span<const ShotHistogram> runs) {
    if (runs.empty()) {
        throw ParameterError("delta_statistics: no runs");
    }
    double sum = 0.0;
    double lo = 1.0;
    double hi = 0.0;
    for (const auto &run : runs) {
        const double d = resolution_threshold(run).linear;
        sum += d;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    DeltaStats stats;
    stats.mean_db = 10.0 * std::log10(sum / static_cast<double>(runs.size()));
    stats.min_db = 10.0 * std::log10(lo);
    stats.max_db = 10.0 * std::log10(hi);
    return stats;
}

namespace detail {

struct GammaParts {
    double sidelobe_left = 0.0;
    double mainlobe = 0.0;
    double sidelobe_right = 0.0;
};

inline GammaParts accumulate_mismatch(const PatternSamples &reference,
                                      const PatternSamples &estimate, int chi1, int chi2) {
    GammaParts parts;
    const auto &r = reference.values;
    const auto &e = estimate.values;
    for (int i = 0; i <= chi1; ++i) {
        parts.sidelobe_left += std::abs(r[i] - e[i]);
    }
    for (int i = chi1 + 1; i < chi2; ++i) {
        parts.mainlobe += std::abs(r[i] - e[i]);
    }
    for (int i = chi2; i < reference.size(); ++i) {
        parts.sidelobe_right += std::abs(r[i] - e[i]);
    }
    return parts;
}

inline double reference_mass(const PatternSamples &reference) {
    double mass = 0.0;
    for (double v : reference.values) {
        mass += v;
    }
    return mass;
}

inline void check_comparable(const PatternSamples &reference, const PatternSamples &estimate) {
    if (reference.size() != estimate.size()) {
        throw SizeError("gamma: pattern lengths differ");
    }
}

} // namespace detail

/// Mean normalized L1 mismatch over the runs:
/// (1/R) sum_r [ sum_m |ref_m - est_m^(r)| / sum_m ref_m ].
inline double gamma(const PatternSamples &reference, std::span<const PatternSamples> runs) {
    if (runs.empty()) {
        throw ParameterError("gamma: no estimated patterns");
    }
    const double mass = detail::reference_mass(reference);
    double total = 0.0;
    for (const auto &run : runs) {
        detail::check_comparable(reference, run);
        double l1 = 0.0;
        for (int i = 0; i < reference.size(); ++i) {
            l1 += std::abs(reference.values[i] - run.values[i]);
        }
        total += l1 / mass;
    }
    return total / static_cast<double>(runs.size());
}

/**
 * @brief Splits the mismatch into mainlobe (display indices chi1+1..chi2-1)
 * and sidelobe (the complement) contributions.
 *
 * Both keep the full-pattern denominator, so the pair sums to the total
 * mismatch exactly.
 */
inline std::pair<double, double> gamma_split(const PatternSamples &reference,
                                             std::span<const PatternSamples> runs, int chi1,
                                             int chi2) {
    if (runs.empty()) {
        throw ParameterError("gamma_split: no estimated patterns");
    }
    if (chi1 < 0 || chi2 >= reference.size() || chi1 >= chi2) {
        throw ParameterError("gamma_split: invalid null indices");
    }
    const double mass = detail::reference_mass(reference);
    double mainlobe = 0.0;
    double sidelobe = 0.0;
    for (const auto &run : runs) {
        detail::check_comparable(reference, run);
        const auto parts = detail::accumulate_mismatch(reference, run, chi1, chi2);
        mainlobe += parts.mainlobe / mass;
        sidelobe += (parts.sidelobe_left + parts.sidelobe_right) / mass;
    }
    const double r = static_cast<double>(runs.size());
    return {mainlobe / r, sidelobe / r};
}

/// One repetition's metrics. `delta_db` is absent on the exact
/// (infinite-shot) pathway, which has no histogram.
struct RunMetrics {
    double gamma = 0.0;
    double gamma_ml = 0.0;
    double gamma_sl = 0.0;
    std::optional<double> delta_db;
};

/**
 * @brief Full comparison of R estimated patterns against one reference.
 *
 * Headline values are means over the repetitions; `gamma` is formed as
 * `gamma_ml + gamma_sl` at every level so the identity is exact.
 */
struct MatchReport {
    double gamma = 0.0;
    double gamma_ml = 0.0;
    double gamma_sl = 0.0;
    std::optional<double> delta_db;
    int chi1 = -1;
    int chi2 = -1;
    std::vector<RunMetrics> per_run;
};

/// Builds a MatchReport. Null indices come from the reference pattern
/// (locating them first if needed); `histograms` may be empty for the exact
/// pathway, otherwise it must parallel `runs`.
inline MatchReport build_match_report(PatternSamples &reference,
                                      std::span<const PatternSamples> runs,
                                      std::span<const ShotHistogram> histograms) {
    if (runs.empty()) {
        throw ParameterError("build_match_report: no estimated patterns");
    }
    if (!histograms.empty() && histograms.size() != runs.size()) {
        throw SizeError("build_match_report: histogram and pattern counts differ");
    }
    if (reference.chi1 < 0 || reference.chi2 < 0) {
        find_mainlobe_nulls(reference);
    }
    const double mass = detail::reference_mass(reference);

    MatchReport report;
    report.chi1 = reference.chi1;
    report.chi2 = reference.chi2;
    report.per_run.reserve(runs.size());

    double ml_sum = 0.0;
    double sl_sum = 0.0;
    double delta_sum = 0.0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        detail::check_comparable(reference, runs[r]);
        const auto parts =
            detail::accumulate_mismatch(reference, runs[r], reference.chi1, reference.chi2);
        RunMetrics metrics;
        metrics.gamma_ml = parts.mainlobe / mass;
        metrics.gamma_sl = (parts.sidelobe_left + parts.sidelobe_right) / mass;
        metrics.gamma = metrics.gamma_ml + metrics.gamma_sl;
        if (!histograms.empty()) {
            const auto threshold = resolution_threshold(histograms[r]);
            metrics.delta_db = threshold.db;
            delta_sum += threshold.linear;
        }
        ml_sum += metrics.gamma_ml;
        sl_sum += metrics.gamma_sl;
        report.per_run.push_back(metrics);
    }
    const double count = static_cast<double>(runs.size());
    report.gamma_ml = ml_sum / count;
    report.gamma_sl = sl_sum / count;
    report.gamma = report.gamma_ml + report.gamma_sl;
    if (!histograms.empty()) {
        report.delta_db = 10.0 * std::log10(delta_sum / count);
    }
    return report;
}

/// Flat CSV `run,gamma,gamma_ml,gamma_sl,delta_db`, one row per repetition
/// plus a `mean` summary row. The delta field is empty on the exact pathway.
inline void write_report_csv(std::ostream &out, const MatchReport &report) {
    out << "run,gamma,gamma_ml,gamma_sl,delta_db\n";
    char buffer[160];
    auto write_row = [&](const char *tag, double g, double ml, double sl,
                         const std::optional<double> &delta) {
        if (delta.has_value()) {
            std::snprintf(buffer, sizeof(buffer), "%s,%.12g,%.12g,%.12g,%.12g\n", tag, g, ml, sl,
                          *delta);
        } else {
            std::snprintf(buffer, sizeof(buffer), "%s,%.12g,%.12g,%.12g,\n", tag, g, ml, sl);
        }
        out << buffer;
    };
    for (std::size_t r = 0; r < report.per_run.size(); ++r) {
        const auto &m = report.per_run[r];
        char tag[24];
        std::snprintf(tag, sizeof(tag), "%zu", r + 1);
        write_row(tag, m.gamma, m.gamma_ml, m.gamma_sl, m.delta_db);
    }
    write_row("mean", report.gamma, report.gamma_ml, report.gamma_sl, report.delta_db);
}

} // namespace arrayqft
