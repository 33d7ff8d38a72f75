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
 * Classical far-field reference for a uniform linear array: zero-padded DFT
 * array factor, power pattern on the direction-cosine grid, periodic
 * interpolation between samples, and mainlobe null location.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <vector>

#include "arrayqft/errors.hpp"
#include "arrayqft/excitations.hpp"

namespace arrayqft {

/**
 * @brief Array and sampling geometry: N radiating elements spaced
 * `spacing_wl` wavelengths apart, analyzed on `n_samples` pattern samples.
 *
 * `n_samples` must be a power of two at least N, matching the qubit register
 * that produces the same samples on the quantum route.
 */
struct GridSpec {
    int n_elements = 16;
    int n_samples = 1024;
    double spacing_wl = 0.5;
};

inline bool is_power_of_two(int value) { return value > 0 && (value & (value - 1)) == 0; }

inline void validate(const GridSpec &grid) {
    if (grid.n_elements < 1) {
        throw ParameterError("grid: need at least one element");
    }
    if (!is_power_of_two(grid.n_samples)) {
        throw ParameterError("grid: sample count must be a power of two");
    }
    if (grid.n_samples < grid.n_elements) {
        throw SizeError("grid: sample count smaller than element count");
    }
    if (!(grid.spacing_wl > 0.0)) {
        throw ParameterError("grid: element spacing must be positive");
    }
}

/// Display index -> transform index. The display order ascends in direction
/// cosine; the permutation is its own inverse.
inline int display_to_state(int display_index, int n_samples) {
    const int m = n_samples;
    return ((m / 2 - display_index) % m + m) % m;
}

/// Direction cosines in display order: u[i] = (lambda/d) * (i/M - 1/2).
/// For half-wavelength spacing this is the ascending grid [-1, 1).
inline std::vector<double> u_grid(const GridSpec &grid) {
    validate(grid);
    const int m = grid.n_samples;
    if (m == 1) {
        return {0.0};
    }
    std::vector<double> u(m);
    const double period = 1.0 / grid.spacing_wl;
    for (int i = 0; i < m; ++i) {
        u[i] = period * (static_cast<double>(i) / m - 0.5);
    }
    return u;
}

/**
 * @brief Power-pattern samples in display order.
 *
 * `values` are peak-normalized (the maximum is exactly 1); `p_max` carries
 * the raw peak so the unnormalized samples can be recovered. `array_factor`
 * holds the complex transform-order samples when the pattern came from the
 * classical route; it is empty for shot-estimated patterns. `chi1`/`chi2`
 * are the mainlobe null indices, -1 until find_mainlobe_nulls has run.
 */
struct PatternSamples {
    std::vector<double> values;
    std::vector<double> u_grid;
    int m_peak = 0;
    int chi1 = -1;
    int chi2 = -1;
    double p_max = 0.0;
    std::vector<std::complex<double>> array_factor;

    int size() const { return static_cast<int>(values.size()); }
};

/**
 * @brief Zero-padded transform of the normalized excitations:
 * A_m = sum_n w_n exp(-i 2 pi n m / M), m = 0..M-1.
 *
 * Direct evaluation against a precomputed root table; the sizes involved
 * keep the O(N M) cost negligible.
 */
inline std::vector<std::complex<double>> dft_array_factor(const ExcitationSet &set,
                                                          const GridSpec &grid) {
    validate(grid);
    if (!set.normalized) {
        throw ParameterError("dft_array_factor: excitations must be normalized");
    }
    const int n = set.size();
    const int m = grid.n_samples;
    if (m < n) {
        throw SizeError("dft_array_factor: grid cannot hold the excitations");
    }
    std::vector<std::complex<double>> roots(m);
    for (int k = 0; k < m; ++k) {
        roots[k] = std::polar(1.0, -2.0 * std::numbers::pi * k / m);
    }
    std::vector<std::complex<double>> out(m);
    for (int i = 0; i < m; ++i) {
        std::complex<double> acc{0.0, 0.0};
        for (int q = 0; q < n; ++q) {
            acc += set.weights[q] * roots[static_cast<int>((static_cast<long long>(q) * i) % m)];
        }
        out[i] = acc;
    }
    return out;
}

/// Squared-magnitude pattern of the array-factor samples, reordered for
/// display and peak-normalized.
inline PatternSamples power_pattern(const std::vector<std::complex<double>> &array_factor,
                                    const GridSpec &grid) {
    validate(grid);
    const int m = grid.n_samples;
    if (static_cast<int>(array_factor.size()) != m) {
        throw SizeError("power_pattern: array factor size does not match the grid");
    }
    std::vector<double> raw(m);
    double p_max = 0.0;
    for (int i = 0; i < m; ++i) {
        raw[i] = std::norm(array_factor[i]);
        p_max = std::max(p_max, raw[i]);
    }
    if (p_max == 0.0) {
        throw ParameterError("power_pattern: identically zero pattern");
    }
    PatternSamples pattern;
    pattern.values.resize(m);
    pattern.u_grid = u_grid(grid);
    pattern.p_max = p_max;
    pattern.array_factor = array_factor;
    for (int i = 0; i < m; ++i) {
        pattern.values[i] = raw[display_to_state(i, m)] / p_max;
    }
    // First display index attaining the maximum.
    for (int i = 0; i < m; ++i) {
        if (pattern.values[i] == 1.0) {
            pattern.m_peak = i;
            break;
        }
    }
    return pattern;
}

/// sin(order x) / (order sin x) with its removable singularities.
inline double periodic_sinc(int order, double x) {
    const double k = std::round(x / std::numbers::pi);
    const double t = x - k * std::numbers::pi;
    const long long parity = static_cast<long long>(k) * (order - 1);
    const double sign = (parity % 2 == 0) ? 1.0 : -1.0;
    if (std::abs(t) < 1e-9) {
        return sign * (1.0 - (static_cast<double>(order) * order - 1.0) * t * t / 6.0);
    }
    return sign * std::sin(order * t) / (order * std::sin(t));
}

namespace detail {

/// Interpolation kernel for one transform sample: the order-M periodic sinc
/// together with the phase factor that makes the node sum reproduce the
/// underlying trigonometric polynomial exactly.
inline std::complex<double> dirichlet_kernel(int m_samples, double x) {
    const double k = std::round(x / std::numbers::pi);
    const double t = x - k * std::numbers::pi;
    double ratio;
    if (std::abs(t) < 1e-9) {
        ratio = 1.0 - (static_cast<double>(m_samples) * m_samples - 1.0) * t * t / 6.0;
    } else {
        ratio = std::sin(m_samples * t) / (m_samples * std::sin(t));
    }
    const double phase = (m_samples - 1.0) * t;
    return {ratio * std::cos(phase), ratio * std::sin(phase)};
}

} // namespace detail

/**
 * @brief Continuous array factor at direction cosine `u` from the pattern's
 * transform samples.
 *
 * A(u) = sum_m A_m K(pi d u + pi m / M) with the periodic kernel K; the
 * value at a grid node reproduces that node's sample, and between nodes the
 * sum equals the direct element summation because the array factor is a
 * trigonometric polynomial of degree below M.
 */
inline std::complex<double> interpolate(const PatternSamples &pattern, double u,
                                        const GridSpec &grid) {
    if (pattern.array_factor.empty()) {
        throw ParameterError("interpolate: pattern carries no complex array-factor samples");
    }
    if (!(u >= -1.0 && u <= 1.0)) {
        throw DomainError("interpolate: direction cosine outside [-1, 1]");
    }
    const int m = grid.n_samples;
    if (static_cast<int>(pattern.array_factor.size()) != m) {
        throw SizeError("interpolate: pattern does not match the grid");
    }
    std::complex<double> acc{0.0, 0.0};
    const double base = std::numbers::pi * grid.spacing_wl * u;
    for (int i = 0; i < m; ++i) {
        const double x = base + std::numbers::pi * i / m;
        acc += pattern.array_factor[i] * detail::dirichlet_kernel(m, x);
    }
    return acc;
}

/**
 * @brief Locates the first local minimum on each side of the pattern peak.
 *
 * Scanning outward from the peak, an index qualifies when it is no larger
 * than both neighbors and strictly smaller than at least one, so plateaus
 * resolve toward the peak. Reaching the array edge without a minimum raises
 * NullNotFoundError. The indices are stored on the pattern and returned.
 */
inline std::pair<int, int> find_mainlobe_nulls(PatternSamples &pattern) {
    const int m = pattern.size();
    if (m < 3) {
        throw NullNotFoundError("find_mainlobe_nulls: pattern too short");
    }
    const auto &v = pattern.values;
    const int peak = pattern.m_peak;
    auto scan = [&](int step) -> int {
        for (int i = peak + step; i > 0 && i < m - 1; i += step) {
            const bool flat_ok = v[i] <= v[i - 1] && v[i] <= v[i + 1];
            const bool strict = v[i] < v[i - 1] || v[i] < v[i + 1];
            if (flat_ok && strict) {
                return i;
            }
        }
        throw NullNotFoundError("find_mainlobe_nulls: no local minimum beside the peak");
    };
    pattern.chi1 = scan(-1);
    pattern.chi2 = scan(+1);
    return {pattern.chi1, pattern.chi2};
}

/// dB value used in pattern exports; exact zeros map to the documented
/// -120 dB sentinel so logarithmic plots stay finite.
inline double pattern_db(double linear) {
    return linear > 0.0 ? 10.0 * std::log10(linear) : -120.0;
}

/// CSV rows `u,value_db,value_linear` in display order, one per sample.
inline void write_pattern_csv(std::ostream &out, const PatternSamples &pattern) {
    out << "u,value_db,value_linear\n";
    char buffer[128];
    for (int i = 0; i < pattern.size(); ++i) {
        std::snprintf(buffer, sizeof(buffer), "%.12g,%.12g,%.12g\n", pattern.u_grid[i],
                      pattern_db(pattern.values[i]), pattern.values[i]);
        out << buffer;
    }
}

} // namespace arrayqft
