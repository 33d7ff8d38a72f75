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
 * Dense statevector register: amplitude encoding of excitation sets, the
 * gate-level Fourier-transform circuit, Born-rule probabilities, and seeded
 * measurement sampling.
 *
 * Qubit 0 is the least significant bit of the state index. The circuit ends
 * with the usual qubit-reversal swap layer so output states are in natural
 * index order.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <vector>

#include "arrayqft/errors.hpp"
#include "arrayqft/excitations.hpp"
#include "arrayqft/reference.hpp"
#include "arrayqft/rng.hpp"

namespace arrayqft {

/// Sign of the transform exponent. `negative` maps state q to
/// sum_m exp(-i 2 pi q m / Q) |m>, matching the classical array-factor
/// transform index for index; it is the default throughout.
enum class FourierSign { negative, positive };

/**
 * @brief A register of `n_qubits` qubits as a dense complex amplitude vector
 * of length 2^n_qubits.
 */
struct QuantumState {
    std::vector<std::complex<double>> amplitudes;
    int n_qubits = 0;

    std::size_t dimension() const { return amplitudes.size(); }
};

/// Qubits needed to hold max(n_elements, n_samples) basis states:
/// ceil(log2(max(N, M))).
inline int register_size(int n_elements, int n_samples) {
    if (n_elements < 1 || n_samples < 1) {
        throw ParameterError("register_size: element and sample counts must be positive");
    }
    const unsigned need = static_cast<unsigned>(std::max(n_elements, n_samples));
    int bits = 0;
    while ((1u << bits) < need) {
        ++bits;
    }
    return bits;
}

/// Loads normalized excitations into the first N basis amplitudes; the rest
/// of the register is zero. The state norm is inherited from the weights.
inline QuantumState encode(const ExcitationSet &set, int n_qubits) {
    if (!set.normalized) {
        throw ParameterError("encode: excitations must be normalized first");
    }
    if (n_qubits < 0 || n_qubits > 30) {
        throw ParameterError("encode: unsupported qubit count");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (set.weights.size() > dim) {
        throw SizeError("encode: register too small for the excitation set");
    }
    QuantumState state;
    state.n_qubits = n_qubits;
    state.amplitudes.assign(dim, {0.0, 0.0});
    std::copy(set.weights.begin(), set.weights.end(), state.amplitudes.begin());
    return state;
}

/// One gate of the transform circuit. Controlled-phase angles are the
/// dyadic rotations sign * 2 pi / 2^phase_pow.
struct QftGate {
    enum class Kind { hadamard, controlled_phase, swap };
    Kind kind;
    int q0; // target (hadamard), control (controlled_phase), first qubit (swap)
    int q1; // target (controlled_phase), second qubit (swap); unused otherwise
    int phase_pow;
};

/**
 * @brief Gate listing of the L-qubit Fourier transform.
 *
 * For each qubit from most to least significant: a Hadamard followed by the
 * ladder of controlled dyadic phase rotations from every lower qubit; then
 * the qubit-reversal swaps. Exactly L Hadamards, L(L-1)/2 controlled-phase
 * gates and floor(L/2) swaps.
 */
struct QftCircuit {
    int n_qubits = 0;
    FourierSign sign = FourierSign::negative;
    std::vector<QftGate> gates;
};

inline QftCircuit qft_circuit(int n_qubits, FourierSign sign = FourierSign::negative) {
    if (n_qubits < 0) {
        throw ParameterError("qft_circuit: negative qubit count");
    }
    QftCircuit circuit;
    circuit.n_qubits = n_qubits;
    circuit.sign = sign;
    for (int j = n_qubits - 1; j >= 0; --j) {
        circuit.gates.push_back({QftGate::Kind::hadamard, j, -1, 0});
        for (int k = j - 1; k >= 0; --k) {
            circuit.gates.push_back({QftGate::Kind::controlled_phase, k, j, j - k + 1});
        }
    }
    for (int i = 0; i < n_qubits / 2; ++i) {
        circuit.gates.push_back({QftGate::Kind::swap, i, n_qubits - 1 - i, 0});
    }
    return circuit;
}

namespace detail {

inline void apply_hadamard(std::vector<std::complex<double>> &amp, int qubit) {
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    const std::size_t pairs = amp.size() / 2;
    for (std::size_t g = 0; g < pairs; ++g) {
        const std::size_t i0 = ((g & hi) << 1) | (g & lo);
        const std::size_t i1 = i0 | mask;
        const auto a = amp[i0];
        const auto b = amp[i1];
        amp[i0] = (a + b) * inv_sqrt2;
        amp[i1] = (a - b) * inv_sqrt2;
    }
}

inline void apply_controlled_phase(std::vector<std::complex<double>> &amp, int control,
                                   int target, std::complex<double> phase) {
    const std::size_t both = (std::size_t{1} << control) | (std::size_t{1} << target);
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if ((i & both) == both) {
            amp[i] *= phase;
        }
    }
}

inline void apply_swap(std::vector<std::complex<double>> &amp, int a, int b) {
    const std::size_t bit_a = std::size_t{1} << a;
    const std::size_t bit_b = std::size_t{1} << b;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if ((i & bit_a) && !(i & bit_b)) {
            std::swap(amp[i], amp[i ^ bit_a ^ bit_b]);
        }
    }
}

} // namespace detail

/// Runs the circuit on the state, in place.
inline void apply(const QftCircuit &circuit, QuantumState &state) {
    if (circuit.n_qubits != state.n_qubits) {
        throw SizeError("apply: circuit and register width differ");
    }
    const double angle_sign = circuit.sign == FourierSign::negative ? -1.0 : 1.0;
    for (const auto &gate : circuit.gates) {
        switch (gate.kind) {
        case QftGate::Kind::hadamard:
            detail::apply_hadamard(state.amplitudes, gate.q0);
            break;
        case QftGate::Kind::controlled_phase: {
            const double angle =
                angle_sign * 2.0 * std::numbers::pi / std::ldexp(1.0, gate.phase_pow);
            detail::apply_controlled_phase(state.amplitudes, gate.q0, gate.q1,
                                           {std::cos(angle), std::sin(angle)});
            break;
        }
        case QftGate::Kind::swap:
            detail::apply_swap(state.amplitudes, gate.q0, gate.q1);
            break;
        }
    }
}

/// Gate-level Fourier transform of the register. Output amplitude m equals
/// (1/sqrt(Q)) sum_q a_q exp(sign * i 2 pi q m / Q) over the Q = 2^L states.
inline QuantumState apply_qft(QuantumState state, FourierSign sign = FourierSign::negative) {
    const auto circuit = qft_circuit(state.n_qubits, sign);
    apply(circuit, state);
    return state;
}

/// Born rule: probability of measuring basis state m is |amplitude_m|^2.
inline std::vector<double> exact_probabilities(const QuantumState &state) {
    std::vector<double> p(state.dimension());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::norm(state.amplitudes[i]);
    }
    return p;
}

/// Gate listing in application order, e.g. `H q3`, `CP(-pi/4) q1 q3`,
/// `SWAP q0 q3`.
inline void write_circuit(std::ostream &out, const QftCircuit &circuit) {
    const char *sign = circuit.sign == FourierSign::negative ? "-" : "";
    char buffer[64];
    for (const auto &gate : circuit.gates) {
        switch (gate.kind) {
        case QftGate::Kind::hadamard:
            std::snprintf(buffer, sizeof(buffer), "H q%d\n", gate.q0);
            break;
        case QftGate::Kind::controlled_phase:
            if (gate.phase_pow == 2) {
                std::snprintf(buffer, sizeof(buffer), "CP(%spi/2) q%d q%d\n", sign, gate.q0,
                              gate.q1);
            } else {
                std::snprintf(buffer, sizeof(buffer), "CP(%spi/%d) q%d q%d\n", sign,
                              1 << (gate.phase_pow - 1), gate.q0, gate.q1);
            }
            break;
        case QftGate::Kind::swap:
            std::snprintf(buffer, sizeof(buffer), "SWAP q%d q%d\n", gate.q0, gate.q1);
            break;
        }
        out << buffer;
    }
}

/**
 * @brief Measurement record: how often each basis state was observed over
 * `total_shots` executions, and the seed that produced it.
 */
struct ShotHistogram {
    std::vector<std::uint64_t> counts;
    std::uint64_t total_shots = 0;
    std::uint64_t seed = 0;
};

namespace detail {

/// Walker/Vose alias table: O(n) construction, O(1) draws.
class AliasTable {
  public:
    explicit AliasTable(const std::vector<double> &weights) {
        const std::size_t n = weights.size();
        prob_.assign(n, 0.0);
        alias_.assign(n, 0);
        double total = 0.0;
        for (double w : weights) {
            total += w;
        }
        std::vector<double> scaled(n);
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i] = weights[i] * n / total;
        }
        std::vector<std::uint32_t> small;
        std::vector<std::uint32_t> large;
        for (std::size_t i = 0; i < n; ++i) {
            (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
        }
        while (!small.empty() && !large.empty()) {
            const auto s = small.back();
            const auto l = large.back();
            small.pop_back();
            large.pop_back();
            prob_[s] = scaled[s];
            alias_[s] = l;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            (scaled[l] < 1.0 ? small : large).push_back(l);
        }
        for (auto i : large) {
            prob_[i] = 1.0;
        }
        for (auto i : small) {
            prob_[i] = 1.0; // numerical leftovers
        }
    }

    std::size_t draw(Xoshiro256StarStar &rng) const {
        const std::size_t slot =
            std::min(prob_.size() - 1,
                     static_cast<std::size_t>(rng.uniform() * static_cast<double>(prob_.size())));
        return rng.uniform() < prob_[slot] ? slot : alias_[slot];
    }

  private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

} // namespace detail

/**
 * @brief Draws `shots` independent measurements from the state's Born
 * distribution.
 *
 * The alias table makes each draw O(1); the xoshiro256** stream seeded with
 * `seed` makes the histogram a pure function of (state, shots, seed).
 */
inline ShotHistogram sample_shots(const QuantumState &state, std::uint64_t shots,
                                  std::uint64_t seed) {
    if (shots < 1) {
        throw ParameterError("sample_shots: need at least one shot");
    }
    const auto probabilities = exact_probabilities(state);
    detail::AliasTable table(probabilities);
    Xoshiro256StarStar rng(seed);
    ShotHistogram histogram;
    histogram.counts.assign(state.dimension(), 0);
    histogram.total_shots = shots;
    histogram.seed = seed;
    for (std::uint64_t t = 0; t < shots; ++t) {
        ++histogram.counts[table.draw(rng)];
    }
    return histogram;
}

/**
 * @brief Normalized pattern estimate from measured counts.
 *
 * Values are V_m / V_max in display order: the most-observed state maps to
 * exactly 1, unobserved states to exactly 0. `p_max` holds the estimated
 * peak probability V_max / shots.
 */
inline PatternSamples estimate_pattern(const ShotHistogram &histogram, const GridSpec &grid) {
    validate(grid);
    const int m = grid.n_samples;
    if (static_cast<int>(histogram.counts.size()) != m) {
        throw SizeError("estimate_pattern: histogram size does not match the grid");
    }
    std::uint64_t total = 0;
    std::uint64_t v_max = 0;
    for (auto c : histogram.counts) {
        total += c;
        v_max = std::max(v_max, c);
    }
    if (total != histogram.total_shots || total == 0) {
        throw ParameterError("estimate_pattern: counts do not sum to the shot total");
    }
    PatternSamples pattern;
    pattern.values.resize(m);
    pattern.u_grid = u_grid(grid);
    pattern.p_max = static_cast<double>(v_max) / static_cast<double>(histogram.total_shots);
    for (int i = 0; i < m; ++i) {
        pattern.values[i] = static_cast<double>(histogram.counts[display_to_state(i, m)]) /
                            static_cast<double>(v_max);
    }
    for (int i = 0; i < m; ++i) {
        if (pattern.values[i] == 1.0) {
            pattern.m_peak = i;
            break;
        }
    }
    return pattern;
}

} // namespace arrayqft
