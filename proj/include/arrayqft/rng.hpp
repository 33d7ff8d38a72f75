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
 * Deterministic random-number machinery.
 *
 * The standard library's engines are portable but its distributions are not,
 * so everything here is pinned: SplitMix64 for seed mixing and derivation,
 * xoshiro256** (Blackman/Vigna) as the draw engine, and an explicit 53-bit
 * mantissa mapping for uniform doubles. Identical seeds give identical
 * streams on every platform.
 */

#pragma once

#include <cstdint>

namespace arrayqft {

/// SplitMix64 finalizer. Bijective 64-bit mixing step.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed for coordinates (a, b) under a master
/// seed: seed(master, a, b) = mix64(mix64(mix64(master) ^ (a+1)) ^ (b+1)).
/// Used by the experiment runner with a = sweep index, b = repetition index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(mix64(master) ^ (a + 1)) ^ (b + 1));
}

/**
 * @brief xoshiro256** generator, seeded through SplitMix64.
 *
 * State is the four successive SplitMix64 outputs of the seed, per the
 * authors' seeding recommendation. Satisfies UniformRandomBitGenerator.
 */
class Xoshiro256StarStar {
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256StarStar(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto &word : state_) {
            word = mix64(x);
            x = word;
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4]{};
};

} // namespace arrayqft
