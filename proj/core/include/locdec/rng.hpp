// Copyright 2026 locdec contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCDEC_RNG_HPP
#define LOCDEC_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace locdec {

/// Name and version of the stream construction, recorded in run metadata.
inline constexpr std::string_view kPrngDescription =
    "xoshiro256++ 1.0, streams derived via splitmix64 mixing (locdec stream derivation v1)";

/// splitmix64 finalizer (Steele, Lea, Flood). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Stream-derivation mixing function: one splitmix64 round absorbing the salt,
/// then a second round for avalanche. Used as
///   cell_seed  = derive_seed(master_seed, cell_key)
///   trial_seed = derive_seed(cell_seed, trial_index)
/// so any (seed, index...) chain yields statistically independent streams.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) noexcept {
    return mix64(mix64(base ^ 0x5851F42D4C957F2DULL) + salt);
}

/// xoshiro256++ (Blackman & Vigna, public domain reference algorithm).
/// Chosen over std::mt19937_64 because the full stream, including the
/// float conversion below, is bit-reproducible across platforms.
class RngStream {
   public:
    explicit RngStream(std::uint64_t seed) noexcept {
        // Canonical seeding: fill state with successive splitmix64 outputs.
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = s;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Bernoulli trial; exact comparison so results are reproducible bit-for-bit.
    bool bernoulli(double p) noexcept {
        return uniform01() < p;
    }

   private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace locdec

#endif
