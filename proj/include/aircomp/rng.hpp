// SPDX-License-Identifier: Apache-2.0
//
// aircomp-dg: discriminant-gain analysis and precoding for over-the-air
// aggregated multi-sensor edge inference
// Copyright (C) 2026 the aircomp-dg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef AIRCOMP_RNG_HPP
#define AIRCOMP_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace aircomp {

// splitmix64 finalizer; used to derive independent child seeds from a master
// seed so that parallel trials consume disjoint streams in any execution order.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    return mix64(base ^ mix64(tag + 0x632be59bd9b4e019ULL));
}

// Stream tags for the per-trial substreams. Keeping channel, feature, and
// noise draws on separate streams makes trial outcomes comparable across
// schemes that consume different subsets of them.
inline constexpr std::uint64_t kChannelStream = 0xc4a2;
inline constexpr std::uint64_t kFeatureStream = 0xfea7;
inline constexpr std::uint64_t kNoiseStream = 0x0153;

/// Seeded generator with explicit uniform/normal mappings. mt19937_64 output
/// is specified by the standard, and the double conversions below avoid
/// std::normal_distribution, whose draw sequence differs across standard
/// libraries; a given seed therefore produces one stream everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; pairs are cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] keeps the log finite.
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Circularly-symmetric complex normal with unit total variance
    /// (real and imaginary parts each have variance 1/2).
    std::complex<double> cnormal() {
        const double re = normal();
        const double im = normal();
        return {re * M_SQRT1_2, im * M_SQRT1_2};
    }

    /// Uniform integer in [0, n).
    int below(int n) {
        return static_cast<int>(uniform() * n);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace aircomp

#endif // AIRCOMP_RNG_HPP
