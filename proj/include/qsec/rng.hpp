// Copyright 2026 The qsec Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <vector>

#include "qsec/common.hpp"

namespace qsec {

/// Deterministic SplitMix64 stream. Callers own stream splitting: there is
/// no global generator anywhere in the library, so identical seeds always
/// reproduce identical draw sequences.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    /// Counter-based split: the stream for trial `index` under a master
    /// seed is derived as mix(master ^ mix(index + 1)), one finalizer pass
    /// per operand. Trial i's draws never depend on evaluation order.
    static RngStream for_trial(std::uint64_t master, std::uint64_t index) {
        return RngStream(mix(master ^ mix(index + 1)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 bits of mantissa.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; consumes exactly two draws.
    double next_gaussian() {
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    /// Uniform index in {0, ..., n-1}.
    std::size_t next_index(std::size_t n) {
        if (n == 0) throw UsageError("RngStream::next_index: n must be >= 1");
        const std::size_t i = static_cast<std::size_t>(next_double() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

}  // namespace qsec
