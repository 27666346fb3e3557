// Copyright 2026 The qtad Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace qtad {

/// Source of uniform draws in [0, 1). Every stochastic decision in the
/// simulator consumes exactly one draw, so a trajectory is replayable from
/// the seed of its stream.
class RandomStream {
  public:
    virtual ~RandomStream() = default;
    virtual double next() = 0;
};

/// Mersenne Twister backed stream. Doubles are produced from the top 53 bits
/// of the 64-bit output, so the mapping from seed to draw sequence is fixed
/// by the engine alone and is identical on every platform.
class Mt64Stream final : public RandomStream {
  public:
    explicit Mt64Stream(std::uint64_t seed) : engine_(seed) {}

    double next() override {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer (Steele, Lea, Flood). Used for seed derivation only.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed-splitting rule: the stream for item `index` under `base` is seeded
/// with mix64(base, index). Fixed forever; transcripts depend on it.
constexpr std::uint64_t mix64(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base + 0x9E3779B97F4A7C15ULL * (index + 1));
}

}  // namespace qtad
