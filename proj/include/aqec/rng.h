// Copyright 2026 The aqec-lab Authors
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

#ifndef AQEC_RNG_H
#define AQEC_RNG_H

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace aqec {

constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the named sub-stream `stream` of a run seeded with `seed`.
uint64_t derive_seed(uint64_t seed, std::string_view stream);

/// Seed of the `index`-th item inside a named sub-stream.
uint64_t derive_seed(uint64_t seed, std::string_view stream, uint64_t index);

/// Deterministic generator. Distribution code is written out here rather
/// than taken from <random> so draws are identical across standard
/// libraries; only the engine (fully specified by the standard) is reused.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    uint64_t next() {
        return engine_();
    }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    /// Uniform integer in [0, bound). Requires bound > 0.
    uint64_t below(uint64_t bound);
    double normal();
    /// Complex normal with E|z|^2 = 1.
    std::complex<double> complex_normal();

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

}  // namespace aqec

#endif
