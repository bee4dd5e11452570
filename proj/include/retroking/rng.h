// Copyright 2026 The retroking Authors
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

#ifndef RETROKING_RNG_H
#define RETROKING_RNG_H

#include <cstdint>
#include <random>

namespace retroking {

/// Seeded 64-bit Mersenne Twister with platform-independent conversions.
///
/// std::uniform_real_distribution and std::normal_distribution are allowed
/// to differ between standard libraries, so the conversions to doubles are
/// done here directly on the raw 64-bit output.
class Rng {
   public:
    explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {
    }

    /// Independent stream for work item `index` of a run seeded with `seed`.
    /// Round i of a simulation always uses stream(seed, i), so rounds can be
    /// executed in any order or in parallel with identical results.
    static Rng stream(uint64_t seed, uint64_t index);

    uint64_t seed() const {
        return seed_;
    }

    uint64_t next_u64() {
        return engine_();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, n).
    uint64_t uniform_index(uint64_t n);

    /// Standard normal deviate (Box-Muller).
    double gaussian();

   private:
    uint64_t seed_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

}  // namespace retroking

#endif
