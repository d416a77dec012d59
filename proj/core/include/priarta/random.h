// Copyright 2026 The PriArTa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIARTA_RANDOM_H_
#define PRIARTA_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace priarta {

// Name of the Gaussian sampling method, recorded in report metadata so that a
// second implementation can reproduce a seeded run from the same stream.
inline constexpr std::string_view kGaussianSamplerName =
    "marsaglia-polar/mt19937_64";

// Deterministic pseudo-random source. Only the engine's raw 64-bit output is
// used; the uniform and Gaussian transforms are implemented here, because the
// standard library distributions are implementation-defined and would break
// cross-platform replay.
class Prng {
 public:
  explicit Prng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double NextUniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be positive.
  uint64_t UniformIndex(uint64_t bound);

  // Standard normal draw via the Marsaglia polar method. Draws come in pairs;
  // the second value of each pair is cached for the next call.
  double NextGaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finalizer.
uint64_t MixBits(uint64_t x);

// Derives an independent stream seed from a base seed and a label (node id,
// stream purpose). Documented mixing: MixBits(base ^ MixBits(fnv1a64(label))).
uint64_t DeriveSeed(uint64_t base, std::string_view label);

// Seed drawn from OS entropy, for secure (non-replayable) runs.
uint64_t SecureSeed();

// 64-bit FNV-1a, used for seed labels and fingerprints.
uint64_t Fnv1a64(std::string_view bytes);

}  // namespace priarta

#endif  // PRIARTA_RANDOM_H_
