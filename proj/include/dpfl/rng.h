//
// Copyright 2026 The dpfl Authors
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
//

// Counter-based randomness: every draw is a pure function of
// (seed, trial_index, stream), so results do not depend on how trials are
// scheduled across threads.

#ifndef DPFL_RNG_H_
#define DPFL_RNG_H_

#include <cstdint>

namespace dpfl {

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr uint64_t CounterBits(uint64_t seed, uint64_t trial_index,
                               uint64_t stream) {
  return Mix64(Mix64(Mix64(seed) ^ trial_index) ^
               (stream * 0xd6e8feb86659fd93ULL));
}

// Uniform on [0, 1) with 53 bits of resolution.
constexpr double CounterUniform(uint64_t seed, uint64_t trial_index,
                                uint64_t stream) {
  return static_cast<double>(CounterBits(seed, trial_index, stream) >> 11) *
         0x1.0p-53;
}

// Derives an independent seed for a sub-experiment.
constexpr uint64_t DeriveSeed(uint64_t seed, uint64_t label) {
  return Mix64(seed ^ Mix64(label + 0x632be59bd9b4e019ULL));
}

}  // namespace dpfl

#endif  // DPFL_RNG_H_
