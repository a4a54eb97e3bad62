// Copyright 2026 kinksim contributors
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

#ifndef KINKSIM_RNG_HPP
#define KINKSIM_RNG_HPP

#include <cstdint>

namespace kinksim {

// Counter-based randomness: every draw is a pure function of
// (seed, stream, counter). Shots can be generated in any order or in
// parallel and still reproduce byte-identical records. std::* distributions
// are implementation-defined, so uniforms are derived manually.

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t counter_hash(uint64_t seed, uint64_t stream, uint64_t counter) {
  uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ stream);
  return splitmix64(h ^ counter);
}

// Uniform in [0, 1) with 53-bit resolution.
inline double uniform_double(uint64_t seed, uint64_t stream, uint64_t counter) {
  return static_cast<double>(counter_hash(seed, stream, counter) >> 11) *
         0x1.0p-53;
}

}  // namespace kinksim

#endif
