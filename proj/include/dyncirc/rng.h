// Copyright 2026 The dyncirc Authors
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

#ifndef DYNCIRC_RNG_H
#define DYNCIRC_RNG_H

#include <cstdint>
#include <random>

namespace dyncirc {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for stream `index` under `master`. Streams depend only on
/// (master, index), never on which worker runs them.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

inline std::mt19937_64 stream_rng(uint64_t master, uint64_t index) {
  return std::mt19937_64(derive_seed(master, index));
}

inline bool coin(std::mt19937_64 &rng) { return (rng() >> 63) != 0; }

/// Uniform double in [0, 1).
inline double uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace dyncirc

#endif
