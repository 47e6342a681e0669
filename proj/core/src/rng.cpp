// Copyright 2026 The rcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rcsim/rng.hpp"

#include <cmath>

namespace rcsim {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (Steele/Lea/Flood; Vigna's constants).
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline uint64_t combine(uint64_t h, uint64_t v) {
  return mix64(h ^ (v + kGolden + (h << 6) + (h >> 2)));
}

}  // namespace

uint64_t derive_stream_key(const StreamKey& key) {
  uint64_t h = mix64(key.seed + kGolden);
  h = combine(h, key.realization);
  h = combine(h, key.layer);
  h = combine(h, key.index);
  h = combine(h, static_cast<uint64_t>(key.purpose));
  return h;
}

CounterRng::CounterRng(const StreamKey& key) : key_(derive_stream_key(key)) {}

uint64_t CounterRng::next_u64() {
  return mix64(key_ + (++counter_) * kGolden);
}

double CounterRng::uniform_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t CounterRng::uniform_below(uint64_t bound) {
  // Masked rejection: unbiased and cheap for small bounds.
  uint64_t mask = ~uint64_t{0};
  uint64_t b = bound - 1;
  mask >>= (b == 0) ? 63 : __builtin_clzll(b);
  for (;;) {
    uint64_t v = next_u64() & mask;
    if (v < bound) return v;
  }
}

double CounterRng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform_double();
  double u2 = uniform_double();
  while (u1 <= 0.0) u1 = uniform_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

}  // namespace rcsim
