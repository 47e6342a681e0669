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

#ifndef RCSIM_RNG_HPP
#define RCSIM_RNG_HPP

#include <cstdint>

namespace rcsim {

/// Role tags keeping unrelated random draws on distinct streams even when the
/// rest of the key coincides.
enum class StreamPurpose : uint64_t {
  GateDraw = 1,
  Herald = 2,
  McSample = 3,
  PatchSample = 4,
  Scratch = 5,
};

/// Identifies one independent random stream. Streams are pure functions of
/// the key, so sweeps over realizations/layers/gates can run in any order or
/// thread count and still reproduce bit-identical draws.
struct StreamKey {
  uint64_t seed = 0;
  uint64_t realization = 0;
  uint64_t layer = 0;
  uint64_t index = 0;
  StreamPurpose purpose = StreamPurpose::Scratch;
};

/// Counter-based generator (SplitMix64 output function over a keyed counter).
/// Distributions are implemented in-house so results do not depend on the
/// standard library in use.
class CounterRng {
 public:
  explicit CounterRng(const StreamKey& key);

  uint64_t next_u64();

  /// Uniform in [0, 1) with 53 bits of mantissa.
  double uniform_double();

  /// Uniform integer in [0, bound). bound must be nonzero.
  uint64_t uniform_below(uint64_t bound);

  bool bernoulli(double p) { return uniform_double() < p; }

  /// Standard normal via Box-Muller; second value of each pair is cached.
  double normal();

  using result_type = uint64_t;
  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return ~uint64_t{0}; }
  uint64_t operator()() { return next_u64(); }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Collapses a stream key into the 64-bit key driving the counter sequence.
uint64_t derive_stream_key(const StreamKey& key);

}  // namespace rcsim

#endif
