// Copyright 2026 The Prophet Samples Authors.
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

#ifndef PROPHET_RANDOM_H_
#define PROPHET_RANDOM_H_

#include <array>
#include <cstdint>
#include <limits>

namespace prophet {

// Philox4x32-10 block function. Exposed for known-answer tests.
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

// Counter-based generator. The (seed, stream) pair fully determines the
// sequence, so replication r of an experiment can be regenerated on any
// worker without touching the state of any other replication.
//
// Satisfies UniformRandomBitGenerator, so the <random> distributions accept
// it directly.
class CounterRng {
 public:
  using result_type = uint64_t;

  CounterRng(uint64_t seed, uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  void refill();

  uint64_t seed_;
  uint64_t stream_;
  uint64_t block_ = 0;
  std::array<uint32_t, 4> buffer_{};
  int used_ = 4;
};

// Substream tags for per-replication randomness. Threshold (sample-set)
// randomness and online-value randomness never share a stream.
enum class Substream : uint64_t {
  kSamples = 0,
  kValues = 1,
  kAux = 2,
};

inline CounterRng replication_rng(uint64_t seed, uint64_t replication,
                                  Substream purpose) {
  return CounterRng(seed, (replication << 2) | static_cast<uint64_t>(purpose));
}

}  // namespace prophet

#endif  // PROPHET_RANDOM_H_
