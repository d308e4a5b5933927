// Copyright 2026 The dpcomm Authors
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

#ifndef DPCOMM_RNG_H_
#define DPCOMM_RNG_H_

#include <cstdint>
#include <limits>

namespace dpcomm {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr uint64_t Mix64(uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent child seed. Streams keyed by distinct (seed, a, b)
// triples do not overlap in practice, so Monte-Carlo results depend only on
// the keys and never on the order in which streams are consumed.
constexpr uint64_t DeriveSeed(uint64_t seed, uint64_t a, uint64_t b = 0) noexcept {
  uint64_t h = Mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = Mix64(h ^ (a + 0x632be59bd9b4e019ULL));
  return Mix64(h ^ (b + 0x85157af5ULL * 0x100000001ULL));
}

// Seedable SplitMix64 stream; models std::uniform_random_bit_generator.
class Stream {
 public:
  using result_type = uint64_t;

  explicit constexpr Stream(uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return Mix64(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  bool Coin() noexcept { return ((*this)() >> 63) != 0; }

  Stream Split(uint64_t key) const noexcept {
    return Stream(DeriveSeed(state_, key));
  }

 private:
  uint64_t state_;
};

}  // namespace dpcomm

#endif  // DPCOMM_RNG_H_
