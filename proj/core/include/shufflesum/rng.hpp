// Copyright 2026 The shufflesum Authors
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

#ifndef SHUFFLESUM_RNG_HPP
#define SHUFFLESUM_RNG_HPP

#include <cstdint>

namespace shufflesum {

// SplitMix64 finalizer; the mixing primitive behind stream derivation.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Cheap, splittable random stream (xoshiro256++ seeded via SplitMix64).
//
// Streams are derived purely from 64-bit keys by a counter scheme:
//
//   root stream        key = seed
//   child i of key k   key = splitmix64(k ^ splitmix64(i + 1))
//
// so `root.split(trial).split(user)` names the same stream on every run
// and under any thread schedule. Streams are cheap to construct (four
// SplitMix64 steps); callers own a stream exclusively while sampling.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {
    std::uint64_t s = key;
    for (auto& word : state_) word = s = splitmix64(s);
  }

  std::uint64_t key() const { return key_; }

  RandomStream split(std::uint64_t index) const {
    return RandomStream(splitmix64(key_ ^ splitmix64(index + 1)));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return (next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling over the top multiple of bound.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t key_;
  std::uint64_t state_[4];
};

}  // namespace shufflesum

#endif  // SHUFFLESUM_RNG_HPP
