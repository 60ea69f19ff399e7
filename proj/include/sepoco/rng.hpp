// Copyright (C) 2026 The sepoco Authors. All Rights reserved.
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

#pragma once

#include <cstdint>

namespace sepoco {

// Splittable counter-based generator.
//
// The i-th raw draw (i = 0, 1, ...) of a generator with key k is
//   mix64(k + (i + 1) * 0x9E3779B97F4A7C15)
// where mix64 is the SplitMix64 finalizer:
//   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27; z *= 0x94D049BB133111EB;
//   z ^= z >> 31.
// The root key is mix64(seed). split(s) derives the child key
// mix64(key ^ mix64(s + 0xD1B54A32D192ED03)), independent of the parent counter.
//
// uniform() = (draw >> 11) * 2^-53, in [0, 1).
// normal() is Box-Muller on two uniforms u1, u2:
//   sqrt(-2 log(1 - u1)) * cos(2 pi u2); the sine half is discarded.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed);

  static std::uint64_t mix64(std::uint64_t z);

  CounterRng split(std::uint64_t stream) const;
  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  double uniform();
  double uniform(double lo, double hi);
  double normal();
  // +1 or -1; +1 with probability p.
  double sign(double p = 0.5);
  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  struct FromKey {};
  CounterRng(FromKey, std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sepoco
