// Copyright 2026 The nisqlab Authors
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
#include <random>

namespace nisq {

/// SplitMix64 finalizer. Used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Stable per-task seed from (master seed, cell index, instance index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t instance) noexcept;

/// Seeded generator with platform-independent derived distributions.
///
/// std::mt19937_64 is bit-exact across standard libraries but the
/// std::*_distribution adaptors are not, so the draws below are computed
/// directly from the raw 64-bit stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound), bound > 0, without modulo bias.
  std::uint64_t below(std::uint64_t bound);

  /// Fair coin.
  bool coin() { return (next_u64() >> 63) != 0; }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace nisq
