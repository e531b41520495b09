// SPDX-License-Identifier: Apache-2.0
//
// riscade - cooperative double-RIS MIMO ergodic-rate analysis and design
// Copyright (C) 2026 The riscade authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace riscade {

/// Counter-seeded xoshiro256** stream with explicit substream derivation.
///
/// Every stochastic operation in the library takes a (seed, stream...) tuple
/// so that Monte-Carlo trials map onto disjoint, order-independent streams.
/// The generator is self-contained: results are bit-identical across
/// platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { seed_state(seed); }

  /// Independent stream addressed by (seed, a) or (seed, a, b).
  static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t mixed = splitmix(seed + 0x9e3779b97f4a7c15ULL * (a + 1));
    mixed = splitmix(mixed ^ (0xbf58476d1ce4e5b9ULL * (b + 1)));
    return Rng(mixed);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a logarithm argument.
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via the Box-Muller transform (no rejection loop).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double phi = 2.0 * pi() * uniform();
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  /// Circularly symmetric complex normal with unit total variance.
  std::complex<double> cnormal() {
    const double r = std::sqrt(-std::log(uniform_pos()));
    const double phi = 2.0 * pi() * uniform();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  static constexpr double pi() { return 3.141592653589793238462643383279502884; }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t splitmix(std::uint64_t&& x) {
    std::uint64_t v = x;
    return splitmix(v);
  }

  void seed_state(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) word = splitmix(x);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // xoshiro forbids all-zero
  }

  std::uint64_t s_[4] = {};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace riscade
