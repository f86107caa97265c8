// Copyright 2026 The ccauchy Authors.
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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace ccauchy {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// SplitMix64 (Vigna, public domain). Tiny state, passes the usual statistical
// batteries, and cheap enough to seed one independent generator per draw.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log() argument.
  double next_open() { return 1.0 - next_double(); }

  /// One pair of independent standard normals (Box-Muller).
  void next_normal_pair(double& a, double& b) {
    const double r = std::sqrt(-2.0 * std::log(next_open()));
    const double t = 2.0 * kPi * next_double();
    a = r * std::cos(t);
    b = r * std::sin(t);
  }

  /// Standard complex Gaussian: unit total variance, so the real and
  /// imaginary parts each carry variance 1/2.
  std::complex<double> next_complex_gaussian() {
    double a = 0.0;
    double b = 0.0;
    next_normal_pair(a, b);
    constexpr double inv_sqrt2 = 0.7071067811865475244008443621048490;
    return {a * inv_sqrt2, b * inv_sqrt2};
  }

 private:
  std::uint64_t state_;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Seed-splitting rule: the generator for logical index `index` under a user
// seed and a per-purpose salt is SplitMix64(stream_seed(seed, index, salt)).
// Streams for distinct (index, salt) pairs are independent, so generating a
// run in disjoint index chunks reproduces the sequential output exactly.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index,
                                 std::uint64_t salt) {
  std::uint64_t s = detail::mix64(seed + 0x9e3779b97f4a7c15ULL);
  s = detail::mix64(s ^ detail::mix64(index + 0xbf58476d1ce4e5b9ULL));
  s = detail::mix64(s ^ detail::mix64(salt + 0x94d049bb133111ebULL));
  return s;
}

// Stream salts, one per randomized operation.
namespace salt {
inline constexpr std::uint64_t kSample = 0x53414d50;        // draws of a distribution
inline constexpr std::uint64_t kSampleRetry = 0x53414d51;   // one-shot degenerate retry
inline constexpr std::uint64_t kSphere = 0x53504852;        // uniform sphere points
inline constexpr std::uint64_t kSphereRetry = 0x53504853;
inline constexpr std::uint64_t kUnitary = 0x554e4954;       // Haar unitary generation
inline constexpr std::uint64_t kGinibre = 0x47494e42;       // guarded invertible draws
inline constexpr std::uint64_t kPermutation = 0x5045524d;   // permutation resampling
inline constexpr std::uint64_t kClosure = 0x434c4f53;       // closure experiment phases
}  // namespace salt

}  // namespace ccauchy
