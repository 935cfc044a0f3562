/*
 * Copyright 2026 The gaa Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GAA_RNG_HPP
#define GAA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gaa/errors.hpp"

namespace gaa {

/// Deterministic, platform-independent pseudo-random generator.
///
/// The core generator is SplitMix64 (Steele, Lea & Flood 2014). Independent
/// streams are derived by hashing (seed, purpose, index): the purpose string
/// is folded with FNV-1a and both values are absorbed through SplitMix64
/// steps. All floating-point derivations (uniforms, Dirichlet, categorical)
/// are implemented here so that traces reproduce bit-for-bit across
/// platforms; nothing from <random> is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Independent stream derived from (seed, purpose, index).
  static Rng stream(std::uint64_t seed, std::string_view purpose,
                    std::uint64_t index) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
    for (char c : purpose) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ull;
    }
    Rng r(seed);
    r.state_ = mix(r.state_ + h);
    r.state_ = mix(r.state_ + index);
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix_output(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  std::size_t next_index(std::size_t n) {
    // n is tiny in this codebase; modulo bias is negligible and deterministic.
    return static_cast<std::size_t>(next_u64() % static_cast<std::uint64_t>(n));
  }

  /// Standard normal via Box-Muller.
  double next_normal() {
    double u1 = next_double();
    double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  /// Dirichlet(1,...,1): normalized unit exponentials.
  std::vector<double> dirichlet_uniform(std::size_t n) {
    std::vector<double> g(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double u = next_double();
      g[i] = -std::log1p(-u);
      sum += g[i];
    }
    if (sum <= 0.0) {
      for (std::size_t i = 0; i < n; ++i) g[i] = 1.0 / static_cast<double>(n);
      return g;
    }
    for (std::size_t i = 0; i < n; ++i) g[i] /= sum;
    return g;
  }

  /// Index sampled from an (unnormalized is fine) nonnegative weight vector.
  std::size_t categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw InvalidInputError("categorical: negative weight");
      total += w;
    }
    if (total <= 0.0) throw InvalidInputError("categorical: zero total weight");
    double u = next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.size() - 1;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    return mix_output(z);
  }
  static std::uint64_t mix_output(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace gaa

#endif  // GAA_RNG_HPP
