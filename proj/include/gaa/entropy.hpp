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

#ifndef GAA_ENTROPY_HPP
#define GAA_ENTROPY_HPP

#include <cstddef>

#include "gaa/core.hpp"

namespace gaa {

enum class EntropyFamily {
  kNegShannon,  // sum_i w_i log w_i
  kNegTsallis,  // (sum_i w_i^q - 1) / (q - 1), q > 0, q != 1
  kQuadratic,   // 0.5 * sum_i w_i^2
};

/// A convex function on the simplex: Phi = base_family / eta with eta > 0.
/// Dimension-free; the same spec applies to simplices of any size.
struct EntropySpec {
  EntropyFamily family = EntropyFamily::kNegShannon;
  double eta = 1.0;
  double tsallis_q = 2.0;  // meaningful for kNegTsallis only

  static EntropySpec neg_shannon(double eta = 1.0) {
    return EntropySpec{EntropyFamily::kNegShannon, eta, 2.0};
  }
  static EntropySpec neg_tsallis(double q, double eta = 1.0) {
    return EntropySpec{EntropyFamily::kNegTsallis, eta, q};
  }
  static EntropySpec quadratic(double eta = 1.0) {
    return EntropySpec{EntropyFamily::kQuadratic, eta, 2.0};
  }

  void validate() const;

  /// True when the gradient blows up on the simplex boundary (negative
  /// Shannon; Tsallis with q < 1). Callers clamp such points first.
  bool boundary_singular() const;
};

/// Controls the numeric conjugate maximization (non-Shannon families).
struct ConjugateSolverConfig {
  int max_iterations = 50000;
  double tolerance = 1e-8;  // certified optimality gap on the value
  int grid_resolution = 64;  // fallback refinement when ascent stalls
  void validate() const;
};

double entropy_value(const EntropySpec& spec, const SimplexPoint& mu);

/// A gradient selection: the coordinate-wise derivative of the natural
/// extension of Phi to the positive orthant. All consumers are invariant to
/// shifts by multiples of the all-ones vector, so the selection is harmless.
DualVector entropy_gradient(const EntropySpec& spec, const SimplexPoint& mu);

/// Phi*(v) = sup over the simplex of <mu, v> - Phi(mu). Closed form
/// (log-sum-exp) for negative Shannon; certified numeric maximization
/// otherwise.
double conjugate(const EntropySpec& spec, const DualVector& v,
                 const ConjugateSolverConfig& cfg = {});

/// The numeric maximization path regardless of family (exercised against the
/// Shannon closed form in tests).
double conjugate_numeric(const EntropySpec& spec, const DualVector& v,
                         const ConjugateSolverConfig& cfg = {});

/// The maximizer attaining Phi*(v); softmax of eta*v for negative Shannon.
SimplexPoint conjugate_gradient(const EntropySpec& spec, const DualVector& v,
                                const ConjugateSolverConfig& cfg = {});

/// Phi*(grad Phi(mu)) = <mu, grad Phi(mu)> - Phi(mu), exact by attainment.
/// Requires mu interior for boundary-singular families.
double conjugate_at_gradient(const EntropySpec& spec, const SimplexPoint& mu);

/// D_Phi(mu, mu_prime). The first argument may touch the boundary (only the
/// entropy value is taken there); the second must admit a gradient.
double bregman(const EntropySpec& spec, const SimplexPoint& mu,
               const SimplexPoint& mu_prime);

}  // namespace gaa

#endif  // GAA_ENTROPY_HPP
