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

#ifndef GAA_LOSSES_HPP
#define GAA_LOSSES_HPP

#include <cstddef>
#include <vector>

#include "gaa/core.hpp"
#include "gaa/entropy.hpp"

namespace gaa {

enum class LossFamily {
  kLog,               // l_x(p) = -log p(x)
  kBrier,             // l_x(p) = sum_x' ([x == x'] - p(x'))^2
  kProperFromEntropy  // the proper loss built from an entropy on the outcomes
};

struct LossSpec {
  LossFamily family = LossFamily::kLog;
  std::size_t outcome_count = 2;
  EntropySpec proper_entropy;  // meaningful for kProperFromEntropy only

  static LossSpec log_loss(std::size_t outcomes) {
    return LossSpec{LossFamily::kLog, outcomes, EntropySpec{}};
  }
  static LossSpec brier(std::size_t outcomes) {
    return LossSpec{LossFamily::kBrier, outcomes, EntropySpec{}};
  }
  static LossSpec proper_from_entropy(const EntropySpec& phi_x, std::size_t outcomes) {
    return LossSpec{LossFamily::kProperFromEntropy, outcomes, phi_x};
  }

  void validate() const;
  /// True when every loss component stays finite at simplex vertices.
  bool finite_at_vertices() const;
};

/// One prediction per expert, all over the same outcome set.
struct ExpertPanel {
  std::vector<SimplexPoint> predictions;

  std::size_t expert_count() const { return predictions.size(); }
  void validate(std::size_t outcome_count) const;
};

/// Per-expert losses at a realized outcome.
struct Assessment {
  DualVector values;
  std::size_t outcome;
};

/// Full loss vector: component x is l_x(p).
std::vector<double> loss_vector(const LossSpec& loss, const SimplexPoint& p);

/// Single component l_x(p).
double loss_at(const LossSpec& loss, const SimplexPoint& p, std::size_t x);

/// d/dp of l_x(p) (natural extension off the simplex); used by the
/// substitution solver.
std::vector<double> loss_gradient(const LossSpec& loss, const SimplexPoint& p,
                                  std::size_t x);

Assessment assessment(const LossSpec& loss, const ExpertPanel& panel, std::size_t x);

/// lambda(mu) = Phi*(grad Phi(mu)) 1 - grad Phi(mu): the proper loss of an
/// entropy on the outcome simplex.
std::vector<double> proper_loss_from_entropy(const EntropySpec& phi_x,
                                             const SimplexPoint& mu);

/// <mu, lambda(mu_prime)> - <mu, lambda(mu)>; equals D_Phi(mu, mu_prime).
double propriety_gap(const EntropySpec& phi_x, const SimplexPoint& mu,
                     const SimplexPoint& mu_prime);

}  // namespace gaa

#endif  // GAA_LOSSES_HPP
