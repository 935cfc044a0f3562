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

#include "gaa/losses.hpp"

#include <cmath>
#include <string>

namespace gaa {

void LossSpec::validate() const {
  if (outcome_count < 2) throw InvalidInputError("loss spec: outcome_count must be >= 2");
  if (family == LossFamily::kProperFromEntropy) proper_entropy.validate();
}

bool LossSpec::finite_at_vertices() const {
  switch (family) {
    case LossFamily::kLog:
      return false;
    case LossFamily::kBrier:
      return true;
    case LossFamily::kProperFromEntropy:
      return !proper_entropy.boundary_singular();
  }
  return false;
}

void ExpertPanel::validate(std::size_t outcome_count) const {
  if (predictions.empty()) throw InvalidInputError("expert panel: at least one expert required");
  for (const SimplexPoint& p : predictions) {
    if (p.dimension() != outcome_count)
      throw InvalidInputError("expert panel: prediction dimension mismatch");
  }
}

namespace {

void check_outcome(const LossSpec& loss, std::size_t x) {
  if (x >= loss.outcome_count) throw InvalidInputError("loss: outcome index out of range");
}

}  // namespace

std::vector<double> loss_vector(const LossSpec& loss, const SimplexPoint& p) {
  loss.validate();
  if (p.dimension() != loss.outcome_count)
    throw InvalidInputError("loss: prediction dimension mismatch");
  const std::size_t n = loss.outcome_count;
  std::vector<double> out(n);
  switch (loss.family) {
    case LossFamily::kLog:
      for (std::size_t x = 0; x < n; ++x) {
        if (p[x] <= 0.0)
          throw InfiniteLossError("log loss: zero probability at outcome " + std::to_string(x));
        out[x] = -std::log(p[x]);
      }
      return out;
    case LossFamily::kBrier: {
      double sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) sq += p[i] * p[i];
      // sum_x' ([x = x'] - p(x'))^2 = 1 - 2 p(x) + ||p||^2
      for (std::size_t x = 0; x < n; ++x) out[x] = 1.0 - 2.0 * p[x] + sq;
      return out;
    }
    case LossFamily::kProperFromEntropy:
      return proper_loss_from_entropy(loss.proper_entropy, p);
  }
  return out;
}

double loss_at(const LossSpec& loss, const SimplexPoint& p, std::size_t x) {
  loss.validate();
  check_outcome(loss, x);
  if (p.dimension() != loss.outcome_count)
    throw InvalidInputError("loss: prediction dimension mismatch");
  switch (loss.family) {
    case LossFamily::kLog:
      if (p[x] <= 0.0)
        throw InfiniteLossError("log loss: zero probability at outcome " + std::to_string(x));
      return -std::log(p[x]);
    case LossFamily::kBrier: {
      double sq = 0.0;
      for (std::size_t i = 0; i < p.dimension(); ++i) sq += p[i] * p[i];
      return 1.0 - 2.0 * p[x] + sq;
    }
    case LossFamily::kProperFromEntropy:
      return proper_loss_from_entropy(loss.proper_entropy, p)[x];
  }
  return 0.0;
}

std::vector<double> loss_gradient(const LossSpec& loss, const SimplexPoint& p,
                                  std::size_t x) {
  loss.validate();
  check_outcome(loss, x);
  const std::size_t n = loss.outcome_count;
  std::vector<double> g(n, 0.0);
  switch (loss.family) {
    case LossFamily::kLog:
      if (p[x] <= 0.0)
        throw InfiniteLossError("log loss: zero probability at outcome " + std::to_string(x));
      g[x] = -1.0 / p[x];
      return g;
    case LossFamily::kBrier:
      for (std::size_t i = 0; i < n; ++i) g[i] = 2.0 * p[i];
      g[x] -= 2.0;
      return g;
    case LossFamily::kProperFromEntropy: {
      // d lambda_x / dp = H_Phi(p) (p - e_x) for separable Phi.
      const EntropySpec& spec = loss.proper_entropy;
      for (std::size_t i = 0; i < n; ++i) {
        double curvature;
        switch (spec.family) {
          case EntropyFamily::kNegShannon:
            // Floored so near-boundary candidates get a large finite
            // direction; the solver's backtracking does the rest.
            curvature = 1.0 / std::max(p[i], 1e-12);
            break;
          case EntropyFamily::kNegTsallis:
            curvature = spec.tsallis_q *
                        std::pow(std::max(p[i], 1e-12), spec.tsallis_q - 2.0);
            break;
          case EntropyFamily::kQuadratic:
            curvature = 1.0;
            break;
          default:
            curvature = 0.0;
        }
        const double diff = p[i] - (i == x ? 1.0 : 0.0);
        g[i] = curvature * diff / spec.eta;
      }
      return g;
    }
  }
  return g;
}

Assessment assessment(const LossSpec& loss, const ExpertPanel& panel, std::size_t x) {
  loss.validate();
  check_outcome(loss, x);
  panel.validate(loss.outcome_count);
  std::vector<double> values(panel.expert_count());
  for (std::size_t i = 0; i < panel.expert_count(); ++i) {
    values[i] = loss_at(loss, panel.predictions[i], x);
  }
  return Assessment{DualVector(std::move(values)), x};
}

std::vector<double> proper_loss_from_entropy(const EntropySpec& phi_x,
                                             const SimplexPoint& mu) {
  const DualVector g = entropy_gradient(phi_x, mu);  // boundary error when singular
  const double potential = conjugate_at_gradient(phi_x, mu);
  std::vector<double> lambda(mu.dimension());
  for (std::size_t i = 0; i < mu.dimension(); ++i) lambda[i] = potential - g[i];
  return lambda;
}

double propriety_gap(const EntropySpec& phi_x, const SimplexPoint& mu,
                     const SimplexPoint& mu_prime) {
  if (mu.dimension() != mu_prime.dimension())
    throw InvalidInputError("propriety gap: dimension mismatch");
  const std::vector<double> at_other = proper_loss_from_entropy(phi_x, mu_prime);
  const std::vector<double> at_truth = proper_loss_from_entropy(phi_x, mu);
  double gap = 0.0;
  for (std::size_t i = 0; i < mu.dimension(); ++i) {
    gap += mu[i] * (at_other[i] - at_truth[i]);
  }
  return gap;
}

}  // namespace gaa
