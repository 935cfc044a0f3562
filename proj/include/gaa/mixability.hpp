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

#ifndef GAA_MIXABILITY_HPP
#define GAA_MIXABILITY_HPP

#include <cstdint>
#include <vector>

#include "gaa/core.hpp"
#include "gaa/entropy.hpp"
#include "gaa/losses.hpp"

namespace gaa {

/// Right-hand side of the mixability inequality, one entry per outcome.
struct MixBound {
  std::vector<double> per_outcome;
};

struct SubstitutionResult {
  SimplexPoint prediction;
  double worst_slack;  // max over outcomes of loss(prediction) - bound
  bool feasible;       // worst_slack <= slack_tolerance
};

struct SubstitutionConfig {
  double slack_tolerance = 1e-7;
  int grid_seed_resolution = 32;
  int descent_iterations = 400;
  int descent_starts = 4;
  ConjugateSolverConfig conjugate{};
  void validate() const;
};

struct MixabilityWitness {
  SimplexPoint mixture;
  ExpertPanel panel;
  double slack;
  std::uint64_t sample_index;
};

struct MixabilityVerdict {
  bool mixable_on_samples = true;
  std::vector<MixabilityWitness> witness_failures;
  std::uint64_t samples_tested = 0;
};

struct CertifyConfig {
  SubstitutionConfig substitution{};
  std::vector<std::size_t> expert_counts{2, 3};
  double boundary_epsilon = 1e-6;  // clamp for panels when vertices are unsafe
  // A recorded failure additionally needs a grid certificate above this
  // multiple of the slack tolerance; a local solver alone cannot prove
  // infeasibility.
  double certificate_factor = 10.0;
};

struct EtaSearchResult {
  double lower = 0.0;
  double upper = 0.0;
  double midpoint() const { return 0.5 * (lower + upper); }
  std::uint64_t oracle_calls = 0;
};

/// Potential-difference bound: Phi*(grad Phi(mu)) - Phi*(grad Phi(mu) - a(x)).
MixBound mix_bound(const EntropySpec& phi, const SimplexPoint& mu,
                   const ExpertPanel& panel, const LossSpec& loss,
                   const ConjugateSolverConfig& cfg = {});

/// Same bound through the proper-loss form -Phi*(-lambda(mu) - a(x)); agrees
/// with mix_bound by translation invariance. Exposed for the equivalence
/// tests.
MixBound mix_bound_via_proper_loss(const EntropySpec& phi, const SimplexPoint& mu,
                                   const ExpertPanel& panel, const LossSpec& loss,
                                   const ConjugateSolverConfig& cfg = {});

/// Grid-minimized inf over mu' of <mu', a(x)> + D_Phi(mu', mu).
MixBound mix_bound_primal(const EntropySpec& phi, const SimplexPoint& mu,
                          const ExpertPanel& panel, const LossSpec& loss,
                          std::size_t grid_resolution);

/// Minimizes the worst per-outcome slack over predictions: projected
/// first-order descent seeded from a coarse grid plus analytic candidates
/// (the Bayes mixture and the closed-form minimax points of the log, Brier
/// and matched proper-loss families).
SubstitutionResult find_substitution(const EntropySpec& phi, const SimplexPoint& mu,
                                     const ExpertPanel& panel, const LossSpec& loss,
                                     const SubstitutionConfig& cfg = {});

/// Lowest worst-slack found on a prediction grid (descent-polished); the
/// certificate that backs recorded infeasibility witnesses.
double substitution_grid_certificate(const EntropySpec& phi, const SimplexPoint& mu,
                                     const ExpertPanel& panel, const LossSpec& loss,
                                     const SubstitutionConfig& cfg = {});

/// Samples (mixture, panel) pairs — Dirichlet mixtures, uniform panels, plus
/// deterministic corner cases — and records every sample whose best found
/// substitution stays infeasible under the grid certificate.
MixabilityVerdict certify_mixability(const EntropySpec& phi, const LossSpec& loss,
                                     std::uint64_t sample_count, std::uint64_t seed,
                                     const CertifyConfig& cfg = {});

/// Largest eta (within [1e-3, 1e3]) such that the loss stays mixable on
/// samples for Phi = base/eta, located by bisection on the certification
/// oracle. `base` must have eta == 1.
EtaSearchResult estimate_mixability_constant(const EntropySpec& base, const LossSpec& loss,
                                             double precision, std::uint64_t seed,
                                             std::uint64_t samples_per_probe = 200,
                                             const CertifyConfig& cfg = {});

}  // namespace gaa

#endif  // GAA_MIXABILITY_HPP
