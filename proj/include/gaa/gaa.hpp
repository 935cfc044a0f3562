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

#ifndef GAA_GAA_HPP
#define GAA_GAA_HPP

#include <cstddef>
#include <vector>

#include "gaa/core.hpp"
#include "gaa/entropy.hpp"
#include "gaa/losses.hpp"
#include "gaa/mixability.hpp"

namespace gaa {

/// Player state of the generalised aggregating algorithm. The state is the
/// dual accumulator grad Phi(prior) - sum of assessments; the primal mixture
/// is recomputed on demand, so the additive dual dynamics never compound
/// solver error.
struct GaaState {
  EntropySpec entropy;
  SimplexPoint prior;
  DualVector dual_accumulator;
  std::size_t round = 0;

  SimplexPoint mixture(const ConjugateSolverConfig& cfg = {}) const {
    return conjugate_gradient(entropy, dual_accumulator, cfg);
  }
};

/// Starts a game: dual accumulator = grad Phi(prior), round 0. Boundary
/// priors are clamped into the relative interior when the family needs it.
GaaState init(const EntropySpec& entropy, const SimplexPoint& prior);

/// Subtracts the assessment in the dual and advances the round counter.
GaaState update(const GaaState& state, const Assessment& a);

/// Substitution prediction for the current mixture. The returned prediction
/// is played regardless of feasibility; callers record the slack.
SubstitutionResult predict(const GaaState& state, const ExpertPanel& panel,
                           const LossSpec& loss, const SubstitutionConfig& cfg = {});

/// D_Phi(delta_theta, prior): the constant-regret price of backing `expert`.
double regret_bound(const EntropySpec& entropy, const SimplexPoint& prior,
                    std::size_t expert);

/// Classical aggregating-algorithm weights: softmax of -eta * losses.
SimplexPoint classic_aa_weights(double eta, const DualVector& cumulative_losses);

struct TraceRound {
  std::size_t round = 0;  // 1-based
  std::vector<SimplexPoint> expert_predictions;
  SimplexPoint player_prediction;
  std::size_t outcome = 0;
  std::vector<double> assessment_values;
  double player_loss = 0.0;
  double worst_slack = 0.0;
  bool feasible = true;
  double cumulative_player_loss = 0.0;
  std::vector<double> cumulative_expert_losses;
  double potential_drop = 0.0;  // Phi*(d_{t-1}) - Phi*(d_{t-1} - a_t)
};

struct GameTrace {
  std::vector<TraceRound> rounds;
  std::vector<double> final_expert_losses;
  double final_player_loss = 0.0;
  std::size_t best_expert = 0;
  double regret_vs_best = 0.0;
  std::vector<double> bound_per_expert;
  double bound_vs_best = 0.0;
  double max_round_slack = 0.0;
  std::size_t infeasible_rounds = 0;
  double telescoping_residual = 0.0;
};

/// Plays a full game and audits it: per-round slack, the telescoping of the
/// dual potential, and the final regret accounting.
GameTrace run_game(const EntropySpec& entropy, const SimplexPoint& prior,
                   const LossSpec& loss, const std::vector<ExpertPanel>& panels,
                   const std::vector<std::size_t>& outcomes,
                   const SubstitutionConfig& cfg = {});

}  // namespace gaa

#endif  // GAA_GAA_HPP
