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

#include "gaa/gaa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaa {

namespace {

// Interior clamp used wherever a gradient of a boundary-singular family is
// about to be taken.
constexpr double kInteriorEpsilon = 1e-12;

SimplexPoint interior_view(const EntropySpec& entropy, const SimplexPoint& p) {
  if (!entropy.boundary_singular()) return p;
  bool boundary = false;
  for (double w : p) {
    if (w < kInteriorEpsilon) {
      boundary = true;
      break;
    }
  }
  if (!boundary) return p;
  if (p.dimension() == 1) throw InvalidPriorError("cannot clamp a one-point simplex");
  return clamp_interior(p, kInteriorEpsilon);
}

}  // namespace

GaaState init(const EntropySpec& entropy, const SimplexPoint& prior) {
  entropy.validate();
  const SimplexPoint interior = interior_view(entropy, prior);
  return GaaState{entropy, interior, entropy_gradient(entropy, interior), 0};
}

GaaState update(const GaaState& state, const Assessment& a) {
  if (a.values.dimension() != state.dual_accumulator.dimension())
    throw InvalidInputError("update: assessment dimension mismatch");
  return GaaState{state.entropy, state.prior, state.dual_accumulator - a.values,
                  state.round + 1};
}

SubstitutionResult predict(const GaaState& state, const ExpertPanel& panel,
                           const LossSpec& loss, const SubstitutionConfig& cfg) {
  const SimplexPoint mixture = interior_view(state.entropy, state.mixture(cfg.conjugate));
  return find_substitution(state.entropy, mixture, panel, loss, cfg);
}

double regret_bound(const EntropySpec& entropy, const SimplexPoint& prior,
                    std::size_t expert) {
  if (expert >= prior.dimension()) throw InvalidInputError("regret_bound: expert out of range");
  const SimplexPoint interior = interior_view(entropy, prior);
  const SimplexPoint comparator = SimplexPoint::vertex(prior.dimension(), expert);
  if (!std::isfinite(entropy_value(entropy, comparator)))
    throw UnboundedPenaltyError("regret_bound: entropy infinite at the comparator vertex");
  return bregman(entropy, comparator, interior);
}

SimplexPoint classic_aa_weights(double eta, const DualVector& cumulative_losses) {
  if (!(eta > 0.0)) throw InvalidInputError("classic_aa_weights: eta must be > 0");
  const std::size_t n = cumulative_losses.dimension();
  double m = -std::numeric_limits<double>::infinity();
  for (double l : cumulative_losses) m = std::max(m, -eta * l);
  std::vector<double> w(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(-eta * cumulative_losses[i] - m);
    z += w[i];
  }
  for (double& x : w) x /= z;
  return SimplexPoint(std::move(w));
}

GameTrace run_game(const EntropySpec& entropy, const SimplexPoint& prior,
                   const LossSpec& loss, const std::vector<ExpertPanel>& panels,
                   const std::vector<std::size_t>& outcomes,
                   const SubstitutionConfig& cfg) {
  if (panels.size() != outcomes.size())
    throw InvalidConfigError("run_game: panels and outcomes must have the same length");
  const std::size_t experts = prior.dimension();
  for (const ExpertPanel& panel : panels) {
    panel.validate(loss.outcome_count);
    if (panel.expert_count() != experts)
      throw InvalidConfigError("run_game: expert count changed between rounds");
  }
  for (std::size_t x : outcomes) {
    if (x >= loss.outcome_count) throw InvalidConfigError("run_game: outcome index out of range");
  }

  GameTrace trace;
  GaaState state = init(entropy, prior);
  const DualVector initial_dual = state.dual_accumulator;

  std::vector<double> cumulative_expert(experts, 0.0);
  double cumulative_player = 0.0;
  double potential_drop_sum = 0.0;

  for (std::size_t t = 0; t < panels.size(); ++t) {
    const SubstitutionResult sub = predict(state, panels[t], loss, cfg);
    if (!sub.feasible) trace.infeasible_rounds += 1;
    trace.max_round_slack = std::max(trace.max_round_slack, sub.worst_slack);

    const double player_loss = loss_at(loss, sub.prediction, outcomes[t]);
    const Assessment a = assessment(loss, panels[t], outcomes[t]);

    // Potential drop of this round, recomputed from scratch so the
    // telescoping audit is not a tautology of the update arithmetic.
    const double before = conjugate(entropy, state.dual_accumulator, cfg.conjugate);
    const double after = conjugate(entropy, state.dual_accumulator - a.values, cfg.conjugate);
    const double potential_drop = before - after;
    potential_drop_sum += potential_drop;

    cumulative_player += player_loss;
    for (std::size_t i = 0; i < experts; ++i) cumulative_expert[i] += a.values[i];

    trace.rounds.push_back(TraceRound{t + 1, panels[t].predictions, sub.prediction,
                                      outcomes[t], a.values.values(), player_loss,
                                      sub.worst_slack, sub.feasible, cumulative_player,
                                      cumulative_expert, potential_drop});
    state = update(state, a);
  }

  trace.final_expert_losses = cumulative_expert;
  trace.final_player_loss = cumulative_player;
  trace.best_expert = 0;
  for (std::size_t i = 1; i < experts; ++i) {
    if (cumulative_expert[i] < cumulative_expert[trace.best_expert]) trace.best_expert = i;
  }
  trace.regret_vs_best =
      panels.empty() ? 0.0 : cumulative_player - cumulative_expert[trace.best_expert];
  trace.bound_per_expert.resize(experts);
  for (std::size_t i = 0; i < experts; ++i) {
    trace.bound_per_expert[i] = regret_bound(entropy, prior, i);
  }
  trace.bound_vs_best = trace.bound_per_expert[trace.best_expert];

  const double total_drop = conjugate(entropy, initial_dual, cfg.conjugate) -
                            conjugate(entropy, state.dual_accumulator, cfg.conjugate);
  trace.telescoping_residual = std::abs(total_drop - potential_drop_sum);
  return trace;
}

}  // namespace gaa
