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

#include "gaa/mixability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "gaa/rng.hpp"

namespace gaa {

namespace {

constexpr double kInfeasibleValue = 1e30;

std::vector<std::vector<double>> assessment_matrix(const LossSpec& loss,
                                                   const ExpertPanel& panel) {
  std::vector<std::vector<double>> alpha(loss.outcome_count);
  for (std::size_t x = 0; x < loss.outcome_count; ++x) {
    alpha[x] = assessment(loss, panel, x).values.values();
  }
  return alpha;
}

// max over outcomes of loss(p) - bound; +1e30 where the loss is undefined
// (log-type losses at boundary candidates).
double worst_slack_at(const LossSpec& loss, const std::vector<double>& bounds,
                      const std::vector<double>& w) {
  try {
    const SimplexPoint p(w);
    const std::vector<double> lv = loss_vector(loss, p);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < lv.size(); ++x) worst = std::max(worst, lv[x] - bounds[x]);
    return worst;
  } catch (const Error&) {
    return kInfeasibleValue;
  }
}

// Projected subgradient descent on the worst-slack objective.
double descend(const LossSpec& loss, const std::vector<double>& bounds,
               std::vector<double>& p, int iterations) {
  double value = worst_slack_at(loss, bounds, p);
  if (value >= kInfeasibleValue) return value;
  double step = 0.25;
  std::vector<double> cand;
  for (int it = 0; it < iterations; ++it) {
    std::size_t active = 0;
    {
      const SimplexPoint sp(p);
      const std::vector<double> lv = loss_vector(loss, sp);
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t x = 0; x < lv.size(); ++x) {
        if (lv[x] - bounds[x] > worst) {
          worst = lv[x] - bounds[x];
          active = x;
        }
      }
    }
    std::vector<double> g;
    try {
      g = loss_gradient(loss, SimplexPoint(p), active);
    } catch (const Error&) {
      break;
    }
    bool improved = false;
    for (int bt = 0; bt < 60 && step > 1e-16; ++bt) {
      cand = p;
      for (std::size_t i = 0; i < cand.size(); ++i) cand[i] -= step * g[i];
      cand = project_to_simplex(cand).weights();
      const double fc = worst_slack_at(loss, bounds, cand);
      if (fc < value) {
        p.swap(cand);
        value = fc;
        step = std::min(step * 1.4, 10.0);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return value;
}

// Closed-form minimax candidates for the loss families that admit them.
// These only seed the descent; the slack is always recomputed.
void analytic_candidates(const LossSpec& loss, const std::vector<double>& bounds,
                         std::vector<std::vector<double>>& seeds) {
  const std::size_t n = bounds.size();
  const auto softmax_of_neg_bounds = [&](double scale) {
    double m = -std::numeric_limits<double>::infinity();
    for (double b : bounds) m = std::max(m, -scale * b);
    std::vector<double> w(n);
    double z = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      w[x] = std::exp(-scale * bounds[x] - m);
      z += w[x];
    }
    for (double& v : w) v /= z;
    return w;
  };
  switch (loss.family) {
    case LossFamily::kLog:
      seeds.push_back(softmax_of_neg_bounds(1.0));
      break;
    case LossFamily::kBrier: {
      std::vector<double> v(n);
      for (std::size_t x = 0; x < n; ++x) v[x] = -0.5 * bounds[x];
      seeds.push_back(project_to_simplex(v).weights());
      break;
    }
    case LossFamily::kProperFromEntropy: {
      const EntropySpec& phi_x = loss.proper_entropy;
      if (phi_x.family == EntropyFamily::kNegShannon) {
        seeds.push_back(softmax_of_neg_bounds(phi_x.eta));
      } else if (phi_x.family == EntropyFamily::kQuadratic) {
        std::vector<double> v(n);
        for (std::size_t x = 0; x < n; ++x) v[x] = -phi_x.eta * bounds[x];
        seeds.push_back(project_to_simplex(v).weights());
      }
      break;
    }
  }
}

std::size_t certificate_resolution(std::size_t outcomes) {
  switch (outcomes) {
    case 2:
      return 2048;
    case 3:
      return 192;
    case 4:
      return 48;
    default:
      return 16;
  }
}

}  // namespace

void SubstitutionConfig::validate() const {
  if (!(slack_tolerance > 0.0)) throw InvalidInputError("substitution: slack_tolerance must be > 0");
  if (grid_seed_resolution < 1) throw InvalidInputError("substitution: grid_seed_resolution must be >= 1");
  if (descent_iterations < 1) throw InvalidInputError("substitution: descent_iterations must be >= 1");
  if (descent_starts < 1) throw InvalidInputError("substitution: descent_starts must be >= 1");
  conjugate.validate();
}

MixBound mix_bound(const EntropySpec& phi, const SimplexPoint& mu,
                   const ExpertPanel& panel, const LossSpec& loss,
                   const ConjugateSolverConfig& cfg) {
  loss.validate();
  panel.validate(loss.outcome_count);
  if (mu.dimension() != panel.expert_count())
    throw InvalidInputError("mix_bound: mixture dimension must match expert count");
  const DualVector w = entropy_gradient(phi, mu);
  const double potential = conjugate_at_gradient(phi, mu);
  const auto alpha = assessment_matrix(loss, panel);
  MixBound out;
  out.per_outcome.resize(loss.outcome_count);
  for (std::size_t x = 0; x < loss.outcome_count; ++x) {
    std::vector<double> shifted(w.values());
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= alpha[x][i];
    out.per_outcome[x] = potential - conjugate(phi, DualVector(std::move(shifted)), cfg);
  }
  return out;
}

MixBound mix_bound_via_proper_loss(const EntropySpec& phi, const SimplexPoint& mu,
                                   const ExpertPanel& panel, const LossSpec& loss,
                                   const ConjugateSolverConfig& cfg) {
  loss.validate();
  panel.validate(loss.outcome_count);
  if (mu.dimension() != panel.expert_count())
    throw InvalidInputError("mix_bound: mixture dimension must match expert count");
  const std::vector<double> lambda = proper_loss_from_entropy(phi, mu);
  const auto alpha = assessment_matrix(loss, panel);
  MixBound out;
  out.per_outcome.resize(loss.outcome_count);
  for (std::size_t x = 0; x < loss.outcome_count; ++x) {
    std::vector<double> arg(lambda.size());
    for (std::size_t i = 0; i < arg.size(); ++i) arg[i] = -lambda[i] - alpha[x][i];
    out.per_outcome[x] = -conjugate(phi, DualVector(std::move(arg)), cfg);
  }
  return out;
}

MixBound mix_bound_primal(const EntropySpec& phi, const SimplexPoint& mu,
                          const ExpertPanel& panel, const LossSpec& loss,
                          std::size_t grid_resolution) {
  loss.validate();
  panel.validate(loss.outcome_count);
  if (mu.dimension() != panel.expert_count())
    throw InvalidInputError("mix_bound: mixture dimension must match expert count");
  const auto alpha = assessment_matrix(loss, panel);
  // D_Phi(mu', mu) expanded around the fixed second argument.
  const DualVector grad_mu = entropy_gradient(phi, mu);
  const double phi_mu = entropy_value(phi, mu);
  const std::size_t n = mu.dimension();
  MixBound out;
  out.per_outcome.assign(loss.outcome_count, std::numeric_limits<double>::infinity());
  SimplexGrid grid{n, grid_resolution};
  for_each_grid_point(grid, [&](const std::vector<double>& w) {
    const SimplexPoint mu_prime(w);
    double divergence = entropy_value(phi, mu_prime) - phi_mu;
    for (std::size_t i = 0; i < n; ++i) divergence -= grad_mu[i] * (mu_prime[i] - mu[i]);
    for (std::size_t x = 0; x < loss.outcome_count; ++x) {
      double inner = 0.0;
      for (std::size_t i = 0; i < n; ++i) inner += mu_prime[i] * alpha[x][i];
      out.per_outcome[x] = std::min(out.per_outcome[x], inner + divergence);
    }
  });
  return out;
}

SubstitutionResult find_substitution(const EntropySpec& phi, const SimplexPoint& mu,
                                     const ExpertPanel& panel, const LossSpec& loss,
                                     const SubstitutionConfig& cfg) {
  cfg.validate();
  const MixBound bound = mix_bound(phi, mu, panel, loss, cfg.conjugate);
  const std::vector<double>& b = bound.per_outcome;
  const std::size_t n = loss.outcome_count;

  std::vector<std::vector<double>> seeds;
  {
    // Bayes mixture of the panel under mu.
    std::vector<double> bayes(n, 0.0);
    for (std::size_t i = 0; i < panel.expert_count(); ++i) {
      for (std::size_t x = 0; x < n; ++x) bayes[x] += mu[i] * panel.predictions[i][x];
    }
    seeds.push_back(std::move(bayes));
  }
  analytic_candidates(loss, b, seeds);
  for (const SimplexPoint& p : panel.predictions) seeds.push_back(p.weights());
  seeds.push_back(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  {
    SimplexGrid grid{n, static_cast<std::size_t>(cfg.grid_seed_resolution)};
    std::vector<std::pair<double, std::vector<double>>> graded;
    for_each_grid_point(grid, [&](const std::vector<double>& w) {
      graded.emplace_back(worst_slack_at(loss, b, w), w);
    });
    std::sort(graded.begin(), graded.end(),
              [](const auto& a, const auto& c) { return a.first < c.first; });
    for (std::size_t i = 0; i < graded.size() && i < 3; ++i)
      seeds.push_back(std::move(graded[i].second));
  }

  // Dedupe, rank by slack, descend from the best few.
  std::vector<std::pair<double, std::vector<double>>> ranked;
  for (auto& s : seeds) {
    bool duplicate = false;
    for (const auto& kept : ranked) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(kept.second[i] - s[i]));
      if (d <= 1e-12) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) ranked.emplace_back(worst_slack_at(loss, b, s), std::move(s));
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& c) { return a.first < c.first; });

  std::vector<double> best = ranked.front().second;
  double best_value = ranked.front().first;
  const std::size_t starts = std::min<std::size_t>(ranked.size(), cfg.descent_starts);
  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<double> p = ranked[s].second;
    const double v = descend(loss, b, p, cfg.descent_iterations);
    if (v < best_value) {
      best_value = v;
      best = std::move(p);
    }
  }

  SimplexPoint prediction(best);
  const double slack = worst_slack_at(loss, b, prediction.weights());
  return SubstitutionResult{std::move(prediction), slack, slack <= cfg.slack_tolerance};
}

double substitution_grid_certificate(const EntropySpec& phi, const SimplexPoint& mu,
                                     const ExpertPanel& panel, const LossSpec& loss,
                                     const SubstitutionConfig& cfg) {
  cfg.validate();
  const MixBound bound = mix_bound(phi, mu, panel, loss, cfg.conjugate);
  const std::vector<double>& b = bound.per_outcome;
  const std::size_t n = loss.outcome_count;
  double best = kInfeasibleValue;
  std::vector<double> best_point(n, 1.0 / static_cast<double>(n));
  SimplexGrid grid{n, certificate_resolution(n)};
  for_each_grid_point(grid, [&](const std::vector<double>& w) {
    const double v = worst_slack_at(loss, b, w);
    if (v < best) {
      best = v;
      best_point = w;
    }
  });
  const double polished = descend(loss, b, best_point, cfg.descent_iterations);
  return std::min(best, polished);
}

MixabilityVerdict certify_mixability(const EntropySpec& phi, const LossSpec& loss,
                                     std::uint64_t sample_count, std::uint64_t seed,
                                     const CertifyConfig& cfg) {
  if (sample_count < 1) throw InvalidInputError("certify_mixability: sample_count must be >= 1");
  loss.validate();
  phi.validate();
  const std::size_t outcomes = loss.outcome_count;
  const bool clamp_panels = !loss.finite_at_vertices();

  MixabilityVerdict verdict;

  const auto evaluate_sample = [&](const SimplexPoint& mixture, const ExpertPanel& panel,
                                   std::uint64_t index) {
    const SubstitutionResult res = find_substitution(phi, mixture, panel, loss, cfg.substitution);
    verdict.samples_tested += 1;
    if (res.feasible) return;
    const double certificate =
        substitution_grid_certificate(phi, mixture, panel, loss, cfg.substitution);
    if (certificate > cfg.certificate_factor * cfg.substitution.slack_tolerance) {
      verdict.witness_failures.push_back(
          MixabilityWitness{mixture, panel, std::min(res.worst_slack, certificate), index});
    }
  };

  for (std::uint64_t k = 0; k < sample_count; ++k) {
    Rng rng = Rng::stream(seed, "certify-sample", k);
    const std::size_t experts =
        cfg.expert_counts[static_cast<std::size_t>(k) % cfg.expert_counts.size()];
    SimplexPoint mixture(rng.dirichlet_uniform(experts));
    mixture = clamp_interior(mixture, 1e-9);
    ExpertPanel panel;
    for (std::size_t i = 0; i < experts; ++i) {
      SimplexPoint p(rng.dirichlet_uniform(outcomes));
      if (clamp_panels) p = clamp_interior(p, cfg.boundary_epsilon);
      panel.predictions.push_back(std::move(p));
    }
    evaluate_sample(mixture, panel, k);
  }

  // Deterministic corner cases: vertex panels are the classical hard
  // configurations; near-boundary mixtures stress the gradient map.
  std::uint64_t corner_index = sample_count;
  for (std::size_t experts : cfg.expert_counts) {
    std::vector<ExpertPanel> corner_panels(2);
    for (std::size_t i = 0; i < experts; ++i) {
      SimplexPoint spread = SimplexPoint::vertex(outcomes, i % outcomes);
      SimplexPoint same = SimplexPoint::vertex(outcomes, 0);
      if (clamp_panels) {
        spread = clamp_interior(spread, cfg.boundary_epsilon);
        same = clamp_interior(same, cfg.boundary_epsilon);
      }
      corner_panels[0].predictions.push_back(std::move(spread));
      corner_panels[1].predictions.push_back(std::move(same));
    }
    std::vector<SimplexPoint> corner_mixtures;
    corner_mixtures.push_back(SimplexPoint::uniform(experts));
    corner_mixtures.push_back(clamp_interior(SimplexPoint::vertex(experts, 0), 1e-3));
    corner_mixtures.push_back(clamp_interior(SimplexPoint::vertex(experts, 0), 1e-6));
    for (const ExpertPanel& panel : corner_panels) {
      for (const SimplexPoint& mixture : corner_mixtures) {
        evaluate_sample(mixture, panel, corner_index++);
      }
    }
  }

  verdict.mixable_on_samples = verdict.witness_failures.empty();
  return verdict;
}

EtaSearchResult estimate_mixability_constant(const EntropySpec& base, const LossSpec& loss,
                                             double precision, std::uint64_t seed,
                                             std::uint64_t samples_per_probe,
                                             const CertifyConfig& cfg) {
  base.validate();
  if (base.eta != 1.0)
    throw InvalidInputError("estimate_mixability_constant: base entropy must have eta == 1");
  if (!(precision > 0.0)) throw InvalidInputError("estimate_mixability_constant: precision must be > 0");

  EtaSearchResult result;
  const auto feasible = [&](double eta) {
    EntropySpec probe = base;
    probe.eta = eta;
    result.oracle_calls += 1;
    return certify_mixability(probe, loss, samples_per_probe, seed, cfg).mixable_on_samples;
  };

  double lo = 1e-3;
  double hi = 1e3;
  if (!feasible(lo))
    throw EtaOutOfRangeError("no feasible eta found in (1e-3, 1e3): infeasible at the floor");
  if (feasible(hi))
    throw EtaOutOfRangeError("mixability constant exceeds the 1e3 search ceiling");
  while (hi - lo > precision) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.lower = lo;
  result.upper = hi;
  return result;
}

}  // namespace gaa
