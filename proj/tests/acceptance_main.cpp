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

// Acceptance suite: one line of output per criterion, nonzero exit when any
// fails. Tolerances are pinned here, not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gaa/harness.hpp"
#include "gaa/rng.hpp"
#include "oracles.hpp"

using namespace gaa;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, const std::string& label, bool pass, const std::string& detail,
            double seconds) {
  if (!pass) ++g_failures;
  std::printf("%s  criterion %2d: %s (%s; %.2f s)\n", pass ? "PASS" : "FAIL", id,
              label.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

harness::GameConfig classic_regret_config(double eta) {
  harness::GameConfig config;
  config.outcome_count = 2;
  config.rounds = 1000;
  config.seed = 42;
  config.has_seed = true;
  config.entropy = EntropySpec::neg_shannon(eta);
  config.loss = LossSpec::log_loss(2);
  config.uniform_prior = true;
  config.experts.resize(10);
  for (auto& e : config.experts) {
    e.strategy = harness::ExpertSpec::Strategy::kStochastic;
    e.noise = 0.25;
  }
  config.explicit_outcomes = false;
  config.outcome_probabilities = {0.7, 0.3};
  return config;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SimplexPoint random_interior(Rng& rng, std::size_t n, double epsilon) {
  return clamp_interior(SimplexPoint(rng.dirichlet_uniform(n)), epsilon);
}

// ---------------------------------------------------------------------------

void criterion_1_and_10() {
  const auto dir = std::filesystem::temp_directory_path() / "gaa_acceptance";
  std::filesystem::remove_all(dir);

  // eta = 1: the classical guarantee holds unconditionally.
  const auto t0 = Clock::now();
  const harness::RunReport r1 =
      harness::run_to_files(classic_regret_config(1.0), "classic_eta1", dir.string());
  const double sec1 = std::chrono::duration<double>(Clock::now() - t0).count();
  const double bound1 = std::log(10.0) + 1e-5 * 1000.0;
  const bool pass1 = r1.regret <= bound1 && r1.infeasible_rounds == 0 && sec1 < 5.0;
  std::string detail1 = "eta=1 regret " + fmt(r1.regret) + " <= " + fmt(bound1);

  // eta = 2: log loss is 1-mixable only, so every round is flagged and the
  // bound check follows the flagged-round policy; the reported bound itself
  // must still be log(10)/2.
  const auto t2 = Clock::now();
  const harness::RunReport r2 =
      harness::run_to_files(classic_regret_config(2.0), "classic_eta2", dir.string());
  const double sec2 = std::chrono::duration<double>(Clock::now() - t2).count();
  bool pass2 = sec2 < 5.0;
  for (double b : r2.bound_per_expert) {
    if (std::abs(b - std::log(10.0) / 2.0) > 1e-9) pass2 = false;
  }
  std::string detail2;
  if (r2.infeasible_rounds == 0) {
    const double bound2 = std::log(10.0) / 2.0 + 1e-5 * 1000.0;
    pass2 = pass2 && r2.regret <= bound2;
    detail2 = "eta=2 regret " + fmt(r2.regret) + " <= " + fmt(bound2);
  } else {
    pass2 = pass2 && r2.exit_code == 2;
    detail2 = "eta=2 bound log(10)/2 reported; " + std::to_string(r2.infeasible_rounds) +
              "/1000 rounds infeasible so the regret check is skipped per the "
              "flagged-round policy (measured regret " +
              fmt(r2.regret) + ")";
  }
  report(1, "classical aggregating-algorithm regret bound, 10 experts, T=1000", pass1 && pass2,
         detail1 + " | " + detail2, sec1 + sec2);

  // criterion 10: byte-identical traces for the same config
  const auto t10 = Clock::now();
  const auto dirA = dir / "repeatA";
  const auto dirB = dir / "repeatB";
  harness::RunReport a = harness::run_to_files(classic_regret_config(1.0), "repeat", dirA.string());
  harness::RunReport b = harness::run_to_files(classic_regret_config(1.0), "repeat", dirB.string());
  const std::string ta = slurp(a.trace_path);
  const std::string tb = slurp(b.trace_path);
  const bool pass10 = !ta.empty() && ta == tb;
  report(10, "determinism: identical configs give byte-identical traces", pass10,
         std::to_string(ta.size()) + " bytes compared",
         std::chrono::duration<double>(Clock::now() - t10).count());
  std::filesystem::remove_all(dir);
}

void criterion_2() {
  const auto t0 = Clock::now();
  struct Leg {
    EntropySpec entropy;
    LossSpec loss;
    const char* name;
  };
  const Leg legs[] = {
      {EntropySpec::neg_shannon(0.5), LossSpec::log_loss(2), "shannon0.5+log"},
      {EntropySpec::neg_shannon(1.0), LossSpec::log_loss(3), "shannon1+log"},
      {EntropySpec::neg_shannon(2.0),
       LossSpec::proper_from_entropy(EntropySpec::neg_shannon(2.0), 2), "shannon2+halflog"},
      {EntropySpec::quadratic(1.0),
       LossSpec::proper_from_entropy(EntropySpec::quadratic(4.0), 2), "quadratic1+qproper4"},
      {EntropySpec::neg_tsallis(2.0, 1.0),
       LossSpec::proper_from_entropy(EntropySpec::quadratic(2.0), 3), "tsallis2+qproper2"},
  };
  bool pass = true;
  std::string detail;
  for (const Leg& leg : legs) {
    int feasible_runs = 0;
    int checked_bounds = 0;
    double worst_violation = -1e300;
    Rng master = Rng::stream(2026, leg.name, 0);
    for (int game = 0; game < 20; ++game) {
      Rng rng = Rng::stream(master.next_u64(), "game", game);
      const std::size_t experts = 2 + rng.next_index(3);  // <= 4
      const std::size_t outcomes = leg.loss.outcome_count;
      const std::size_t T = 50;
      const SimplexPoint prior = (game % 2 == 0)
                                     ? SimplexPoint::uniform(experts)
                                     : random_interior(rng, experts, 1e-3);
      std::vector<ExpertPanel> panels;
      std::vector<std::size_t> xs;
      for (std::size_t t = 0; t < T; ++t) {
        const std::vector<double> base = rng.dirichlet_uniform(outcomes);
        ExpertPanel panel;
        for (std::size_t i = 0; i < experts; ++i) {
          std::vector<double> w(outcomes);
          double sum = 0.0;
          for (std::size_t x = 0; x < outcomes; ++x) {
            w[x] = base[x] * std::exp(0.2 * rng.next_normal());
            sum += w[x];
          }
          for (double& v : w) v /= sum;
          panel.predictions.push_back(clamp_interior(SimplexPoint(w), 1e-6));
        }
        panels.push_back(std::move(panel));
        xs.push_back(rng.next_index(outcomes));
      }
      const GameTrace trace = run_game(leg.entropy, prior, leg.loss, panels, xs);
      if (trace.infeasible_rounds > 0 || trace.max_round_slack > 1e-7) continue;
      ++feasible_runs;
      const double tol = 1e-5 * double(T);
      for (std::size_t i = 0; i < experts; ++i) {
        const double violation = (trace.final_player_loss - trace.final_expert_losses[i]) -
                                 trace.bound_per_expert[i];
        worst_violation = std::max(worst_violation, violation);
        ++checked_bounds;
        if (violation > tol) pass = false;
      }
      std::vector<double> total(experts, 0.0);
      for (const TraceRound& r : trace.rounds) {
        for (std::size_t i = 0; i < experts; ++i) total[i] += r.assessment_values[i];
      }
      for (int k = 0; k < 100; ++k) {
        const SimplexPoint mu_prime = random_interior(rng, experts, 1e-9);
        double rhs = bregman(leg.entropy, mu_prime, prior);
        for (std::size_t i = 0; i < experts; ++i) rhs += mu_prime[i] * total[i];
        if (trace.final_player_loss > rhs + tol) pass = false;
      }
    }
    if (feasible_runs == 0) pass = false;  // the check must bite
    detail += std::string(leg.name) + " " + std::to_string(feasible_runs) + "/20 feasible";
    if (checked_bounds > 0) detail += " worst " + fmt(worst_violation);
    detail += "; ";
  }
  const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
  report(2, "constant regret bound and its strengthening over random games", pass && sec < 60.0,
         detail + "runtime<60s", sec);
}

void criterion_3() {
  const auto t0 = Clock::now();
  const EntropySpec families[] = {
      EntropySpec::neg_shannon(1.0),
      EntropySpec::neg_tsallis(2.0, 1.0),
      EntropySpec::neg_tsallis(0.5, 1.0),
      EntropySpec::quadratic(1.0),
  };
  double worst_value = 0.0;
  double worst_gradient = 0.0;
  for (const EntropySpec& spec : families) {
    Rng rng = Rng::stream(303, "translation", static_cast<std::uint64_t>(spec.family) * 10 +
                                              static_cast<std::uint64_t>(spec.tsallis_q * 2));
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 2 + rng.next_index(7);
      std::vector<double> v(n);
      for (double& x : v) x = rng.uniform(-5.0, 5.0);
      const double alpha = rng.uniform(-4.0, 4.0);
      const double c0 = conjugate(spec, DualVector(v));
      const SimplexPoint g0 = conjugate_gradient(spec, DualVector(v));
      std::vector<double> shifted(v);
      for (double& x : shifted) x += alpha;
      const double c1 = conjugate(spec, DualVector(shifted));
      const SimplexPoint g1 = conjugate_gradient(spec, DualVector(shifted));
      worst_value = std::max(worst_value, std::abs(c1 - c0 - alpha));
      for (std::size_t i = 0; i < n; ++i) {
        worst_gradient = std::max(worst_gradient, std::abs(g1[i] - g0[i]));
      }
    }
  }
  const bool pass = worst_value <= 1e-9 && worst_gradient <= 1e-7;
  report(3, "translation invariance of conjugates and their gradients", pass,
         "max value dev " + fmt(worst_value) + " <= 1e-9, max gradient dev " +
             fmt(worst_gradient) + " <= 1e-7",
         std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion_4() {
  const auto t0 = Clock::now();
  const EntropySpec families[] = {
      EntropySpec::neg_shannon(1.0),
      EntropySpec::neg_tsallis(2.0, 1.0),
      EntropySpec::neg_tsallis(0.5, 1.0),
      EntropySpec::quadratic(1.0),
  };
  double worst = 0.0;
  for (const EntropySpec& spec : families) {
    const double span =
        (spec.family == EntropyFamily::kNegTsallis && spec.tsallis_q < 1.0) ? 1.0 : 2.0;
    Rng rng = Rng::stream(404, "potential", static_cast<std::uint64_t>(span * 10) +
                                             static_cast<std::uint64_t>(spec.family));
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 2 + rng.next_index(2);  // dim <= 3
      const SimplexPoint mu = random_interior(rng, n, 0.1);
      std::vector<double> v(n);
      for (double& x : v) x = rng.uniform(-span, span);
      const DualVector g = entropy_gradient(spec, mu);
      std::vector<double> shifted(g.values());
      for (std::size_t i = 0; i < n; ++i) shifted[i] -= v[i];
      const double lhs = conjugate_at_gradient(spec, mu) - conjugate(spec, DualVector(shifted));
      const double rhs = oracles::grid_min(n, 200, [&](const std::vector<double>& w) {
        double inner = 0.0;
        for (std::size_t i = 0; i < n; ++i) inner += w[i] * v[i];
        return inner + bregman(spec, SimplexPoint(w), mu);
      });
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  report(4, "potential difference equals the divergence infimum (200 cases)", worst <= 5e-3,
         "max deviation " + fmt(worst) + " <= 5e-3 at grid resolution 200",
         std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion_5() {
  const auto t0 = Clock::now();
  const EntropySpec families[] = {
      EntropySpec::neg_shannon(1.0),
      EntropySpec::neg_tsallis(2.0, 1.0),
      EntropySpec::quadratic(1.0),
  };
  bool pass = true;
  double min_gap = 1e300;
  double worst_savage = 0.0;
  for (const EntropySpec& spec : families) {
    for (std::size_t dim : {2, 3}) {
      std::vector<SimplexPoint> interior;
      for_each_grid_point(SimplexGrid{dim, 50}, [&](const std::vector<double>& w) {
        for (double x : w) {
          if (x <= 0.0) return;
        }
        interior.push_back(SimplexPoint(w));
      });
      std::vector<std::vector<double>> lambdas;
      std::vector<DualVector> gradients;
      std::vector<double> values;
      lambdas.reserve(interior.size());
      for (const SimplexPoint& p : interior) {
        lambdas.push_back(proper_loss_from_entropy(spec, p));
        gradients.push_back(entropy_gradient(spec, p));
        values.push_back(entropy_value(spec, p));
      }
      for (std::size_t a = 0; a < interior.size(); ++a) {
        for (std::size_t b = 0; b < interior.size(); ++b) {
          double gap = 0.0;
          double inner = 0.0;
          for (std::size_t i = 0; i < dim; ++i) {
            gap += interior[a][i] * (lambdas[b][i] - lambdas[a][i]);
            inner += gradients[b][i] * (interior[a][i] - interior[b][i]);
          }
          const double divergence = values[a] - values[b] - inner;
          min_gap = std::min(min_gap, gap);
          worst_savage = std::max(worst_savage, std::abs(gap - divergence));
          if (gap < -1e-10 || std::abs(gap - divergence) > 1e-7) pass = false;
        }
      }
    }
  }
  // negative Shannon proper loss is the log loss
  double worst_log = 0.0;
  for_each_grid_point(SimplexGrid{3, 50}, [&](const std::vector<double>& w) {
    for (double x : w) {
      if (x <= 0.0) return;
    }
    const SimplexPoint p(w);
    const std::vector<double> lambda = proper_loss_from_entropy(EntropySpec::neg_shannon(1.0), p);
    for (std::size_t i = 0; i < 3; ++i) {
      worst_log = std::max(worst_log, std::abs(lambda[i] + std::log(p[i])));
    }
  });
  if (worst_log > 1e-9) pass = false;
  report(5, "propriety on resolution-50 grids, three families", pass,
         "min gap " + fmt(min_gap) + " >= -1e-10, Savage dev " + fmt(worst_savage) +
             " <= 1e-7, log-loss dev " + fmt(worst_log) + " <= 1e-9",
         std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion_6() {
  const auto t0 = Clock::now();
  const EntropySpec families[] = {
      EntropySpec::neg_shannon(1.0),
      EntropySpec::neg_shannon(0.5),
      EntropySpec::neg_tsallis(2.0, 1.0),
      EntropySpec::quadratic(1.0),
  };
  double worst_forms = 0.0;
  double worst_primal = 0.0;
  double worst_shannon = 0.0;
  Rng rng = Rng::stream(606, "bound-forms", 0);
  for (int trial = 0; trial < 200; ++trial) {
    const EntropySpec& spec = families[trial % 4];
    const std::size_t experts = 2 + rng.next_index(2);
    const std::size_t outcomes = 2 + rng.next_index(2);
    const SimplexPoint mu = random_interior(rng, experts, 1e-3);
    ExpertPanel panel;
    for (std::size_t i = 0; i < experts; ++i) {
      panel.predictions.push_back(random_interior(rng, outcomes, 1e-3));
    }
    const LossSpec loss =
        (trial % 2 == 0) ? LossSpec::log_loss(outcomes) : LossSpec::brier(outcomes);
    const MixBound potential = mix_bound(spec, mu, panel, loss);
    const MixBound proper = mix_bound_via_proper_loss(spec, mu, panel, loss);
    const MixBound primal = mix_bound_primal(spec, mu, panel, loss, 200);
    for (std::size_t x = 0; x < outcomes; ++x) {
      worst_forms = std::max(worst_forms,
                             std::abs(potential.per_outcome[x] - proper.per_outcome[x]));
      worst_primal = std::max(worst_primal,
                              std::abs(potential.per_outcome[x] - primal.per_outcome[x]));
    }
    if (spec.family == EntropyFamily::kNegShannon) {
      for (std::size_t x = 0; x < outcomes; ++x) {
        double mix = 0.0;
        for (std::size_t i = 0; i < experts; ++i) {
          mix += mu[i] * std::exp(-spec.eta * loss_at(loss, panel.predictions[i], x));
        }
        worst_shannon = std::max(
            worst_shannon, std::abs(potential.per_outcome[x] + std::log(mix) / spec.eta));
      }
    }
  }
  const bool pass = worst_forms <= 1e-8 && worst_primal <= 5e-3 && worst_shannon <= 1e-9;
  report(6, "mixability bound characterisations agree (200 configurations)", pass,
         "forms " + fmt(worst_forms) + " <= 1e-8, grid " + fmt(worst_primal) +
             " <= 5e-3, classical mix form " + fmt(worst_shannon) + " <= 1e-9",
         std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion_7() {
  const auto t0 = Clock::now();
  const EntropySpec families[] = {
      EntropySpec::neg_shannon(1.0),
      EntropySpec::neg_tsallis(2.0, 1.0),
      EntropySpec::quadratic(1.0),
  };
  double worst_update = 0.0;
  for (const EntropySpec& spec : families) {
    Rng rng = Rng::stream(707, "updates", static_cast<std::uint64_t>(spec.family));
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + rng.next_index(2);
      const SimplexPoint prior = random_interior(rng, n, 1e-2);
      std::vector<double> alpha(n);
      for (double& a : alpha) a = rng.uniform(0.0, 2.0);
      GaaState state = init(spec, prior);
      state = update(state, Assessment{DualVector(alpha), 0});
      const SimplexPoint dual_route = state.mixture();
      const std::vector<double> primal_route = oracles::grid_refined_argmin(
          n,
          [&](const std::vector<double>& w) {
            double inner = 0.0;
            for (std::size_t i = 0; i < n; ++i) inner += w[i] * alpha[i];
            return inner + bregman(spec, SimplexPoint(w), prior);
          },
          40, 1e-3);
      for (std::size_t i = 0; i < n; ++i) {
        worst_update = std::max(worst_update, std::abs(dual_route[i] - primal_route[i]));
      }
    }
  }
  // Shannon games: the GAA mixture equals the classical weights each round
  double worst_weights = 0.0;
  Rng rng = Rng::stream(707, "classic", 9);
  for (double eta : {1.0, 2.0}) {
    const std::size_t experts = 5;
    GaaState state = init(EntropySpec::neg_shannon(eta), SimplexPoint::uniform(experts));
    std::vector<double> cumulative(experts, 0.0);
    for (int t = 0; t < 60; ++t) {
      ExpertPanel panel;
      for (std::size_t i = 0; i < experts; ++i) {
        panel.predictions.push_back(random_interior(rng, 2, 1e-6));
      }
      const Assessment a = assessment(LossSpec::log_loss(2), panel, rng.next_index(2));
      state = update(state, a);
      for (std::size_t i = 0; i < experts; ++i) cumulative[i] += a.values[i];
      const SimplexPoint mixture = state.mixture();
      const SimplexPoint weights = classic_aa_weights(eta, DualVector(cumulative));
      for (std::size_t i = 0; i < experts; ++i) {
        worst_weights = std::max(worst_weights, std::abs(mixture[i] - weights[i]));
      }
    }
  }
  const bool pass = worst_update <= 1e-3 && worst_weights <= 1e-9;
  report(7, "dual update equals the primal argmin; Shannon case matches the AA", pass,
         "argmin dev " + fmt(worst_update) + " <= 1e-3, weight dev " + fmt(worst_weights) +
             " <= 1e-9",
         std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion_8() {
  const auto t0 = Clock::now();
  double worst_conjugate = 0.0;
  Rng rng = Rng::stream(808, "oracle", 0);
  for (int trial = 0; trial < 500; ++trial) {
    const double eta = (trial % 3 == 0) ? 0.5 : (trial % 3 == 1 ? 1.0 : 2.0);
    const EntropySpec spec = EntropySpec::neg_shannon(eta);
    const std::size_t n = 2 + rng.next_index(7);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-5.0, 5.0);
    worst_conjugate =
        std::max(worst_conjugate, std::abs(conjugate_numeric(spec, DualVector(v)) -
                                           conjugate(spec, DualVector(v))));
  }
  // gradients against central differences along simplex-tangent directions
  const EntropySpec families[] = {
      EntropySpec::neg_shannon(1.0),
      EntropySpec::neg_tsallis(2.0, 1.0),
      EntropySpec::neg_tsallis(0.5, 1.0),
      EntropySpec::quadratic(1.0),
  };
  double worst_gradient = 0.0;
  for (const EntropySpec& spec : families) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + rng.next_index(4);
      const SimplexPoint mu = random_interior(rng, n, 1e-3);
      const DualVector g = entropy_gradient(spec, mu);
      const double h = 1e-6;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        std::vector<double> up(mu.weights()), down(mu.weights());
        up[i] += h;
        up[i + 1] -= h;
        down[i] -= h;
        down[i + 1] += h;
        const double numeric =
            (entropy_value(spec, SimplexPoint(up)) - entropy_value(spec, SimplexPoint(down))) /
            (2.0 * h);
        const double analytic = g[i] - g[i + 1];
        worst_gradient =
            std::max(worst_gradient,
                     std::abs(numeric - analytic) / std::max(1.0, std::abs(analytic)));
      }
    }
  }
  const bool pass = worst_conjugate <= 1e-6 && worst_gradient <= 1e-5;
  report(8, "numeric conjugate vs closed form; gradients vs finite differences", pass,
         "conjugate dev " + fmt(worst_conjugate) + " <= 1e-6, gradient rel dev " +
             fmt(worst_gradient) + " <= 1e-5",
         std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion_9() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  const EtaSearchResult log_eta = estimate_mixability_constant(
      EntropySpec::neg_shannon(1.0), LossSpec::log_loss(2), 0.05, 5);
  if (std::abs(log_eta.midpoint() - 1.0) > 0.05) pass = false;
  detail += "log midpoint " + fmt(log_eta.midpoint()) + " in 1+-5%; ";

  const EtaSearchResult brier_eta = estimate_mixability_constant(
      EntropySpec::neg_shannon(1.0), LossSpec::brier(2), 0.1, 5);
  if (std::abs(brier_eta.midpoint() - 1.0) > 0.10) pass = false;
  detail += "brier midpoint " + fmt(brier_eta.midpoint()) + " in 1+-10%; ";

  const MixabilityVerdict sharp =
      certify_mixability(EntropySpec::neg_shannon(5.0), LossSpec::brier(2), 200, 5);
  if (sharp.mixable_on_samples || sharp.witness_failures.empty()) pass = false;
  detail += "eta=5 brier rejected with " + std::to_string(sharp.witness_failures.size()) +
            " certified witnesses";
  const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
  report(9, "mixability constants recovered; non-mixable pair rejected", pass && sec < 120.0,
         detail, sec);
}

}  // namespace

int main() {
  try {
    criterion_1_and_10();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
  } catch (const std::exception& e) {
    std::printf("FAIL  acceptance suite aborted: %s\n", e.what());
    return 1;
  }
  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
