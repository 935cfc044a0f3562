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

#ifndef GAA_HARNESS_HPP
#define GAA_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaa/gaa.hpp"

namespace gaa::harness {

struct ExpertSpec {
  enum class Strategy { kFixed, kTable, kStochastic };
  Strategy strategy = Strategy::kFixed;
  std::vector<double> prediction;                // fixed
  std::vector<std::vector<double>> predictions;  // table, one row per round
  std::vector<double> base;                      // stochastic; drawn when empty
  double noise = 0.25;                           // stochastic log-jitter scale
};

struct GameConfig {
  std::size_t outcome_count = 2;
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;
  EntropySpec entropy;
  LossSpec loss;
  bool uniform_prior = true;
  std::vector<double> prior;  // explicit prior when not uniform
  std::vector<ExpertSpec> experts;
  bool explicit_outcomes = true;
  std::vector<std::size_t> outcome_values;      // explicit
  std::vector<double> outcome_probabilities;    // random
  double slack_tolerance = 1e-7;
  double bound_tolerance_per_round = 1e-5;
};

/// Strict parse: unknown fields and inconsistent dimensions are rejected with
/// a message naming the offending field.
GameConfig parse_config(const nlohmann::json& j);
GameConfig load_config(const std::string& path);

struct MaterializedGame {
  std::vector<ExpertPanel> panels;
  std::vector<std::size_t> outcomes;
};

/// Expands expert strategies and the outcome source into per-round data,
/// deterministically from the config seed.
MaterializedGame materialize(const GameConfig& config);

struct RunReport {
  std::size_t rounds = 0;
  double regret = 0.0;
  std::size_t best_expert = 0;
  std::vector<double> regret_per_expert;
  std::vector<double> bound_per_expert;
  std::vector<bool> bound_satisfied;
  std::size_t infeasible_rounds = 0;
  double max_round_slack = 0.0;
  double telescoping_residual = 0.0;
  double wall_time_seconds = 0.0;
  std::string trace_path;
  int exit_code = 0;
};

/// Runs the configured game and writes `<stem>_trace.csv` and
/// `<stem>_summary.json` under `out_dir`.
RunReport run_to_files(const GameConfig& config, const std::string& stem,
                       const std::string& out_dir);

/// 0 when all bound checks pass, 2 when any round had an infeasible
/// substitution (bound checks are skipped for such runs), 4 when a bound
/// check failed.
int exit_code_for(std::size_t infeasible_rounds, const std::vector<bool>& bound_satisfied);

std::string fmt12(double value);
nlohmann::ordered_json summary_json(const RunReport& report);

struct CommandOutput {
  nlohmann::ordered_json body;
  int exit_code = 0;
};

CommandOutput check_mixability_command(const EntropySpec& entropy, const LossSpec& loss,
                                       std::uint64_t samples, std::uint64_t seed);
CommandOutput estimate_eta_command(const EntropySpec& base, const LossSpec& loss,
                                   double precision, std::uint64_t seed,
                                   std::uint64_t samples_per_probe);
CommandOutput bound_command(const EntropySpec& entropy, const std::vector<double>& prior_or_empty,
                            std::size_t expert_count);

}  // namespace gaa::harness

#endif  // GAA_HARNESS_HPP
