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

#include "gaa/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gaa/rng.hpp"

namespace gaa::harness {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidConfigError("config: " + where + ": " + what);
}

void expect_object(const json& j, const std::string& where,
                   const std::vector<std::string>& allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const std::string& key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(where, "unknown field '" + item.key() + "'");
  }
}

const json& require(const json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::size_t as_count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::vector<double> as_number_array(const json& j, const std::string& where,
                                    std::size_t expected_size) {
  if (!j.is_array()) fail(where, "expected an array");
  if (expected_size != 0 && j.size() != expected_size)
    fail(where, "expected " + std::to_string(expected_size) + " entries, got " +
                    std::to_string(j.size()));
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

EntropySpec parse_entropy(const json& j, const std::string& where) {
  expect_object(j, where, {"family", "eta", "q"});
  const std::string family = as_string(require(j, where, "family"), where + ".family");
  EntropySpec spec;
  if (family == "neg_shannon") {
    spec.family = EntropyFamily::kNegShannon;
  } else if (family == "neg_tsallis") {
    spec.family = EntropyFamily::kNegTsallis;
  } else if (family == "quadratic") {
    spec.family = EntropyFamily::kQuadratic;
  } else {
    fail(where + ".family",
         "expected one of 'neg_shannon', 'neg_tsallis', 'quadratic'");
  }
  if (j.contains("eta")) spec.eta = as_number(j["eta"], where + ".eta");
  if (spec.family == EntropyFamily::kNegTsallis) {
    spec.tsallis_q = as_number(require(j, where, "q"), where + ".q");
  } else if (j.contains("q")) {
    fail(where + ".q", "only valid for the neg_tsallis family");
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(where, e.what());
  }
  return spec;
}

LossSpec parse_loss(const json& j, std::size_t outcomes, const std::string& where) {
  expect_object(j, where, {"family", "entropy"});
  const std::string family = as_string(require(j, where, "family"), where + ".family");
  LossSpec loss;
  loss.outcome_count = outcomes;
  if (family == "log") {
    loss.family = LossFamily::kLog;
  } else if (family == "brier") {
    loss.family = LossFamily::kBrier;
  } else if (family == "proper_from_entropy") {
    loss.family = LossFamily::kProperFromEntropy;
    loss.proper_entropy = parse_entropy(require(j, where, "entropy"), where + ".entropy");
  } else {
    fail(where + ".family", "expected one of 'log', 'brier', 'proper_from_entropy'");
  }
  if (family != "proper_from_entropy" && j.contains("entropy"))
    fail(where + ".entropy", "only valid for the proper_from_entropy family");
  return loss;
}

std::vector<double> parse_prediction(const json& j, std::size_t outcomes,
                                     const LossSpec& loss, const std::string& where) {
  std::vector<double> p = as_number_array(j, where, outcomes);
  try {
    SimplexPoint check(p);
    if (!loss.finite_at_vertices()) {
      for (std::size_t x = 0; x < check.dimension(); ++x) {
        if (check[x] <= 0.0)
          fail(where, "zero probability at outcome " + std::to_string(x) +
                          " but the loss family requires interior predictions");
      }
    }
    return check.weights();
  } catch (const InvalidInputError& e) {
    fail(where, e.what());
  }
}

}  // namespace

GameConfig parse_config(const json& j) {
  const std::string top = "top level";
  expect_object(j, top,
                {"outcome_count", "rounds", "seed", "entropy", "loss", "prior", "experts",
                 "outcomes", "tolerances"});
  GameConfig config;
  config.outcome_count = as_count(require(j, top, "outcome_count"), "outcome_count");
  if (config.outcome_count < 2) fail("outcome_count", "must be >= 2");
  config.rounds = as_count(require(j, top, "rounds"), "rounds");
  if (j.contains("seed")) {
    config.seed = static_cast<std::uint64_t>(as_count(j["seed"], "seed"));
    config.has_seed = true;
  }
  config.entropy = parse_entropy(require(j, top, "entropy"), "entropy");
  config.loss = parse_loss(require(j, top, "loss"), config.outcome_count, "loss");

  const json& experts = require(j, top, "experts");
  if (!experts.is_array() || experts.empty()) fail("experts", "expected a non-empty array");
  bool any_stochastic = false;
  for (std::size_t i = 0; i < experts.size(); ++i) {
    const std::string where = "experts[" + std::to_string(i) + "]";
    const json& e = experts[i];
    expect_object(e, where, {"strategy", "prediction", "predictions", "base", "noise"});
    const std::string strategy = as_string(require(e, where, "strategy"), where + ".strategy");
    ExpertSpec spec;
    if (strategy == "fixed") {
      spec.strategy = ExpertSpec::Strategy::kFixed;
      spec.prediction = parse_prediction(require(e, where, "prediction"), config.outcome_count,
                                         config.loss, where + ".prediction");
      for (const char* bad : {"predictions", "base", "noise"}) {
        if (e.contains(bad)) fail(where + "." + bad, "not valid for the fixed strategy");
      }
    } else if (strategy == "table") {
      spec.strategy = ExpertSpec::Strategy::kTable;
      const json& rows = require(e, where, "predictions");
      if (!rows.is_array() || rows.size() != config.rounds)
        fail(where + ".predictions", "expected one row per round (" +
                                         std::to_string(config.rounds) + ")");
      for (std::size_t t = 0; t < rows.size(); ++t) {
        spec.predictions.push_back(
            parse_prediction(rows[t], config.outcome_count, config.loss,
                             where + ".predictions[" + std::to_string(t) + "]"));
      }
      for (const char* bad : {"prediction", "base", "noise"}) {
        if (e.contains(bad)) fail(where + "." + bad, "not valid for the table strategy");
      }
    } else if (strategy == "stochastic") {
      spec.strategy = ExpertSpec::Strategy::kStochastic;
      any_stochastic = true;
      if (e.contains("base")) {
        spec.base = parse_prediction(e["base"], config.outcome_count, config.loss,
                                     where + ".base");
      }
      if (e.contains("noise")) {
        spec.noise = as_number(e["noise"], where + ".noise");
        if (!(spec.noise >= 0.0)) fail(where + ".noise", "must be >= 0");
      }
      for (const char* bad : {"prediction", "predictions"}) {
        if (e.contains(bad)) fail(where + "." + bad, "not valid for the stochastic strategy");
      }
    } else {
      fail(where + ".strategy", "expected one of 'fixed', 'table', 'stochastic'");
    }
    config.experts.push_back(std::move(spec));
  }

  const json& prior = require(j, top, "prior");
  if (prior.is_string()) {
    if (prior.get<std::string>() != "uniform")
      fail("prior", "expected 'uniform' or an array of weights");
    config.uniform_prior = true;
  } else {
    config.uniform_prior = false;
    config.prior = as_number_array(prior, "prior", config.experts.size());
    try {
      config.prior = SimplexPoint(config.prior).weights();
    } catch (const InvalidInputError& e) {
      fail("prior", e.what());
    }
  }

  const json& outcomes = require(j, top, "outcomes");
  expect_object(outcomes, "outcomes", {"source", "values", "probabilities"});
  const std::string source = as_string(require(outcomes, "outcomes", "source"),
                                       "outcomes.source");
  if (source == "explicit") {
    config.explicit_outcomes = true;
    const json& values = require(outcomes, "outcomes", "values");
    if (!values.is_array() || values.size() != config.rounds)
      fail("outcomes.values", "expected one outcome per round (" +
                                  std::to_string(config.rounds) + ")");
    for (std::size_t t = 0; t < values.size(); ++t) {
      const std::string where = "outcomes.values[" + std::to_string(t) + "]";
      const std::size_t x = as_count(values[t], where);
      if (x >= config.outcome_count) fail(where, "outcome index out of range");
      config.outcome_values.push_back(x);
    }
    if (outcomes.contains("probabilities"))
      fail("outcomes.probabilities", "not valid for the explicit source");
  } else if (source == "random") {
    config.explicit_outcomes = false;
    config.outcome_probabilities =
        as_number_array(require(outcomes, "outcomes", "probabilities"),
                        "outcomes.probabilities", config.outcome_count);
    try {
      config.outcome_probabilities = SimplexPoint(config.outcome_probabilities).weights();
    } catch (const InvalidInputError& e) {
      fail("outcomes.probabilities", e.what());
    }
    if (outcomes.contains("values")) fail("outcomes.values", "not valid for the random source");
  } else {
    fail("outcomes.source", "expected 'explicit' or 'random'");
  }

  if (j.contains("tolerances")) {
    const json& tol = j["tolerances"];
    expect_object(tol, "tolerances", {"slack", "bound_per_round"});
    if (tol.contains("slack")) {
      config.slack_tolerance = as_number(tol["slack"], "tolerances.slack");
      if (!(config.slack_tolerance > 0.0)) fail("tolerances.slack", "must be > 0");
    }
    if (tol.contains("bound_per_round")) {
      config.bound_tolerance_per_round =
          as_number(tol["bound_per_round"], "tolerances.bound_per_round");
      if (!(config.bound_tolerance_per_round >= 0.0))
        fail("tolerances.bound_per_round", "must be >= 0");
    }
  }

  if ((any_stochastic || !config.explicit_outcomes) && !config.has_seed)
    fail("seed", "required whenever any expert or the outcome source is stochastic");
  return config;
}

GameConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfigError("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidConfigError("config: JSON parse failure in '" + path + "': " + e.what());
  }
  return parse_config(j);
}

MaterializedGame materialize(const GameConfig& config) {
  MaterializedGame game;
  const std::size_t n_experts = config.experts.size();
  const std::size_t n_outcomes = config.outcome_count;

  std::vector<std::vector<double>> bases(n_experts);
  std::vector<Rng> streams;
  streams.reserve(n_experts);
  for (std::size_t i = 0; i < n_experts; ++i) {
    streams.push_back(Rng::stream(config.seed, "expert-predictions", i));
    if (config.experts[i].strategy == ExpertSpec::Strategy::kStochastic) {
      bases[i] = config.experts[i].base.empty()
                     ? Rng::stream(config.seed, "expert-base", i).dirichlet_uniform(n_outcomes)
                     : config.experts[i].base;
    }
  }

  game.panels.reserve(config.rounds);
  for (std::size_t t = 0; t < config.rounds; ++t) {
    ExpertPanel panel;
    panel.predictions.reserve(n_experts);
    for (std::size_t i = 0; i < n_experts; ++i) {
      const ExpertSpec& e = config.experts[i];
      switch (e.strategy) {
        case ExpertSpec::Strategy::kFixed:
          panel.predictions.push_back(SimplexPoint(e.prediction));
          break;
        case ExpertSpec::Strategy::kTable:
          panel.predictions.push_back(SimplexPoint(e.predictions[t]));
          break;
        case ExpertSpec::Strategy::kStochastic: {
          std::vector<double> w(n_outcomes);
          double sum = 0.0;
          for (std::size_t x = 0; x < n_outcomes; ++x) {
            w[x] = bases[i][x] * std::exp(e.noise * streams[i].next_normal());
            sum += w[x];
          }
          for (double& v : w) v /= sum;
          panel.predictions.push_back(clamp_interior(SimplexPoint(std::move(w)), 1e-12));
          break;
        }
      }
    }
    game.panels.push_back(std::move(panel));
  }

  if (config.explicit_outcomes) {
    game.outcomes = config.outcome_values;
  } else {
    Rng rng = Rng::stream(config.seed, "outcomes", 0);
    game.outcomes.reserve(config.rounds);
    for (std::size_t t = 0; t < config.rounds; ++t) {
      game.outcomes.push_back(rng.categorical(config.outcome_probabilities));
    }
  }
  return game;
}

std::string fmt12(double value) {
  if (value == 0.0) value = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return std::string(buf);
}

namespace {

double round12(double value) { return std::strtod(fmt12(value).c_str(), nullptr); }

void write_trace_csv(const std::string& path, const GameTrace& trace,
                     std::size_t expert_count) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidConfigError("run: cannot write trace file '" + path + "'");
  out << "round,outcome,player_prediction,player_loss,slack";
  for (std::size_t i = 0; i < expert_count; ++i) out << ",loss_" << i;
  for (std::size_t i = 0; i < expert_count; ++i) out << ",cum_loss_" << i;
  out << ",cumulative_regret_vs_best,bound_vs_best\n";
  for (const TraceRound& r : trace.rounds) {
    out << r.round << ',' << r.outcome << ',';
    for (std::size_t x = 0; x < r.player_prediction.dimension(); ++x) {
      if (x) out << ';';
      out << fmt12(r.player_prediction[x]);
    }
    out << ',' << fmt12(r.player_loss) << ',' << fmt12(r.worst_slack);
    for (std::size_t i = 0; i < expert_count; ++i) out << ',' << fmt12(r.assessment_values[i]);
    std::size_t best = 0;
    for (std::size_t i = 1; i < expert_count; ++i) {
      if (r.cumulative_expert_losses[i] < r.cumulative_expert_losses[best]) best = i;
    }
    for (std::size_t i = 0; i < expert_count; ++i)
      out << ',' << fmt12(r.cumulative_expert_losses[i]);
    out << ',' << fmt12(r.cumulative_player_loss - r.cumulative_expert_losses[best]);
    out << ',' << fmt12(trace.bound_per_expert[best]);
    out << '\n';
  }
}

}  // namespace

int exit_code_for(std::size_t infeasible_rounds, const std::vector<bool>& bound_satisfied) {
  if (infeasible_rounds > 0) return 2;
  for (bool ok : bound_satisfied) {
    if (!ok) return 4;
  }
  return 0;
}

nlohmann::ordered_json summary_json(const RunReport& report) {
  ordered_json j;
  j["rounds"] = report.rounds;
  j["regret"] = round12(report.regret);
  j["best_expert"] = report.best_expert;
  ordered_json regret_each = ordered_json::array();
  for (double r : report.regret_per_expert) regret_each.push_back(round12(r));
  j["regret_per_expert"] = regret_each;
  ordered_json bounds = ordered_json::array();
  for (double b : report.bound_per_expert) bounds.push_back(round12(b));
  j["bound_per_expert"] = bounds;
  ordered_json satisfied = ordered_json::array();
  for (bool ok : report.bound_satisfied) satisfied.push_back(ok);
  j["bound_satisfied"] = satisfied;
  j["infeasible_rounds"] = report.infeasible_rounds;
  j["max_round_slack"] = round12(report.max_round_slack);
  j["telescoping_residual"] = round12(report.telescoping_residual);
  j["trace_path"] = report.trace_path;
  j["exit_code"] = report.exit_code;
  j["wall_time_seconds"] = report.wall_time_seconds;
  return j;
}

RunReport run_to_files(const GameConfig& config, const std::string& stem,
                       const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const MaterializedGame game = materialize(config);

  const SimplexPoint prior = config.uniform_prior
                                 ? SimplexPoint::uniform(config.experts.size())
                                 : SimplexPoint(config.prior);
  SubstitutionConfig sub_cfg;
  sub_cfg.slack_tolerance = config.slack_tolerance;
  const GameTrace trace =
      run_game(config.entropy, prior, config.loss, game.panels, game.outcomes, sub_cfg);

  RunReport report;
  report.rounds = config.rounds;
  report.regret = trace.regret_vs_best;
  report.best_expert = trace.best_expert;
  report.bound_per_expert = trace.bound_per_expert;
  report.regret_per_expert.resize(config.experts.size());
  report.bound_satisfied.resize(config.experts.size());
  const double tolerance =
      config.bound_tolerance_per_round * static_cast<double>(config.rounds);
  for (std::size_t i = 0; i < config.experts.size(); ++i) {
    report.regret_per_expert[i] =
        trace.final_player_loss - (trace.rounds.empty() ? 0.0 : trace.final_expert_losses[i]);
    report.bound_satisfied[i] =
        report.regret_per_expert[i] <= report.bound_per_expert[i] + tolerance;
  }
  report.infeasible_rounds = trace.infeasible_rounds;
  report.max_round_slack = trace.max_round_slack;
  report.telescoping_residual = trace.telescoping_residual;

  std::filesystem::create_directories(out_dir);
  report.trace_path = (std::filesystem::path(out_dir) / (stem + "_trace.csv")).string();
  write_trace_csv(report.trace_path, trace, config.experts.size());
  report.exit_code = exit_code_for(report.infeasible_rounds, report.bound_satisfied);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string summary_path =
      (std::filesystem::path(out_dir) / (stem + "_summary.json")).string();
  std::ofstream out(summary_path, std::ios::binary);
  if (!out) throw InvalidConfigError("run: cannot write summary file '" + summary_path + "'");
  out << summary_json(report).dump(2) << '\n';
  return report;
}

CommandOutput check_mixability_command(const EntropySpec& entropy, const LossSpec& loss,
                                       std::uint64_t samples, std::uint64_t seed) {
  const MixabilityVerdict verdict = certify_mixability(entropy, loss, samples, seed);
  ordered_json body;
  body["mixable_on_samples"] = verdict.mixable_on_samples;
  body["samples_tested"] = verdict.samples_tested;
  ordered_json witnesses = ordered_json::array();
  for (const MixabilityWitness& w : verdict.witness_failures) {
    ordered_json item;
    item["sample_index"] = w.sample_index;
    item["slack"] = round12(w.slack);
    ordered_json mixture = ordered_json::array();
    for (double v : w.mixture) mixture.push_back(round12(v));
    item["mixture"] = mixture;
    ordered_json panel = ordered_json::array();
    for (const SimplexPoint& p : w.panel.predictions) {
      ordered_json pred = ordered_json::array();
      for (double v : p) pred.push_back(round12(v));
      panel.push_back(pred);
    }
    item["panel"] = panel;
    witnesses.push_back(item);
  }
  body["witness_failures"] = witnesses;
  return CommandOutput{body, verdict.mixable_on_samples ? 0 : 5};
}

CommandOutput estimate_eta_command(const EntropySpec& base, const LossSpec& loss,
                                   double precision, std::uint64_t seed,
                                   std::uint64_t samples_per_probe) {
  const EtaSearchResult result =
      estimate_mixability_constant(base, loss, precision, seed, samples_per_probe);
  ordered_json body;
  body["bracket"] = ordered_json::array({round12(result.lower), round12(result.upper)});
  body["midpoint"] = round12(result.midpoint());
  body["oracle_calls"] = result.oracle_calls;
  return CommandOutput{body, 0};
}

CommandOutput bound_command(const EntropySpec& entropy, const std::vector<double>& prior_or_empty,
                            std::size_t expert_count) {
  if (expert_count < 1) throw InvalidConfigError("bound: expert count must be >= 1");
  SimplexPoint prior = prior_or_empty.empty() ? SimplexPoint::uniform(expert_count)
                                              : SimplexPoint(prior_or_empty);
  if (prior.dimension() != expert_count)
    throw InvalidConfigError("bound: prior dimension must match expert count");
  ordered_json bounds = ordered_json::array();
  for (std::size_t i = 0; i < expert_count; ++i) {
    bounds.push_back(round12(regret_bound(entropy, prior, i)));
  }
  ordered_json body;
  body["bound_per_expert"] = bounds;
  return CommandOutput{body, 0};
}

}  // namespace gaa::harness
