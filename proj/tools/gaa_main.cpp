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

#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gaa/harness.hpp"

namespace {

using gaa::EntropyFamily;
using gaa::EntropySpec;
using gaa::LossFamily;
using gaa::LossSpec;

EntropySpec entropy_from_flags(const std::string& family, double eta, double q) {
  EntropySpec spec;
  if (family == "neg_shannon") {
    spec.family = EntropyFamily::kNegShannon;
  } else if (family == "neg_tsallis") {
    spec.family = EntropyFamily::kNegTsallis;
    spec.tsallis_q = q;
  } else if (family == "quadratic") {
    spec.family = EntropyFamily::kQuadratic;
  } else {
    throw gaa::InvalidConfigError(
        "--entropy: expected one of 'neg_shannon', 'neg_tsallis', 'quadratic'");
  }
  spec.eta = eta;
  spec.validate();
  return spec;
}

LossSpec loss_from_flags(const std::string& family, std::size_t outcomes,
                         const std::string& loss_entropy, double loss_eta, double loss_q) {
  if (family == "log") return LossSpec::log_loss(outcomes);
  if (family == "brier") return LossSpec::brier(outcomes);
  if (family == "proper_from_entropy") {
    return LossSpec::proper_from_entropy(entropy_from_flags(loss_entropy, loss_eta, loss_q),
                                         outcomes);
  }
  throw gaa::InvalidConfigError(
      "--loss: expected one of 'log', 'brier', 'proper_from_entropy'");
}

std::vector<double> prior_from_flag(const std::string& prior) {
  if (prior == "uniform") return {};
  std::vector<double> weights;
  std::stringstream ss(prior);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      weights.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw gaa::InvalidConfigError("--prior: expected 'uniform' or comma-separated weights");
    }
  }
  if (weights.empty())
    throw gaa::InvalidConfigError("--prior: expected 'uniform' or comma-separated weights");
  return weights;
}

int run_command(const std::vector<std::string>& config_paths, const std::string& out_dir,
                unsigned jobs) {
  std::vector<std::string> stems;
  for (const std::string& path : config_paths) {
    std::string stem = std::filesystem::path(path).stem().string();
    for (const std::string& existing : stems) {
      if (existing == stem)
        throw gaa::InvalidConfigError("run: duplicate config stem '" + stem + "'");
    }
    stems.push_back(stem);
  }

  std::vector<int> codes(config_paths.size(), 0);
  std::mutex io_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config_paths.size()) return;
      try {
        const gaa::harness::GameConfig config = gaa::harness::load_config(config_paths[i]);
        const gaa::harness::RunReport report =
            gaa::harness::run_to_files(config, stems[i], out_dir);
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cout << gaa::harness::summary_json(report).dump(2) << std::endl;
        codes[i] = report.exit_code;
      } catch (const gaa::InvalidConfigError& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << e.what() << std::endl;
        codes[i] = 3;
      } catch (const gaa::Error& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << e.what() << std::endl;
        codes[i] = 1;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << e.what() << std::endl;
        codes[i] = 1;
      }
    }
  };
  if (jobs <= 1 || config_paths.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(jobs, config_paths.size());
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (int severity : {3, 4, 2}) {
    for (int code : codes) {
      if (code == severity) return severity;
    }
  }
  for (int code : codes) {
    if (code != 0) return code;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Prediction with expert advice via entropy-regularized mixture updates"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Play a configured game; write trace CSV and summary JSON");
  std::vector<std::string> config_paths;
  std::string out_dir = ".";
  unsigned jobs = 1;
  run->add_option("--config", config_paths, "Game config JSON path (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--jobs", jobs, "Number of configs run concurrently");

  // shared spec flags
  std::string entropy_family = "neg_shannon";
  double eta = 1.0;
  double tsallis_q = 2.0;
  std::string loss_family = "log";
  std::string loss_entropy = "neg_shannon";
  double loss_eta = 1.0;
  double loss_q = 2.0;
  std::size_t outcomes = 2;
  std::uint64_t samples = 200;
  std::uint64_t seed = 1;
  double precision = 0.05;

  auto add_spec_flags = [&](CLI::App* cmd, bool with_loss) {
    cmd->add_option("--entropy", entropy_family, "neg_shannon | neg_tsallis | quadratic");
    cmd->add_option("--eta", eta, "Entropy scale: Phi = base/eta");
    cmd->add_option("--q", tsallis_q, "Tsallis q (neg_tsallis only)");
    if (with_loss) {
      cmd->add_option("--loss", loss_family, "log | brier | proper_from_entropy");
      cmd->add_option("--loss-entropy", loss_entropy, "Entropy family behind a proper loss");
      cmd->add_option("--loss-eta", loss_eta, "Entropy scale behind a proper loss");
      cmd->add_option("--loss-q", loss_q, "Tsallis q behind a proper loss");
      cmd->add_option("--outcomes", outcomes, "Outcome count");
    }
  };

  auto* check = app.add_subcommand("check-mixability",
                                   "Sample (mixture, panel) pairs and test the substitution");
  add_spec_flags(check, true);
  check->add_option("--samples", samples, "Random samples (corner cases are added)");
  check->add_option("--seed", seed, "PRNG seed");

  auto* estimate = app.add_subcommand("estimate-eta",
                                      "Bisect for the largest eta keeping the loss mixable");
  add_spec_flags(estimate, true);
  estimate->add_option("--precision", precision, "Final bracket width");
  estimate->add_option("--samples", samples, "Samples per certification probe");
  estimate->add_option("--seed", seed, "PRNG seed");

  auto* bound = app.add_subcommand("bound", "Print the per-expert regret bound");
  add_spec_flags(bound, false);
  std::size_t expert_count = 2;
  std::string prior_flag = "uniform";
  bound->add_option("--experts", expert_count, "Number of experts")->required();
  bound->add_option("--prior", prior_flag, "'uniform' or comma-separated weights");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (run->parsed()) {
      return run_command(config_paths, out_dir, jobs);
    }
    if (check->parsed()) {
      const gaa::harness::CommandOutput out = gaa::harness::check_mixability_command(
          entropy_from_flags(entropy_family, eta, tsallis_q),
          loss_from_flags(loss_family, outcomes, loss_entropy, loss_eta, loss_q), samples, seed);
      std::cout << out.body.dump(2) << std::endl;
      return out.exit_code;
    }
    if (estimate->parsed()) {
      // the search scales the base family itself, so --eta must stay 1
      const gaa::harness::CommandOutput out = gaa::harness::estimate_eta_command(
          entropy_from_flags(entropy_family, eta, tsallis_q),
          loss_from_flags(loss_family, outcomes, loss_entropy, loss_eta, loss_q), precision,
          seed, samples);
      std::cout << out.body.dump(2) << std::endl;
      return out.exit_code;
    }
    if (bound->parsed()) {
      const gaa::harness::CommandOutput out = gaa::harness::bound_command(
          entropy_from_flags(entropy_family, eta, tsallis_q), prior_from_flag(prior_flag),
          expert_count);
      std::cout << out.body.dump(2) << std::endl;
      return out.exit_code;
    }
  } catch (const gaa::EtaOutOfRangeError& e) {
    std::cerr << e.what() << std::endl;
    return 6;
  } catch (const gaa::InvalidConfigError& e) {
    std::cerr << e.what() << std::endl;
    return 3;
  } catch (const gaa::InvalidInputError& e) {
    std::cerr << e.what() << std::endl;
    return 3;
  } catch (const gaa::Error& e) {
    std::cerr << e.what() << std::endl;
    return 1;
  }
  return 0;
}

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << e.what() << std::endl;
    return 1;
  }
}
