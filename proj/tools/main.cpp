// Copyright 2026 The LVMC Authors. - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <optional>
#include <string>

#include "lvmc/cli.hpp"
#include "lvmc/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Variational Monte Carlo steady states for open spin lattices"};
  app.set_version_flag("--version", std::string("lvmc ") + lvmc::kVersion);
  app.require_subcommand(1);

  lvmc::cli::CommonOptions options;
  std::string mode;
  const auto add_common = [&](CLI::App* sub, bool with_mode) {
    sub->add_option("--config", options.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--output", options.output_dir, "output directory (overrides config)");
    sub->add_option("--seed-override", options.seed_override,
                    "master seed replacing the config's sampler and init seeds");
    if (with_mode) {
      sub->add_option("--mode", mode, "estimation mode (overrides config)")
          ->check(CLI::IsMember({"sampled", "exact-summation"}));
    }
  };

  CLI::App* run = app.add_subcommand("run", "optimize the ansatz for one experiment");
  add_common(run, true);
  CLI::App* exact = app.add_subcommand("exact", "dense-oracle steady state and observables");
  add_common(exact, false);
  CLI::App* sweep = app.add_subcommand("sweep", "one run per field value, plus aggregate CSV");
  add_common(sweep, true);

  CLI::App* compare = app.add_subcommand("compare", "compare a run summary against an oracle");
  std::string run_summary, oracle_output;
  std::optional<std::string> compare_dir;
  compare->add_option("run_summary", run_summary, "summary.txt from `lvmc run`")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("oracle_output", oracle_output, "oracle.txt from `lvmc exact`")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--output", compare_dir, "directory for comparison.csv");

  CLI11_PARSE(app, argc, argv);

  if (!mode.empty()) {
    options.mode_override = mode == "sampled" ? lvmc::EstimationMode::sampled
                                              : lvmc::EstimationMode::full_summation;
  }

  if (run->parsed()) return lvmc::cli::cmd_run(options);
  if (exact->parsed()) return lvmc::cli::cmd_exact(options);
  if (sweep->parsed()) return lvmc::cli::cmd_sweep(options);
  if (compare->parsed()) return lvmc::cli::cmd_compare(run_summary, oracle_output, compare_dir);
  return lvmc::cli::kExitFailure;
}
