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

#include "lvmc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lvmc/exact.hpp"
#include "lvmc/run_io.hpp"
#include "lvmc/version.hpp"

namespace lvmc::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kInitSeedTag = 0x696e6974;      // "init"
constexpr std::uint64_t kFinalSampleTag = 0x66696e;     // "fin"
constexpr std::uint64_t kSweepSamplerTag = 0x73;        // "s"
constexpr std::uint64_t kSweepInitTag = 0x69;           // "i"

std::string prefixed_echo(const ExperimentConfig& cfg, const char* comment_prefix) {
  std::istringstream in(cfg.render());
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) out << comment_prefix << line << "\n";
  return out.str();
}

ExperimentConfig load_config(const CommonOptions& options) {
  ExperimentConfig cfg = parse_experiment_config(options.config_path);
  if (options.output_dir) cfg.run.output_dir = *options.output_dir;
  if (options.seed_override) {
    cfg.sampler.seed = *options.seed_override;
    cfg.ansatz.init_seed = derive_seed(*options.seed_override, kInitSeedTag);
  }
  if (options.mode_override) cfg.run.mode = *options.mode_override;
  cfg.validate();
  return cfg;
}

struct RunOutcome {
  TrajectoryRecord last;
  EstimateWithError final_sx, final_sy, final_sz;
  std::string checkpoint_file;  // relative to the output directory
  long n_iterations = 0;
};

/// The full run pipeline for one experiment: stream run.log, checkpoint at
/// the configured cadence, re-estimate observables at the final parameters,
/// and write summary.txt. Returns the data the sweep aggregator needs.
RunOutcome run_experiment(const ExperimentConfig& cfg) {
  const fs::path out_dir(cfg.run.output_dir);
  fs::create_directories(out_dir);

  std::ofstream log(out_dir / "run.log");
  if (!log) throw std::runtime_error("cannot open " + (out_dir / "run.log").string());
  log << "# lvmc " << kVersion << "\n" << prefixed_echo(cfg, "# ");
  log.flush();

  const TransverseIsingModel model = cfg.make_model(cfg.single_field());
  const NdmParameters initial = cfg.make_initial_parameters();

  const TrajectoryLogger logger = [&](TrajectoryRecord& record, const NdmParameters& p) {
    const bool cadence = (record.iteration + 1) % cfg.run.checkpoint_every == 0;
    if (cadence) {
      std::ostringstream name;
      name << "checkpoint_" << std::setw(6) << std::setfill('0') << record.iteration << ".txt";
      save_parameters(p, out_dir / name.str());
      record.checkpoint_path = name.str();
    }
    log << format_run_record(run_record_from(record)) << "\n";
    log.flush();
  };

  const OptimizationRun result = run_optimization(model, initial, cfg.sampler, cfg.optimizer,
                                                  cfg.run.mode, logger);

  RunOutcome outcome;
  outcome.n_iterations = static_cast<long>(result.trajectory.records.size());
  outcome.last = result.trajectory.records.empty() ? TrajectoryRecord{}
                                                   : result.trajectory.records.back();

  save_parameters(result.final_parameters, out_dir / "checkpoint_final.txt");
  outcome.checkpoint_file = "checkpoint_final.txt";

  const ObservableOperator ox = average_sigma_x(model.n_sites);
  const ObservableOperator oy = average_sigma_y(model.n_sites);
  const ObservableOperator oz = average_sigma_z(model.n_sites);
  if (cfg.run.mode == EstimationMode::full_summation) {
    const auto exact = [](double v) { return EstimateWithError{Complex{v, 0.0}, 0.0, 0, 0.0}; };
    outcome.final_sx = exact(observable_full_summation(result.final_parameters, ox));
    outcome.final_sy = exact(observable_full_summation(result.final_parameters, oy));
    outcome.final_sz = exact(observable_full_summation(result.final_parameters, oz));
  } else {
    SamplerConfig final_cfg = cfg.sampler;
    final_cfg.n_samples_per_chain = cfg.run.final_observable_samples;
    final_cfg.burn_in_sweeps = std::max(final_cfg.burn_in_sweeps,
                                        static_cast<int>(cfg.run.final_observable_samples / 10));
    final_cfg.seed = derive_seed(cfg.sampler.seed,
                                 static_cast<std::uint64_t>(cfg.optimizer.n_iterations),
                                 kFinalSampleTag);
    const DiagonalBatch batch = run_chain_diagonal(result.final_parameters, final_cfg);
    outcome.final_sx = observable_estimate(result.final_parameters, ox, batch);
    outcome.final_sy = observable_estimate(result.final_parameters, oy, batch);
    outcome.final_sz = observable_estimate(result.final_parameters, oz, batch);
  }

  std::vector<SummarySection> sections;
  sections.push_back(
      {"summary",
       {{"mode", cfg.run.mode == EstimationMode::sampled ? "sampled" : "exact-summation"},
        {"iterations", std::to_string(outcome.n_iterations)},
        {"final_cost", format_full(outcome.last.cost.real_mean())},
        {"final_cost_error", format_full(outcome.last.cost.error_of_mean)},
        {"acceptance_rate", format_full(outcome.last.acceptance_rate)},
        {"sx", format_full(outcome.final_sx.real_mean())},
        {"sx_error", format_full(outcome.final_sx.error_of_mean)},
        {"sy", format_full(outcome.final_sy.real_mean())},
        {"sy_error", format_full(outcome.final_sy.error_of_mean)},
        {"sz", format_full(outcome.final_sz.real_mean())},
        {"sz_error", format_full(outcome.final_sz.error_of_mean)},
        {"n_parameters", std::to_string(result.final_parameters.parameter_count())},
        {"checkpoint", outcome.checkpoint_file}}});
  write_summary_file(out_dir / "summary.txt", sections, cfg.render("config."));
  return outcome;
}

int classify_error(const std::exception& err) {
  if (dynamic_cast<const ConfigError*>(&err) != nullptr) return kExitConfigError;
  if (dynamic_cast<const std::invalid_argument*>(&err) != nullptr) return kExitConfigError;
  if (dynamic_cast<const std::runtime_error*>(&err) != nullptr) return kExitNumericalError;
  return kExitFailure;
}

double read_summary_double(const IniFile& file, const std::string& section,
                           const std::string& key) {
  const IniFile::Entry* e = file.find(section, key);
  if (e == nullptr) {
    throw std::invalid_argument(file.origin + ": missing " + section + "." + key);
  }
  return std::stod(e->value);
}

std::string read_summary_string(const IniFile& file, const std::string& section,
                                const std::string& key) {
  const IniFile::Entry* e = file.find(section, key);
  if (e == nullptr) {
    throw std::invalid_argument(file.origin + ": missing " + section + "." + key);
  }
  return e->value;
}

}  // namespace

int cmd_run(const CommonOptions& options) {
  try {
    const ExperimentConfig cfg = load_config(options);
    const RunOutcome outcome = run_experiment(cfg);
    std::cout << "run finished: " << outcome.n_iterations
              << " iterations, final cost " << outcome.last.cost.real_mean() << " +- "
              << outcome.last.cost.error_of_mean << "\n";
    std::cout << "  sx = " << outcome.final_sx.real_mean() << " +- "
              << outcome.final_sx.error_of_mean << "\n";
    std::cout << "  sy = " << outcome.final_sy.real_mean() << " +- "
              << outcome.final_sy.error_of_mean << "\n";
    std::cout << "  sz = " << outcome.final_sz.real_mean() << " +- "
              << outcome.final_sz.error_of_mean << "\n";
    std::cout << "  outputs in " << cfg.run.output_dir << "\n";
    return kExitOk;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return classify_error(err);
  }
}

int cmd_exact(const CommonOptions& options) {
  try {
    const ExperimentConfig cfg = load_config(options);
    const fs::path out_dir(cfg.run.output_dir);
    fs::create_directories(out_dir);

    const TransverseIsingModel model = cfg.make_model(cfg.single_field());
    const DenseSuperoperator liouvillian = build_dense_liouvillian(model);
    const DenseDensityMatrix rho = steady_state(liouvillian);

    const double sx = expectation(rho, average_sigma_x(model.n_sites));
    const double sy = expectation(rho, average_sigma_y(model.n_sites));
    const double sz = expectation(rho, average_sigma_z(model.n_sites));
    const double purity = (rho.matrix * rho.matrix).trace().real();
    const double residual = steady_state_residual(liouvillian, rho);

    std::vector<SummarySection> sections;
    sections.push_back({"oracle",
                        {{"sx", format_full(sx)},
                         {"sy", format_full(sy)},
                         {"sz", format_full(sz)},
                         {"purity", format_full(purity)},
                         {"residual", format_full(residual)}}});
    write_summary_file(out_dir / "oracle.txt", sections, cfg.render("config."));

    std::cout << "oracle steady state: sx = " << sx << ", sy = " << sy << ", sz = " << sz
              << ", purity = " << purity << ", residual = " << residual << "\n";
    std::cout << "  outputs in " << cfg.run.output_dir << "\n";
    return kExitOk;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return classify_error(err);
  }
}

int cmd_compare(const std::string& run_summary_path, const std::string& oracle_path,
                const std::optional<std::string>& output_dir) {
  try {
    const IniFile run_file = IniFile::parse_file(run_summary_path);
    const IniFile oracle_file = IniFile::parse_file(oracle_path);

    // The model blocks must agree key by key.
    const IniFile::Section* run_model = run_file.find("config.model");
    const IniFile::Section* oracle_model = oracle_file.find("config.model");
    if (run_model == nullptr || oracle_model == nullptr) {
      throw std::invalid_argument("compare: missing [config.model] echo in inputs");
    }
    for (const auto& e : run_model->entries) {
      const IniFile::Entry* other = oracle_file.find("config.model", e.key);
      if (other == nullptr || other->value != e.value) {
        std::cerr << "error: model mismatch on '" << e.key << "': run has '" << e.value
                  << "', oracle has '" << (other ? other->value : "<absent>") << "'\n";
        return kExitFailure;
      }
    }

    const ExperimentConfig cfg = experiment_config_from_ini(run_file, "config.");
    const fs::path out_dir(output_dir.value_or("."));
    fs::create_directories(out_dir);

    struct Row {
      std::string quantity;
      double run_value, run_error, reference;
    };
    std::vector<Row> rows;
    for (const char* name : {"sx", "sy", "sz"}) {
      rows.push_back({name, read_summary_double(run_file, "summary", name),
                      read_summary_double(run_file, "summary", std::string(name) + "_error"),
                      read_summary_double(oracle_file, "oracle", name)});
    }

    std::ofstream csv(out_dir / "comparison.csv");
    if (!csv) throw std::runtime_error("cannot open comparison.csv");
    csv << "# lvmc " << kVersion << "\n" << prefixed_echo(cfg, "# ");
    csv << "quantity,run_value,run_error,reference_value,abs_error,rel_error\n";

    bool all_within = true;
    for (const auto& row : rows) {
      const double abs_err = std::abs(row.run_value - row.reference);
      const double rel_err = abs_err / std::max(std::abs(row.reference), 1e-12);
      const bool ok =
          abs_err <= cfg.compare.abs_tolerance + cfg.compare.rel_tolerance * std::abs(row.reference);
      all_within = all_within && ok;
      csv << row.quantity << "," << format_full(row.run_value) << ","
          << format_full(row.run_error) << "," << format_full(row.reference) << ","
          << format_full(abs_err) << "," << format_full(rel_err) << "\n";
      std::cout << row.quantity << ": run " << row.run_value << " vs oracle " << row.reference
                << " (abs " << abs_err << ", rel " << rel_err << ") "
                << (ok ? "ok" : "OUT OF TOLERANCE") << "\n";
    }

    // Reduced single-site fidelities need the dense ansatz matrix, which is
    // only faithful to the run in exact-summation mode.
    if (read_summary_string(run_file, "summary", "mode") == "exact-summation") {
      const fs::path checkpoint = fs::path(run_summary_path).parent_path() /
                                  read_summary_string(run_file, "summary", "checkpoint");
      const NdmParameters params = load_parameters(checkpoint);
      const DenseDensityMatrix ansatz_rho = ansatz_to_dense(params);
      const DenseDensityMatrix exact_rho =
          steady_state(build_dense_liouvillian(cfg.make_model(cfg.single_field())));
      for (int site = 0; site < cfg.model.n_sites; ++site) {
        const int keep[] = {site};
        const FidelityResult f =
            fidelity_detail(partial_trace(ansatz_rho, keep), partial_trace(exact_rho, keep));
        csv << "fidelity_site_" << site << "," << format_full(f.value) << ",,"
            << format_full(1.0) << "," << format_full(1.0 - f.value) << ","
            << format_full(1.0 - f.value) << "\n";
        csv << "# fidelity_site_" << site << " raw = " << format_full(f.raw) << "\n";
        std::cout << "fidelity site " << site << ": " << f.value << " (raw " << f.raw << ")\n";
      }
    }

    std::cout << (all_within ? "comparison within tolerances" : "comparison FAILED") << "\n";
    return all_within ? kExitOk : kExitFailure;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return classify_error(err);
  }
}

int cmd_sweep(const CommonOptions& options) {
  try {
    const ExperimentConfig base = load_config(options);
    const fs::path out_dir(base.run.output_dir);
    fs::create_directories(out_dir);

    std::ofstream csv(out_dir / "aggregate.csv");
    if (!csv) throw std::runtime_error("cannot open aggregate.csv");
    csv << "# lvmc " << kVersion << "\n" << prefixed_echo(base, "# ");
    csv << "field,cost,cost_error,acceptance,sx,sx_error,sy,sy_error,sz,sz_error,status\n";

    bool any_failed = false;
    const bool multi_point = base.model.field_values.size() > 1;
    for (std::size_t k = 0; k < base.model.field_values.size(); ++k) {
      const double g = base.model.field_values[k];
      ExperimentConfig point = base;
      point.model.field_values = {g};
      std::ostringstream dir_name;
      dir_name << "point_" << k << "_g" << g;
      point.run.output_dir = (out_dir / dir_name.str()).string();
      // A one-value sweep is exactly cmd_run; independent per-point
      // substreams only matter when there are several points.
      if (multi_point) {
        point.sampler.seed = derive_seed(base.sampler.seed, k, kSweepSamplerTag);
        point.ansatz.init_seed = derive_seed(base.ansatz.init_seed, k, kSweepInitTag);
      }

      std::cout << "sweep point " << k << ": field = " << g << "\n";
      try {
        const RunOutcome outcome = run_experiment(point);
        csv << format_full(g) << "," << format_full(outcome.last.cost.real_mean()) << ","
            << format_full(outcome.last.cost.error_of_mean) << ","
            << format_full(outcome.last.acceptance_rate) << ","
            << format_full(outcome.final_sx.real_mean()) << ","
            << format_full(outcome.final_sx.error_of_mean) << ","
            << format_full(outcome.final_sy.real_mean()) << ","
            << format_full(outcome.final_sy.error_of_mean) << ","
            << format_full(outcome.final_sz.real_mean()) << ","
            << format_full(outcome.final_sz.error_of_mean) << ",ok\n";
      } catch (const std::exception& err) {
        std::cerr << "sweep point " << k << " failed: " << err.what() << "\n";
        csv << format_full(g) << ",,,,,,,,,,failed\n";
        any_failed = true;
      }
      csv.flush();
    }
    return any_failed ? kExitFailure : kExitOk;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return classify_error(err);
  }
}

}  // namespace lvmc::cli
