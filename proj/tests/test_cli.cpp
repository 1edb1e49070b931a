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

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lvmc/cli.hpp"
#include "lvmc/run_io.hpp"

using namespace lvmc;

namespace {

namespace fs = std::filesystem;

fs::path make_temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("lvmc_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string tiny_run_config(const fs::path& out_dir) {
  std::ostringstream cfg;
  cfg << "[model]\nn_sites = 2\ncoupling = 2.0\nfield = 0.5\n\n";
  cfg << "[ansatz]\nalpha = 1\nbeta = 1\ninit_scale = 0.01\ninit_seed = 5\n\n";
  cfg << "[sampler]\nn_samples_per_chain = 100\nseed = 7\n\n";
  cfg << "[optimizer]\nn_iterations = 300\n\n";
  cfg << "[run]\nmode = exact-summation\noutput = " << out_dir.string()
      << "\ncheckpoint_every = 100\n";
  return cfg.str();
}

int run_binary(const std::string& args, const fs::path& stderr_to) {
  const std::string command =
      std::string(LVMC_CLI_BINARY) + " " + args + " 2> " + stderr_to.string();
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cmd_exact writes the oracle summary") {
  const fs::path dir = make_temp_dir("exact");
  const fs::path cfg_path = dir / "config.ini";
  std::ostringstream cfg;
  cfg << "[model]\nn_sites = 1\ncoupling = 0.0\nfield = 0.0\n\n";
  cfg << "[ansatz]\nalpha = 1\nbeta = 1\n\n";
  cfg << "[optimizer]\nn_iterations = 1\n\n";
  cfg << "[run]\noutput = " << (dir / "out").string() << "\n";
  write_file(cfg_path, cfg.str());

  cli::CommonOptions options;
  options.config_path = cfg_path.string();
  CHECK(cli::cmd_exact(options) == cli::kExitOk);

  const IniFile oracle = IniFile::parse_file(dir / "out" / "oracle.txt");
  CHECK(std::stod(oracle.find("oracle", "sz")->value) == doctest::Approx(-1.0));
  CHECK(std::stod(oracle.find("oracle", "residual")->value) <= 1e-10);
  CHECK(oracle.find("config.model", "n_sites")->value == "1");
  fs::remove_all(dir);
}

TEST_CASE("cmd_run produces parseable outputs and is deterministic") {
  const fs::path dir = make_temp_dir("run");
  const fs::path cfg_path = dir / "config.ini";
  write_file(cfg_path, tiny_run_config(dir / "out"));

  cli::CommonOptions options;
  options.config_path = cfg_path.string();
  REQUIRE(cli::cmd_run(options) == cli::kExitOk);

  CHECK(fs::exists(dir / "out" / "run.log"));
  CHECK(fs::exists(dir / "out" / "summary.txt"));
  CHECK(fs::exists(dir / "out" / "checkpoint_final.txt"));
  CHECK(fs::exists(dir / "out" / "checkpoint_000099.txt"));

  // Every non-comment log line round-trips through the record parser.
  std::ifstream log(dir / "out" / "run.log");
  std::string line;
  long records = 0;
  while (std::getline(log, line)) {
    if (line.empty() || line.front() == '#') continue;
    const RunRecord r = parse_run_record(line);
    CHECK(r.iteration == records);
    ++records;
  }
  CHECK(records == 300);

  const IniFile summary = IniFile::parse_file(dir / "out" / "summary.txt");
  CHECK(std::stod(summary.find("summary", "final_cost")->value) <= 1e-3);
  CHECK(summary.find("summary", "checkpoint")->value == "checkpoint_final.txt");

  // Rerunning the same config must reproduce the summary byte for byte.
  const std::string first = read_file(dir / "out" / "summary.txt");
  REQUIRE(cli::cmd_run(options) == cli::kExitOk);
  CHECK(read_file(dir / "out" / "summary.txt") == first);
  fs::remove_all(dir);
}

TEST_CASE("malformed configs are reported with the offending field") {
  const fs::path dir = make_temp_dir("badcfg");
  const fs::path cfg_path = dir / "config.ini";
  write_file(cfg_path,
             "[model]\nn_sites = 2\ncoupling = snail\nfield = 0.5\n\n"
             "[ansatz]\nalpha = 1\nbeta = 1\n\n[optimizer]\nn_iterations = 1\n");

  const fs::path stderr_file = dir / "stderr.txt";
  const int code = run_binary("run --config " + cfg_path.string(), stderr_file);
  CHECK(code == cli::kExitConfigError);
  const std::string message = read_file(stderr_file);
  CHECK(message.find("model.coupling") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("compare: run against oracle, and against itself") {
  const fs::path dir = make_temp_dir("compare");
  write_file(dir / "config.ini", tiny_run_config(dir / "out"));

  cli::CommonOptions options;
  options.config_path = (dir / "config.ini").string();
  REQUIRE(cli::cmd_run(options) == cli::kExitOk);
  options.output_dir = (dir / "oracle").string();
  REQUIRE(cli::cmd_exact(options) == cli::kExitOk);

  CHECK(cli::cmd_compare((dir / "out" / "summary.txt").string(),
                         (dir / "oracle" / "oracle.txt").string(),
                         (dir / "cmp").string()) == cli::kExitOk);
  const std::string csv = read_file(dir / "cmp" / "comparison.csv");
  CHECK(csv.find("quantity,run_value") != std::string::npos);
  CHECK(csv.find("\nsx,") != std::string::npos);
  CHECK(csv.find("fidelity_site_0,") != std::string::npos);

  // Comparing a run against an oracle holding its own values: zero errors.
  const IniFile summary = IniFile::parse_file(dir / "out" / "summary.txt");
  std::ostringstream self;
  self << "[oracle]\nsx = " << summary.find("summary", "sx")->value << "\n";
  self << "sy = " << summary.find("summary", "sy")->value << "\n";
  self << "sz = " << summary.find("summary", "sz")->value << "\n";
  self << "purity = 1\nresidual = 0\n\n";
  self << read_file(dir / "out" / "summary.txt").substr(
      read_file(dir / "out" / "summary.txt").find("[config.model]"));
  write_file(dir / "self_oracle.txt", self.str());
  CHECK(cli::cmd_compare((dir / "out" / "summary.txt").string(),
                         (dir / "self_oracle.txt").string(),
                         (dir / "cmp_self").string()) == cli::kExitOk);
  std::ifstream cmp(dir / "cmp_self" / "comparison.csv");
  std::string line;
  while (std::getline(cmp, line)) {
    if (line.rfind("sx,", 0) == 0 || line.rfind("sy,", 0) == 0 || line.rfind("sz,", 0) == 0) {
      std::stringstream ss(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      CHECK(std::stod(cells[4]) == 0.0);  // abs_error column
    }
  }

  // Mismatched model blocks are rejected.
  std::string other = read_file(dir / "oracle" / "oracle.txt");
  const auto pos = other.find("field = ");
  other.replace(pos, other.find('\n', pos) - pos, "field = 0.75");
  write_file(dir / "other_oracle.txt", other);
  CHECK(cli::cmd_compare((dir / "out" / "summary.txt").string(),
                         (dir / "other_oracle.txt").string(),
                         (dir / "cmp2").string()) == cli::kExitFailure);
  fs::remove_all(dir);
}

TEST_CASE("sweep: aggregate rows per point; single-point sweep equals run") {
  const fs::path dir = make_temp_dir("sweep");
  std::string cfg = tiny_run_config(dir / "sweep_out");
  const auto pos = cfg.find("field = 0.5");
  cfg.replace(pos, 11, "field_list = 0.5, 1.0");
  write_file(dir / "sweep.ini", cfg);

  cli::CommonOptions options;
  options.config_path = (dir / "sweep.ini").string();
  REQUIRE(cli::cmd_sweep(options) == cli::kExitOk);

  std::ifstream agg(dir / "sweep_out" / "aggregate.csv");
  std::string line;
  long data_rows = 0;
  bool header_seen = false;
  while (std::getline(agg, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      CHECK(line.rfind("field,", 0) == 0);
      continue;
    }
    CHECK(line.find(",ok") != std::string::npos);
    ++data_rows;
  }
  CHECK(data_rows == 2);
  CHECK(fs::exists(dir / "sweep_out" / "point_0_g0.5" / "summary.txt"));
  CHECK(fs::exists(dir / "sweep_out" / "point_1_g1" / "summary.txt"));

  // A one-value sweep runs the master seeds directly, so its point summary
  // matches cmd_run's.
  write_file(dir / "single.ini", tiny_run_config(dir / "single_out"));
  std::string single_sweep = tiny_run_config(dir / "single_sweep_out");
  const auto fpos = single_sweep.find("field = 0.5");
  single_sweep.replace(fpos, 11, "field_list = 0.5");
  write_file(dir / "single_sweep.ini", single_sweep);

  options.config_path = (dir / "single.ini").string();
  REQUIRE(cli::cmd_run(options) == cli::kExitOk);
  options.config_path = (dir / "single_sweep.ini").string();
  REQUIRE(cli::cmd_sweep(options) == cli::kExitOk);

  const IniFile run_summary = IniFile::parse_file(dir / "single_out" / "summary.txt");
  const IniFile point_summary =
      IniFile::parse_file(dir / "single_sweep_out" / "point_0_g0.5" / "summary.txt");
  for (const char* key : {"final_cost", "sx", "sy", "sz", "acceptance_rate"}) {
    CHECK(run_summary.find("summary", key)->value ==
          point_summary.find("summary", key)->value);
  }
  fs::remove_all(dir);
}
