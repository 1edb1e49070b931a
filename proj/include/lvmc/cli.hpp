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

#ifndef LVMC_CLI_HPP
#define LVMC_CLI_HPP

#include <optional>
#include <string>

#include "lvmc/config.hpp"

namespace lvmc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

struct CommonOptions {
  std::string config_path;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed_override;
  std::optional<EstimationMode> mode_override;
};

/// Optimizes one experiment; writes run.log, checkpoints, and summary.txt.
int cmd_run(const CommonOptions& options);

/// Solves the steady state with the dense oracle; writes oracle.txt.
int cmd_exact(const CommonOptions& options);

/// Compares a run summary against an oracle output; writes comparison.csv.
/// Exit status reflects the configured tolerances.
int cmd_compare(const std::string& run_summary_path, const std::string& oracle_path,
                const std::optional<std::string>& output_dir);

/// One run per field value in model.field_list; writes per-point
/// subdirectories and an aggregate CSV. Per-point failures are recorded and
/// the sweep continues; the exit status is nonzero if any point failed.
int cmd_sweep(const CommonOptions& options);

}  // namespace lvmc::cli

#endif  // LVMC_CLI_HPP
