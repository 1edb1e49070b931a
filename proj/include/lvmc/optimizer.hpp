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

#ifndef LVMC_OPTIMIZER_HPP
#define LVMC_OPTIMIZER_HPP

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "lvmc/estimators.hpp"

namespace lvmc {

enum class LearningSchedule { constant, exponential_decay };

struct OptimizerConfig {
  int n_iterations = 1000;
  double learning_rate = 0.01;
  LearningSchedule schedule = LearningSchedule::constant;
  double decay_rate = 1.0;  // eta(t) = eta * decay_rate^t for exponential_decay
  bool sr_enabled = true;
  double sr_diag_shift = 0.01;
  double solver_tolerance = 1e-6;

  void validate() const;
};

enum class EstimationMode { sampled, full_summation };

/// Covariance of the log-derivatives over the joint-chain distribution,
/// S = Re[<conj(O) O^T> - <conj(O)><O^T>], the natural-gradient metric.
Eigen::MatrixXd sr_matrix(const Eigen::MatrixXcd& log_derivs, const Eigen::VectorXd& weights);
Eigen::MatrixXd sr_matrix(const BatchEvaluation& eval);

/// Parameter step: solves (S + shift I) delta = gradient when `sr` is given
/// (dense Cholesky up to 1024 parameters, conjugate gradient beyond), plain
/// delta = gradient otherwise. The caller applies v <- v - eta(t) delta.
Eigen::VectorXd compute_update(const Eigen::VectorXd& gradient, const Eigen::MatrixXd* sr,
                               const OptimizerConfig& cfg);

struct TrajectoryRecord {
  long iteration = 0;
  EstimateWithError cost;
  double acceptance_rate = 1.0;
  EstimateWithError sigma_x, sigma_y, sigma_z;  // site-averaged magnetizations
  double wall_time_seconds = 0.0;
  std::string checkpoint_path;  // filled by callers that write checkpoints
};

struct OptimizationTrajectory {
  std::vector<TrajectoryRecord> records;
};

/// Called after every iteration; may mutate the record (e.g. to attach a
/// checkpoint path) before it is appended to the trajectory.
using TrajectoryLogger = std::function<void(TrajectoryRecord&, const NdmParameters&)>;

struct OptimizationRun {
  NdmParameters final_parameters;
  OptimizationTrajectory trajectory;
};

/// Iterative minimization of the steady-state cost: each iteration samples
/// the joint chain (or enumerates the full space), estimates cost, gradient,
/// the SR metric, and the magnetizations, then steps the parameters.
///
/// Sampling seeds are derived per iteration from sampler_cfg.seed and the
/// global iteration index, so a run restarted from iteration k with the same
/// seed reproduces the remainder exactly. Aborts with std::runtime_error on
/// NaN estimates or when the cost exceeds 100x its starting value.
OptimizationRun run_optimization(const TransverseIsingModel& model, NdmParameters initial,
                                 const SamplerConfig& sampler_cfg,
                                 const OptimizerConfig& optimizer_cfg, EstimationMode mode,
                                 const TrajectoryLogger& logger = {},
                                 long start_iteration = 0);

}  // namespace lvmc

#endif  // LVMC_OPTIMIZER_HPP
