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

#include "lvmc/optimizer.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace lvmc {

namespace {

constexpr int kDenseSolveLimit = 1024;

EstimateWithError exact_estimate(double value) {
  return {Complex{value, 0.0}, 0.0, 0, 0.0};
}

}  // namespace

void OptimizerConfig::validate() const {
  if (n_iterations < 0) throw std::invalid_argument("OptimizerConfig: negative n_iterations");
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("OptimizerConfig: learning_rate must be > 0");
  }
  if (schedule == LearningSchedule::exponential_decay && !(decay_rate > 0.0 && decay_rate <= 1.0)) {
    throw std::invalid_argument("OptimizerConfig: decay_rate must be in (0, 1]");
  }
  if (sr_enabled && !(sr_diag_shift > 0.0)) {
    throw std::invalid_argument("OptimizerConfig: sr_diag_shift must be > 0");
  }
  if (!(solver_tolerance > 0.0)) {
    throw std::invalid_argument("OptimizerConfig: solver_tolerance must be > 0");
  }
}

Eigen::MatrixXd sr_matrix(const Eigen::MatrixXcd& log_derivs, const Eigen::VectorXd& weights) {
  if (log_derivs.rows() != weights.size() || weights.size() == 0) {
    throw std::invalid_argument("sr_matrix: empty or mismatched samples");
  }
  const Eigen::VectorXcd mean = log_derivs.transpose() * weights.cast<Complex>();
  const Eigen::MatrixXcd second_moment =
      log_derivs.adjoint() * weights.asDiagonal() * log_derivs;
  return (second_moment - mean.conjugate() * mean.transpose()).real();
}

Eigen::MatrixXd sr_matrix(const BatchEvaluation& eval) {
  return sr_matrix(eval.log_derivs, eval.weights);
}

Eigen::VectorXd compute_update(const Eigen::VectorXd& gradient, const Eigen::MatrixXd* sr,
                               const OptimizerConfig& cfg) {
  if (!cfg.sr_enabled || sr == nullptr) return gradient;
  if (sr->rows() != gradient.size() || sr->cols() != gradient.size()) {
    throw std::invalid_argument("compute_update: SR matrix shape mismatch");
  }
  Eigen::MatrixXd shifted = *sr;
  shifted.diagonal().array() += cfg.sr_diag_shift;

  if (gradient.size() <= kDenseSolveLimit) {
    const Eigen::LDLT<Eigen::MatrixXd> solver(shifted);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("compute_update: dense SR solve failed");
    }
    return solver.solve(gradient);
  }
  Eigen::ConjugateGradient<Eigen::MatrixXd, Eigen::Lower | Eigen::Upper> solver;
  solver.setTolerance(cfg.solver_tolerance);
  solver.compute(shifted);
  const Eigen::VectorXd delta = solver.solve(gradient);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("compute_update: SR conjugate-gradient solve did not converge");
  }
  return delta;
}

OptimizationRun run_optimization(const TransverseIsingModel& model, NdmParameters initial,
                                 const SamplerConfig& sampler_cfg,
                                 const OptimizerConfig& optimizer_cfg, EstimationMode mode,
                                 const TrajectoryLogger& logger, long start_iteration) {
  model.validate();
  initial.validate();
  optimizer_cfg.validate();
  if (initial.n_sites != model.n_sites) {
    throw std::invalid_argument("run_optimization: model/ansatz size mismatch");
  }
  if (mode == EstimationMode::full_summation && model.n_sites > 6) {
    throw std::invalid_argument("run_optimization: full summation limited to 6 sites");
  }

  const ObservableOperator obs_x = average_sigma_x(model.n_sites);
  const ObservableOperator obs_y = average_sigma_y(model.n_sites);
  const ObservableOperator obs_z = average_sigma_z(model.n_sites);

  OptimizationRun run{std::move(initial), {}};
  run.trajectory.records.reserve(static_cast<std::size_t>(optimizer_cfg.n_iterations));
  Eigen::VectorXd v = to_parameter_vector(run.final_parameters);
  double initial_cost = -1.0;

  const auto t_start = std::chrono::steady_clock::now();
  for (long step = 0; step < optimizer_cfg.n_iterations; ++step) {
    const long iteration = start_iteration + step;
    const NdmParameters& p = run.final_parameters;

    TrajectoryRecord record;
    record.iteration = iteration;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd metric;

    if (mode == EstimationMode::full_summation) {
      const BatchEvaluation eval = evaluate_full_space(p, model);
      record.cost = exact_estimate(cost_from(eval));
      gradient = gradient_from(eval);
      if (optimizer_cfg.sr_enabled) metric = sr_matrix(eval);
      record.acceptance_rate = 1.0;
      record.sigma_x = exact_estimate(observable_full_summation(p, obs_x));
      record.sigma_y = exact_estimate(observable_full_summation(p, obs_y));
      record.sigma_z = exact_estimate(observable_full_summation(p, obs_z));
    } else {
      SamplerConfig iteration_cfg = sampler_cfg;
      iteration_cfg.seed = derive_seed(sampler_cfg.seed, static_cast<std::uint64_t>(iteration));
      const JointBatch batch = run_chain_joint(p, iteration_cfg);
      const BatchEvaluation eval = evaluate_joint_batch(p, model, batch);

      std::vector<double> cost_stream(batch.samples.size());
      for (std::size_t i = 0; i < batch.samples.size(); ++i) {
        cost_stream[i] = std::norm(eval.local_costs[static_cast<Eigen::Index>(i)]);
      }
      record.cost = estimate_stream(std::span<const double>(cost_stream));
      gradient = gradient_from(eval);
      if (optimizer_cfg.sr_enabled) metric = sr_matrix(eval);
      record.acceptance_rate = batch.stats.acceptance_rate();

      const DiagonalBatch diag = run_chain_diagonal(p, iteration_cfg);
      record.sigma_x = observable_estimate(p, obs_x, diag);
      record.sigma_y = observable_estimate(p, obs_y, diag);
      record.sigma_z = observable_estimate(p, obs_z, diag);
    }

    const double cost_value = record.cost.real_mean();
    if (!std::isfinite(cost_value) || !gradient.allFinite()) {
      throw std::runtime_error("run_optimization: NaN in cost or gradient at iteration " +
                               std::to_string(iteration));
    }
    if (initial_cost < 0.0) initial_cost = cost_value;
    if (cost_value > 100.0 * initial_cost && initial_cost > 0.0) {
      throw std::runtime_error("run_optimization: diverged at iteration " +
                               std::to_string(iteration) + " (cost " +
                               std::to_string(cost_value) + " vs initial " +
                               std::to_string(initial_cost) + ")");
    }

    const Eigen::VectorXd delta =
        compute_update(gradient, optimizer_cfg.sr_enabled ? &metric : nullptr, optimizer_cfg);
    const double eta =
        optimizer_cfg.schedule == LearningSchedule::exponential_decay
            ? optimizer_cfg.learning_rate * std::pow(optimizer_cfg.decay_rate,
                                                     static_cast<double>(step))
            : optimizer_cfg.learning_rate;
    v -= eta * delta;
    run.final_parameters =
        parameters_from_vector(v, p.n_sites, p.n_hidden, p.n_ancilla);

    record.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    if (logger) logger(record, run.final_parameters);
    run.trajectory.records.push_back(std::move(record));
  }
  return run;
}

}  // namespace lvmc
