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

#ifndef LVMC_ESTIMATORS_HPP
#define LVMC_ESTIMATORS_HPP

#include <Eigen/Core>
#include <functional>
#include <span>

#include "lvmc/ansatz.hpp"
#include "lvmc/model.hpp"
#include "lvmc/observables.hpp"
#include "lvmc/sampler.hpp"

namespace lvmc {

/// Monte Carlo estimate with an autocorrelation-aware error bar.
struct EstimateWithError {
  Complex mean{0.0, 0.0};
  double variance = 0.0;
  long n_samples = 0;
  double error_of_mean = 0.0;

  double real_mean() const { return mean.real(); }
};

/// Standard error of the mean by logarithmic binning: adjacent samples are
/// pairwise-averaged level by level and the plateau (maximum over levels) of
/// the naive standard errors is returned. Levels with fewer than 64 bins are
/// skipped (level 0 always counts). Requires at least 16 samples.
double binning_error(std::span<const double> stream);

EstimateWithError estimate_stream(std::span<const double> stream);
EstimateWithError estimate_stream(std::span<const Complex> stream);

using LogRhoFn = std::function<Complex(const DoubledConfiguration&)>;

/// Local cost C^Loc(d) = sum over connected elements of
/// amplitude * rho(target) / rho(d), with the ratio evaluated in log space.
/// Throws if rho(d) vanishes.
Complex local_cost(const NdmParameters& p, const TransverseIsingModel& m,
                   const DoubledConfiguration& d);

/// Same contraction for an arbitrary log-density evaluator (used to check the
/// zero-variance property on a tabulated exact steady state).
Complex local_cost_general(const LogRhoFn& log_rho_of, const TransverseIsingModel& m,
                           const DoubledConfiguration& d);

/// One pass over a batch of (row, col) configurations: weights, local costs,
/// log-derivatives and the gradient cross terms
/// G(d) = sum_conn amplitude * (rho(target)/rho(d)) * O(target).
struct BatchEvaluation {
  Eigen::VectorXd weights;       // normalized to sum 1
  Eigen::VectorXcd local_costs;  // C^Loc per entry
  Eigen::MatrixXcd log_derivs;   // n x P, row i = O(d_i)
  Eigen::MatrixXcd grad_terms;   // n x P, row i = G(d_i); empty if not requested
};

BatchEvaluation evaluate_joint_batch(const NdmParameters& p, const TransverseIsingModel& m,
                                     const JointBatch& batch, bool with_derivatives = true);

/// Exact enumeration of all 4^N configurations with weights |rho|^2 / Z.
/// Requires n_sites <= 6.
BatchEvaluation evaluate_full_space(const NdmParameters& p, const TransverseIsingModel& m,
                                    bool with_derivatives = true);

double cost_from(const BatchEvaluation& eval);
Eigen::VectorXd gradient_from(const BatchEvaluation& eval);

/// Exact cost sum_{d} p(d) |C^Loc(d)|^2 over the full doubled space (N <= 6).
double cost_full_summation(const NdmParameters& p, const TransverseIsingModel& m);

/// Sample mean of |C^Loc|^2 over a joint-chain batch, with binning error.
EstimateWithError cost_mc(const NdmParameters& p, const TransverseIsingModel& m,
                          const JointBatch& batch);

struct GradientEstimate {
  Eigen::VectorXd gradient;       // 2 Re of the complex estimator
  Eigen::VectorXd error_of_mean;  // per component
  long n_samples = 0;
};

GradientEstimate gradient_estimate(const NdmParameters& p, const TransverseIsingModel& m,
                                   const JointBatch& batch);

Eigen::VectorXd gradient_full_summation(const NdmParameters& p,
                                        const TransverseIsingModel& m);

/// Local observable estimator at a diagonal sample sigma:
/// sum_target rho(sigma, target)/rho(sigma, sigma) * Theta(target, sigma).
Complex observable_local(const NdmParameters& p, const ObservableOperator& op,
                         const SpinConfiguration& c);

/// Mean of the local observable over diagonal-chain samples. The imaginary
/// part is retained in `mean` and must be statistically compatible with zero
/// for Hermitian operators (checked; throws far outside the error bar).
EstimateWithError observable_estimate(const NdmParameters& p, const ObservableOperator& op,
                                      const DiagonalBatch& batch);

/// Exact diagonal-weighted sum of the local observable (N <= 6).
double observable_full_summation(const NdmParameters& p, const ObservableOperator& op);

}  // namespace lvmc

#endif  // LVMC_ESTIMATORS_HPP
