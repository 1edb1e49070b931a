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

#include "lvmc/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lvmc {

namespace {

constexpr int kMaxFullSummationSites = 6;
constexpr int kMinBinsPerLevel = 64;

double naive_error(std::span<const double> stream) {
  const auto n = static_cast<double>(stream.size());
  double mean = 0.0;
  for (const double x : stream) mean += x;
  mean /= n;
  double var = 0.0;
  for (const double x : stream) var += (x - mean) * (x - mean);
  var = stream.size() > 1 ? var / (n - 1.0) : 0.0;
  return std::sqrt(var / n);
}

std::vector<int> differing_sites(const SpinConfiguration& a, const SpinConfiguration& b) {
  std::vector<int> sites;
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) sites.push_back(i);
  }
  return sites;
}

}  // namespace

double binning_error(std::span<const double> stream) {
  if (stream.size() < 16) {
    throw std::invalid_argument("binning_error: need at least 16 samples");
  }
  std::vector<double> bins(stream.begin(), stream.end());
  double plateau = naive_error(bins);
  while (bins.size() / 2 >= kMinBinsPerLevel) {
    const std::size_t half = bins.size() / 2;
    for (std::size_t i = 0; i < half; ++i) bins[i] = 0.5 * (bins[2 * i] + bins[2 * i + 1]);
    bins.resize(half);
    plateau = std::max(plateau, naive_error(bins));
  }
  return plateau;
}

EstimateWithError estimate_stream(std::span<const double> stream) {
  if (stream.empty()) throw std::invalid_argument("estimate_stream: empty sample set");
  const auto n = static_cast<double>(stream.size());
  double mean = 0.0;
  for (const double x : stream) mean += x;
  mean /= n;
  double var = 0.0;
  for (const double x : stream) var += (x - mean) * (x - mean);
  var = stream.size() > 1 ? var / (n - 1.0) : 0.0;
  const double error =
      stream.size() >= 16 ? binning_error(stream) : std::sqrt(var / n);
  return {Complex{mean, 0.0}, var, static_cast<long>(stream.size()), error};
}

EstimateWithError estimate_stream(std::span<const Complex> stream) {
  if (stream.empty()) throw std::invalid_argument("estimate_stream: empty sample set");
  const auto n = stream.size();
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = stream[i].real();
    im[i] = stream[i].imag();
  }
  const EstimateWithError er = estimate_stream(std::span<const double>(re));
  const EstimateWithError ei = estimate_stream(std::span<const double>(im));
  const Complex mean{er.mean.real(), ei.mean.real()};
  double var = 0.0;
  for (const Complex& x : stream) var += std::norm(x - mean);
  var = n > 1 ? var / (static_cast<double>(n) - 1.0) : 0.0;
  return {mean, var, static_cast<long>(n),
          std::hypot(er.error_of_mean, ei.error_of_mean)};
}

Complex local_cost_general(const LogRhoFn& log_rho_of, const TransverseIsingModel& m,
                           const DoubledConfiguration& d) {
  const Complex log_base = log_rho_of(d);
  if (!std::isfinite(log_base.real())) {
    throw std::runtime_error("local_cost: vanishing density-matrix entry at chain state");
  }
  Complex cost{0.0, 0.0};
  for (const auto& [target, amplitude] : liouvillian_connections(m, d)) {
    cost += amplitude * std::exp(log_rho_of(target) - log_base);
  }
  return cost;
}

Complex local_cost(const NdmParameters& p, const TransverseIsingModel& m,
                   const DoubledConfiguration& d) {
  return local_cost_general(
      [&p](const DoubledConfiguration& x) { return log_rho(p, x); }, m, d);
}

namespace {

// Shared per-configuration work: local cost plus (optionally) O(d) and the
// gradient cross term G(d). The cache-and-flip pattern keeps every rho ratio
// in log space.
void evaluate_configuration(const NdmParameters& p, const TransverseIsingModel& m,
                            const DoubledConfiguration& d, bool with_derivatives,
                            Complex& cost_out, Eigen::MatrixXcd* log_derivs,
                            Eigen::MatrixXcd* grad_terms, Eigen::Index row) {
  const RhoCache base(p, d);
  const Complex log_base = base.log_value();
  if (!std::isfinite(log_base.real())) {
    throw std::runtime_error("evaluate: vanishing density-matrix entry in batch");
  }
  Complex cost{0.0, 0.0};
  if (with_derivatives) {
    log_derivs->row(row) = base.log_derivatives();
    grad_terms->row(row).setZero();
  }
  for (const auto& [target, amplitude] : liouvillian_connections(m, d)) {
    RhoCache shifted = base;
    shifted.flip_row(differing_sites(d.row, target.row));
    shifted.flip_col(differing_sites(d.col, target.col));
    const Complex ratio = std::exp(shifted.log_value() - log_base);
    cost += amplitude * ratio;
    if (with_derivatives) {
      grad_terms->row(row) += amplitude * ratio * shifted.log_derivatives().transpose();
    }
  }
  cost_out = cost;
}

}  // namespace

BatchEvaluation evaluate_joint_batch(const NdmParameters& p, const TransverseIsingModel& m,
                                     const JointBatch& batch, bool with_derivatives) {
  if (batch.samples.empty()) {
    throw std::invalid_argument("evaluate_joint_batch: empty sample set");
  }
  const auto n = static_cast<Eigen::Index>(batch.samples.size());
  const Eigen::Index n_params = ParameterLayout::of(p).total();

  BatchEvaluation eval;
  eval.weights = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  eval.local_costs.resize(n);
  if (with_derivatives) {
    eval.log_derivs.resize(n, n_params);
    eval.grad_terms.resize(n, n_params);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    evaluate_configuration(p, m, batch.samples[static_cast<std::size_t>(i)].config,
                           with_derivatives, eval.local_costs[i], &eval.log_derivs,
                           &eval.grad_terms, i);
  }
  return eval;
}

BatchEvaluation evaluate_full_space(const NdmParameters& p, const TransverseIsingModel& m,
                                    bool with_derivatives) {
  if (p.n_sites != m.n_sites) {
    throw std::invalid_argument("evaluate_full_space: model/ansatz size mismatch");
  }
  if (p.n_sites > kMaxFullSummationSites) {
    throw std::invalid_argument("evaluate_full_space: system too large (max 6 sites)");
  }
  const std::uint64_t dim = std::uint64_t{1} << p.n_sites;
  const auto n = static_cast<Eigen::Index>(dim * dim);
  const Eigen::Index n_params = ParameterLayout::of(p).total();

  BatchEvaluation eval;
  eval.weights.resize(n);
  eval.local_costs.resize(n);
  if (with_derivatives) {
    eval.log_derivs.resize(n, n_params);
    eval.grad_terms.resize(n, n_params);
  }

  Eigen::VectorXd log_weights(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const DoubledConfiguration d = index_to_doubled(static_cast<std::uint64_t>(i), p.n_sites);
    log_weights[i] = 2.0 * log_rho(p, d).real();
    evaluate_configuration(p, m, d, with_derivatives, eval.local_costs[i],
                           &eval.log_derivs, &eval.grad_terms, i);
  }
  const double shift = log_weights.maxCoeff();
  eval.weights = (log_weights.array() - shift).exp();
  eval.weights /= eval.weights.sum();
  return eval;
}

double cost_from(const BatchEvaluation& eval) {
  return (eval.weights.array() * eval.local_costs.array().abs2()).sum();
}

Eigen::VectorXd gradient_from(const BatchEvaluation& eval) {
  if (eval.grad_terms.size() == 0) {
    throw std::invalid_argument("gradient_from: evaluation lacks derivative terms");
  }
  const double cost = cost_from(eval);
  const Eigen::VectorXcd weighted_cross =
      eval.grad_terms.transpose() *
      (eval.weights.array() * eval.local_costs.conjugate().array()).matrix();
  const Eigen::VectorXcd mean_deriv =
      eval.log_derivs.transpose() * eval.weights.cast<Complex>();
  return 2.0 * (weighted_cross - cost * mean_deriv).real();
}

double cost_full_summation(const NdmParameters& p, const TransverseIsingModel& m) {
  return cost_from(evaluate_full_space(p, m, /*with_derivatives=*/false));
}

EstimateWithError cost_mc(const NdmParameters& p, const TransverseIsingModel& m,
                          const JointBatch& batch) {
  if (batch.samples.empty()) throw std::invalid_argument("cost_mc: empty sample set");
  std::vector<double> stream;
  stream.reserve(batch.samples.size());
  for (const auto& sample : batch.samples) {
    stream.push_back(std::norm(local_cost(p, m, sample.config)));
  }
  return estimate_stream(std::span<const double>(stream));
}

GradientEstimate gradient_estimate(const NdmParameters& p, const TransverseIsingModel& m,
                                   const JointBatch& batch) {
  const BatchEvaluation eval = evaluate_joint_batch(p, m, batch);
  GradientEstimate out;
  out.gradient = gradient_from(eval);
  out.n_samples = static_cast<long>(batch.samples.size());

  // Per-component error from the linearized per-sample stream
  // z_i = 2 Re[conj(C_i) G_i - <|C|^2> O_i]; the fluctuation of <|C|^2>
  // itself enters at second order and is neglected.
  const double cost = cost_from(eval);
  const Eigen::Index n = eval.local_costs.size();
  const Eigen::Index n_params = eval.log_derivs.cols();
  out.error_of_mean.resize(n_params);
  std::vector<double> stream(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n_params; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      stream[static_cast<std::size_t>(i)] =
          2.0 * (std::conj(eval.local_costs[i]) * eval.grad_terms(i, k) -
                 cost * eval.log_derivs(i, k))
                    .real();
    }
    out.error_of_mean[k] = estimate_stream(std::span<const double>(stream)).error_of_mean;
  }
  return out;
}

Eigen::VectorXd gradient_full_summation(const NdmParameters& p,
                                        const TransverseIsingModel& m) {
  return gradient_from(evaluate_full_space(p, m));
}

Complex observable_local(const NdmParameters& p, const ObservableOperator& op,
                         const SpinConfiguration& c) {
  const RhoCache base(p, DoubledConfiguration(c, c));
  const Complex log_base = base.log_value();
  Complex value{0.0, 0.0};
  for (const auto& [target, element] : op.connections(c)) {
    RhoCache shifted = base;
    shifted.flip_col(differing_sites(c, target));
    value += element * std::exp(shifted.log_value() - log_base);
  }
  return value;
}

EstimateWithError observable_estimate(const NdmParameters& p, const ObservableOperator& op,
                                      const DiagonalBatch& batch) {
  if (batch.samples.empty()) {
    throw std::invalid_argument("observable_estimate: empty sample set");
  }
  std::vector<Complex> stream;
  stream.reserve(batch.samples.size());
  for (const auto& sample : batch.samples) {
    stream.push_back(observable_local(p, op, sample.config));
  }
  const EstimateWithError est = estimate_stream(std::span<const Complex>(stream));
  const double tolerance = 20.0 * est.error_of_mean + 1e-9 * (1.0 + std::abs(est.mean));
  if (std::abs(est.mean.imag()) > tolerance) {
    throw std::runtime_error("observable_estimate: imaginary part " +
                             std::to_string(est.mean.imag()) +
                             " incompatible with Hermitian " + op.name);
  }
  return est;
}

double observable_full_summation(const NdmParameters& p, const ObservableOperator& op) {
  if (p.n_sites > kMaxFullSummationSites) {
    throw std::invalid_argument("observable_full_summation: system too large (max 6 sites)");
  }
  const std::uint64_t dim = std::uint64_t{1} << p.n_sites;
  Eigen::VectorXd log_diag(static_cast<Eigen::Index>(dim));
  std::vector<Complex> locals(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    const SpinConfiguration c = index_to_config(i, p.n_sites);
    log_diag[static_cast<Eigen::Index>(i)] =
        log_rho(p, DoubledConfiguration(c, c)).real();
    locals[i] = observable_local(p, op, c);
  }
  const double shift = log_diag.maxCoeff();
  Complex total{0.0, 0.0};
  double norm = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const double w = std::exp(log_diag[static_cast<Eigen::Index>(i)] - shift);
    total += w * locals[i];
    norm += w;
  }
  total /= norm;
  if (std::abs(total.imag()) > 1e-9 * (1.0 + std::abs(total))) {
    throw std::runtime_error("observable_full_summation: imaginary residual for " + op.name);
  }
  return total.real();
}

}  // namespace lvmc
