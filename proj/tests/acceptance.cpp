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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <Eigen/Dense>
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "lvmc/estimators.hpp"
#include "lvmc/exact.hpp"
#include "lvmc/optimizer.hpp"

using namespace lvmc;

namespace {

int g_failures = 0;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int criterion, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

// --------------------------------------------------------------------------
// 1. Purification equivalence: exp(log_rho) vs the brute-force ancilla trace,
//    200 random parameter sets, N <= 3, relative error <= 1e-12, under 10 s.
void criterion_1() {
  Timer timer;
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int nh = 1 + static_cast<int>(rng() % 3);
    const int na = 1 + static_cast<int>(rng() % 3);
    const NdmParameters p =
        NdmParameters::random(n, static_cast<double>(nh) / n, static_cast<double>(na) / n,
                              0.5, rng());
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t r = 0; r < dim; ++r) {
      for (std::uint64_t c = 0; c < dim; ++c) {
        const DoubledConfiguration d(index_to_config(r, n), index_to_config(c, n));
        const Complex closed = std::exp(log_rho(p, d));
        const Complex brute = rho_by_ancilla_trace(p, d);
        worst = std::max(worst, std::abs(closed - brute) / std::abs(brute));
      }
    }
  }
  const double elapsed = timer.seconds();
  report(1, "purification equivalence", worst <= 1e-12 && elapsed < 10.0,
         fmt("max rel err %.2e, %.1f s", worst, elapsed));
}

// --------------------------------------------------------------------------
// 2. Physicality: Hermitian, eigenvalues >= -1e-12 * max, 100 random draws.
void criterion_2() {
  std::mt19937_64 rng(2027);
  double worst_ratio = 0.0;
  double worst_hermiticity = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const NdmParameters p =
        NdmParameters::random(n, 1.0 + rng() % 2, 1.0 + rng() % 2, 0.6, rng());
    const DenseDensityMatrix rho = ansatz_to_dense(p);
    worst_hermiticity = std::max(
        worst_hermiticity, (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix);
    worst_ratio =
        std::min(worst_ratio, es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff());
  }
  report(2, "physicality of the assembled density matrix",
         worst_ratio >= -1e-12 && worst_hermiticity <= 1e-12,
         fmt("min eig ratio %.2e, hermiticity defect %.2e", worst_ratio, worst_hermiticity));
}

// --------------------------------------------------------------------------
// 3. Gradient correctness at N = 2: analytic log-derivatives and the exact
//    summation cost gradient vs central differences (step 1e-5), relative
//    error <= 1e-6 on every parameter class.
void criterion_3() {
  const auto model = TransverseIsingModel::periodic_ring(2, 2.0, 0.7);
  const NdmParameters p = NdmParameters::random(2, 1.0, 1.0, 0.3, 424242);
  const Eigen::VectorXd v = to_parameter_vector(p);
  const ParameterLayout layout = ParameterLayout::of(p);
  const double h = 1e-5;

  const auto rebuild = [&](const Eigen::VectorXd& vec) {
    return parameters_from_vector(vec, 2, p.n_hidden, p.n_ancilla);
  };

  double worst = 0.0;
  // Log-derivatives, every component (covers every parameter class).
  std::mt19937_64 rng(5);
  for (std::uint64_t i = 0; i < 16; ++i) {
    const DoubledConfiguration d = index_to_doubled(i, 2);
    const Eigen::VectorXcd analytic = log_derivatives(p, d);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      Eigen::VectorXd vp = v, vm = v;
      vp[k] += h;
      vm[k] -= h;
      const Complex fd = (log_rho(rebuild(vp), d) - log_rho(rebuild(vm), d)) / (2.0 * h);
      worst = std::max(worst, std::abs(analytic[k] - fd) /
                                  std::max({std::abs(analytic[k]), std::abs(fd), 1e-4}));
    }
  }

  // Exact-summation cost gradient.
  const Eigen::VectorXd gradient = gradient_full_summation(p, model);
  double worst_cost = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    Eigen::VectorXd vp = v, vm = v;
    vp[k] += h;
    vm[k] -= h;
    const double fd = (cost_full_summation(rebuild(vp), model) -
                       cost_full_summation(rebuild(vm), model)) /
                      (2.0 * h);
    worst_cost = std::max(worst_cost, std::abs(gradient[k] - fd) /
                                          std::max({std::abs(gradient[k]), std::abs(fd), 1e-4}));
  }
  (void)layout;
  report(3, "gradients match finite differences", worst <= 1e-6 && worst_cost <= 1e-6,
         fmt("log-deriv rel err %.2e, cost-grad rel err %.2e", worst, worst_cost));
}

// --------------------------------------------------------------------------
// 4. Cost-function oracle equivalence: exact summation vs dense
//    ||L rho||_F^2 / ||rho||_F^2, 50 random sets, rel err <= 1e-10.
void criterion_4() {
  std::mt19937_64 rng(2029);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto model = TransverseIsingModel::periodic_ring(
        n, 2.0, 0.25 + 0.25 * static_cast<double>(rng() % 8));
    const NdmParameters p = NdmParameters::random(n, 1.0, 1.0, 0.4, rng());
    const double estimator_route = cost_full_summation(p, model);

    const Eigen::MatrixXcd liouv = build_dense_liouvillian(model).matrix;
    const Eigen::MatrixXcd rho = ansatz_to_dense(p).matrix;
    const Eigen::MatrixXcd row_major = rho.transpose();
    const Eigen::Map<const Eigen::VectorXcd> vec(row_major.data(), row_major.size());
    const double dense_route = (liouv * vec).squaredNorm() / vec.squaredNorm();

    worst = std::max(worst, std::abs(estimator_route - dense_route) / dense_route);
  }
  report(4, "cost equals the dense 2-norm ratio", worst <= 1e-10,
         fmt("max rel err %.2e", worst));
}

// --------------------------------------------------------------------------
// 5. Zero-variance property at the tabulated steady state, N <= 3.
void criterion_5() {
  double worst_cloc = 0.0;
  double worst_var = 0.0;
  for (const auto& [n, g] : std::vector<std::pair<int, double>>{{1, 0.0}, {2, 1.0}, {3, 0.5},
                                                                {3, 2.0}}) {
    const auto model = TransverseIsingModel::periodic_ring(n, 2.0, g);
    const DenseDensityMatrix rho = steady_state(build_dense_liouvillian(model));
    const Eigen::MatrixXcd matrix = rho.matrix;
    const LogRhoFn table = [&matrix](const DoubledConfiguration& d) {
      return std::log(matrix(static_cast<Eigen::Index>(config_to_index(d.row)),
                             static_cast<Eigen::Index>(config_to_index(d.col))));
    };
    const double floor = 1e-12 * matrix.cwiseAbs().maxCoeff();
    std::vector<double> cost_stream;
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t r = 0; r < dim; ++r) {
      for (std::uint64_t c = 0; c < dim; ++c) {
        if (std::abs(matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) <
            floor) {
          continue;  // structural zero of the steady state
        }
        const DoubledConfiguration d(index_to_config(r, n), index_to_config(c, n));
        const Complex cloc = local_cost_general(table, model, d);
        worst_cloc = std::max(worst_cloc, std::abs(cloc));
        cost_stream.push_back(std::norm(cloc));
      }
    }
    const EstimateWithError est = estimate_stream(std::span<const double>(cost_stream));
    worst_var = std::max(worst_var, est.variance);
  }
  report(5, "zero-variance property at the steady state",
         worst_cloc <= 1e-12 && worst_var <= 1e-24,
         fmt("max |Cloc| %.2e, max sample variance %.2e", worst_cloc, worst_var));
}

// --------------------------------------------------------------------------
// 6. Sampler fidelity at N = 2: total-variation distance <= 0.02 at 1e5
//    samples, joint chain vs |rho|^2/Z and diagonal chain vs rho(s,s)/Tr rho.
void criterion_6() {
  const NdmParameters p = NdmParameters::random(2, 1.0, 1.0, 0.4, 20260809);

  SamplerConfig cfg;
  cfg.n_chains = 2;
  cfg.n_samples_per_chain = 50000;
  cfg.burn_in_sweeps = 500;
  cfg.max_flips_per_move = 2;
  cfg.seed = 99;

  std::vector<double> joint_target(16, 0.0);
  double joint_norm = 0.0;
  for (std::uint64_t i = 0; i < 16; ++i) {
    joint_target[i] = std::exp(2.0 * log_rho(p, index_to_doubled(i, 2)).real());
    joint_norm += joint_target[i];
  }
  for (auto& t : joint_target) t /= joint_norm;
  const JointBatch joint = run_chain_joint(p, cfg);
  std::vector<double> joint_hist(16, 0.0);
  for (const auto& s : joint.samples) {
    joint_hist[doubled_to_index(s.config)] += 1.0 / static_cast<double>(joint.samples.size());
  }
  double tv_joint = 0.0;
  for (int i = 0; i < 16; ++i) tv_joint += std::abs(joint_hist[i] - joint_target[i]);
  tv_joint *= 0.5;

  std::vector<double> diag_target(4, 0.0);
  double diag_norm = 0.0;
  for (std::uint64_t i = 0; i < 4; ++i) {
    const SpinConfiguration c = index_to_config(i, 2);
    diag_target[i] = std::exp(log_rho(p, {c, c}).real());
    diag_norm += diag_target[i];
  }
  for (auto& t : diag_target) t /= diag_norm;
  const DiagonalBatch diag = run_chain_diagonal(p, cfg);
  std::vector<double> diag_hist(4, 0.0);
  for (const auto& s : diag.samples) {
    diag_hist[config_to_index(s.config)] += 1.0 / static_cast<double>(diag.samples.size());
  }
  double tv_diag = 0.0;
  for (int i = 0; i < 4; ++i) tv_diag += std::abs(diag_hist[i] - diag_target[i]);
  tv_diag *= 0.5;

  report(6, "sampler total-variation fidelity", tv_joint <= 0.02 && tv_diag <= 0.02,
         fmt("TV joint %.4f, TV diagonal %.4f at 1e5 samples", tv_joint, tv_diag));
}

// --------------------------------------------------------------------------
// 7 & 10. End-to-end exact-summation benchmark at N = 4, V = 2,
//    alpha = beta = 1, g in {0.5, 3.0}: observables within 0.02 of the
//    oracle, single-site fidelity >= 0.995, cost drop >= 2 decades,
//    wall time <= 10 min.
void criteria_7_and_10() {
  Timer timer;
  bool pass_obs = true, pass_fid = true, pass_drop = true;
  std::string detail;

  for (const double g : {0.5, 3.0}) {
    const auto model = TransverseIsingModel::periodic_ring(4, 2.0, g);
    const NdmParameters initial = NdmParameters::random(4, 1.0, 1.0, 0.01, 3);
    OptimizerConfig opt;
    opt.n_iterations = 2000;
    opt.learning_rate = 0.01;
    opt.sr_enabled = true;
    opt.sr_diag_shift = 0.01;
    const OptimizationRun run = run_optimization(model, initial, SamplerConfig{}, opt,
                                                 EstimationMode::full_summation);

    const DenseDensityMatrix exact_rho = steady_state(build_dense_liouvillian(model));
    const DenseDensityMatrix ansatz_rho = ansatz_to_dense(run.final_parameters);

    double max_diff = 0.0;
    for (const auto& op : {average_sigma_x(4), average_sigma_y(4), average_sigma_z(4)}) {
      const double reference = expectation(exact_rho, op);
      const double value = observable_full_summation(run.final_parameters, op);
      max_diff = std::max(max_diff, std::abs(value - reference));
    }
    pass_obs = pass_obs && max_diff <= 0.02;

    double min_fidelity = 1.0;
    for (int site = 0; site < 4; ++site) {
      const int keep[] = {site};
      min_fidelity = std::min(
          min_fidelity,
          fidelity(partial_trace(ansatz_rho, keep), partial_trace(exact_rho, keep)));
    }
    pass_fid = pass_fid && min_fidelity >= 0.995;

    const double first_cost = run.trajectory.records.front().cost.real_mean();
    const double last_cost = run.trajectory.records.back().cost.real_mean();
    pass_drop = pass_drop && first_cost / std::max(last_cost, 1e-300) >= 100.0;

    detail += fmt("g=%.1f: max|dObs| %.4f, min fid %.5f, cost %.2e -> %.2e; ", g, max_diff,
                  min_fidelity, first_cost, last_cost);
  }
  const double elapsed = timer.seconds();
  const bool in_time = elapsed <= 600.0;
  report(7, "end-to-end exact-summation benchmark", pass_obs && pass_fid && in_time,
         detail + fmt("%.0f s", elapsed));
  report(10, "cost decreases by two decades", pass_drop, detail);
}

// --------------------------------------------------------------------------
// 8. Sampled-mode benchmark: N = 4, g = 0.5, 3000 retained samples per
//    iteration, <= 1000 iterations, final |d<sz>| <= 0.05.
void criterion_8() {
  Timer timer;
  const auto model = TransverseIsingModel::periodic_ring(4, 2.0, 0.5);
  const NdmParameters initial = NdmParameters::random(4, 1.0, 1.0, 0.01, 8);

  SamplerConfig sampler;
  sampler.n_chains = 4;
  sampler.n_samples_per_chain = 750;  // 3000 retained samples per iteration
  sampler.burn_in_sweeps = 75;
  sampler.max_flips_per_move = 2;
  sampler.seed = 88;

  OptimizerConfig opt;
  opt.n_iterations = 1000;
  opt.learning_rate = 0.01;
  opt.sr_enabled = true;
  opt.sr_diag_shift = 0.01;

  const OptimizationRun run =
      run_optimization(model, initial, sampler, opt, EstimationMode::sampled);

  SamplerConfig final_cfg = sampler;
  final_cfg.n_samples_per_chain = 10000;
  final_cfg.burn_in_sweeps = 1000;
  final_cfg.seed = derive_seed(sampler.seed, 1000, 0x66696e);
  const DiagonalBatch batch = run_chain_diagonal(run.final_parameters, final_cfg);
  const EstimateWithError sz =
      observable_estimate(run.final_parameters, average_sigma_z(4), batch);

  const DenseDensityMatrix exact_rho = steady_state(build_dense_liouvillian(model));
  const double reference = expectation(exact_rho, average_sigma_z(4));
  const double diff = std::abs(sz.mean.real() - reference);
  report(8, "sampled-mode benchmark", diff <= 0.05,
         fmt("<sz> %.4f +- %.4f vs oracle %.4f, |diff| %.4f, %.0f s", sz.mean.real(),
             sz.error_of_mean, reference, diff, timer.seconds()));
}

// --------------------------------------------------------------------------
// 9. Hard-regime trend at N = 4, g = 1.2: median over 5 seeds of the sigma-x
//    relative error does not get worse when beta goes from 1 to 2.
void criterion_9() {
  Timer timer;
  const auto model = TransverseIsingModel::periodic_ring(4, 2.0, 1.2);
  const double reference =
      expectation(steady_state(build_dense_liouvillian(model)), average_sigma_x(4));

  const auto median_rel_error = [&](double beta) {
    std::vector<double> errors;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const NdmParameters initial = NdmParameters::random(4, 1.0, beta, 0.01, seed);
      OptimizerConfig opt;
      opt.n_iterations = 2000;
      opt.learning_rate = 0.01;
      opt.sr_enabled = true;
      opt.sr_diag_shift = 0.01;
      const OptimizationRun run = run_optimization(model, initial, SamplerConfig{}, opt,
                                                   EstimationMode::full_summation);
      const double value = observable_full_summation(run.final_parameters, average_sigma_x(4));
      errors.push_back(std::abs(value - reference) / std::abs(reference));
    }
    std::sort(errors.begin(), errors.end());
    return errors[2];
  };

  const double median_beta1 = median_rel_error(1.0);
  const double median_beta2 = median_rel_error(2.0);
  report(9, "larger ancilla layer improves the hard regime", median_beta2 <= median_beta1,
         fmt("median eps_rel[sx]: beta=1 %.5f, beta=2 %.5f, %.0f s", median_beta1,
             median_beta2, timer.seconds()));
}

}  // namespace

int main() {
  std::printf("lvmc acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criteria_7_and_10();
  criterion_8();
  criterion_9();
  std::printf("%d criterion failure(s)\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
