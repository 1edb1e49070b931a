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

#ifndef LVMC_ANSATZ_HPP
#define LVMC_ANSATZ_HPP

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "lvmc/spin.hpp"

namespace lvmc {

/// Which of the two real networks a parameter group belongs to.
enum class Network { amplitude = 0, phase = 1 };

/// All real weights of the purified density-matrix ansatz.
///
/// The state is a pure wavefunction on system (x) ancilla space,
///
///   psi(sigma, a) = sqrt(P_A(sigma, a)) * exp(-(i/2) log P_phase(sigma, a)),
///
/// where each P is a restricted Boltzmann machine with the hidden layer summed
/// out analytically. Tracing the ancilla layer gives density-matrix entries in
/// closed form (see log_rho). The phase network's ancilla bias cancels exactly
/// in that trace, so it is not part of the parameter set; docs/ansatz.md
/// records the cancellation.
struct NdmParameters {
  int n_sites = 0;
  int n_hidden = 0;
  int n_ancilla = 0;

  // Indexed by Network. Weight matrices are n_sites x n_hidden / n_sites x n_ancilla.
  std::array<Eigen::VectorXd, 2> visible_bias;
  std::array<Eigen::VectorXd, 2> hidden_bias;
  std::array<Eigen::MatrixXd, 2> weights;
  std::array<Eigen::MatrixXd, 2> ancilla_weights;
  Eigen::VectorXd ancilla_bias;  // amplitude network only

  static NdmParameters zeros(int n_sites, int n_hidden, int n_ancilla);

  /// Draws every parameter i.i.d. from N(0, scale^2); scale = 0 gives the
  /// all-zero (uniform) state. Layer sizes are alpha * n and beta * n, which
  /// must be positive integers.
  static NdmParameters random(int n_sites, double alpha, double beta, double scale,
                              std::uint64_t seed);

  int parameter_count() const;
  void validate() const;

  const Eigen::VectorXd& vb(Network nu) const {
    return visible_bias[static_cast<int>(nu)];
  }
  const Eigen::VectorXd& hb(Network nu) const {
    return hidden_bias[static_cast<int>(nu)];
  }
  const Eigen::MatrixXd& w(Network nu) const { return weights[static_cast<int>(nu)]; }
  const Eigen::MatrixXd& u(Network nu) const {
    return ancilla_weights[static_cast<int>(nu)];
  }
};

/// Offsets of each parameter group inside the flat variational vector.
///
/// Order: visible_bias[A], hidden_bias[A], weights[A] (row-major),
/// ancilla_weights[A] (row-major), then the same four phase-network groups,
/// then ancilla_bias. Total length 2 (N + Nh + N Nh + N Na) + Na.
struct ParameterLayout {
  int n_sites = 0, n_hidden = 0, n_ancilla = 0;

  struct Block {
    int offset = 0;
    int length = 0;
  };

  static ParameterLayout of(const NdmParameters& p) {
    return {p.n_sites, p.n_hidden, p.n_ancilla};
  }

  int network_offset(Network nu) const;
  Block visible_bias(Network nu) const;
  Block hidden_bias(Network nu) const;
  Block weights(Network nu) const;
  Block ancilla_weights(Network nu) const;
  Block ancilla_bias() const;
  int total() const;
};

Eigen::VectorXd to_parameter_vector(const NdmParameters& p);
NdmParameters parameters_from_vector(const Eigen::VectorXd& v, int n_sites, int n_hidden,
                                     int n_ancilla);

/// theta_j = hidden_bias[j] + sum_i sigma_i W[i, j].
double effective_angle(const NdmParameters& p, Network nu, int j,
                       const SpinConfiguration& c);

/// Purified wavefunction at (sigma, a); `ancilla` holds +1/-1 entries of
/// length n_ancilla. Evaluated in log space.
Complex psi(const NdmParameters& p, const SpinConfiguration& c,
            const SpinConfiguration& ancilla);

/// Incrementally maintained evaluation state for one (row, col) configuration:
/// the hidden-layer angles of both networks for both registers, the complex
/// ancilla-trace angles, and the visible-bias dot products. Flipping k spins
/// costs O(k (n_hidden + n_ancilla)); log_value() re-sums the ln-cosh terms.
///
/// The parameters must stay alive and unchanged for the cache lifetime.
class RhoCache {
 public:
  RhoCache(const NdmParameters& p, DoubledConfiguration d);

  const DoubledConfiguration& config() const { return config_; }
  Complex log_value() const;
  void flip_row(std::span<const int> sites);
  void flip_col(std::span<const int> sites);
  Eigen::VectorXcd log_derivatives() const;

 private:
  const NdmParameters* params_;
  DoubledConfiguration config_;
  std::array<Eigen::VectorXd, 2> theta_row_, theta_col_;  // indexed by Network
  Eigen::VectorXcd zeta_;
  std::array<double, 2> vb_row_{}, vb_col_{};
};

/// Closed-form log rho(sigma, sigma~) obtained by summing both the hidden and
/// the ancilla layers analytically:
///
///   Gamma-: -(1/2) b_A.(sigma + sigma~) + (1/2) sum_j [ln 2cosh theta_A(sigma)_j
///           + ln 2cosh theta_A(sigma~)_j]
///   Gamma+: (i/2) { b_ph.(sigma - sigma~) - sum_j [ln 2cosh theta_ph(sigma)_j
///           - ln 2cosh theta_ph(sigma~)_j] }
///   Pi:     sum_k ln 2cosh( ba_k + (1/2)(sigma + sigma~).U_A col_k
///           - (i/2)(sigma - sigma~).U_ph col_k )
///
/// Cross-validated against rho_by_ancilla_trace (see tests).
Complex log_rho(const NdmParameters& p, const DoubledConfiguration& d);

/// log_rho(d_new) - log_rho(d_old) via incremental angle updates.
Complex log_rho_diff(const NdmParameters& p, const DoubledConfiguration& d_old,
                     const DoubledConfiguration& d_new);

/// d log rho / d v for every real parameter, in ParameterLayout order.
Eigen::VectorXcd log_derivatives(const NdmParameters& p, const DoubledConfiguration& d);

/// Brute-force purification trace sum_a psi(sigma, a) conj(psi(sigma~, a)).
/// Reference implementation; requires n_ancilla <= 16.
Complex rho_by_ancilla_trace(const NdmParameters& p, const DoubledConfiguration& d);

/// Plain-text checkpoint with a (n_sites, n_hidden, n_ancilla) header and one
/// value per line in ParameterLayout order; round-trips doubles exactly.
void save_parameters(const NdmParameters& p, const std::filesystem::path& path);
NdmParameters load_parameters(const std::filesystem::path& path);

}  // namespace lvmc

#endif  // LVMC_ANSATZ_HPP
