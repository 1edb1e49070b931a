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

#ifndef LVMC_EXACT_HPP
#define LVMC_EXACT_HPP

#include <Eigen/Core>

#include "lvmc/ansatz.hpp"
#include "lvmc/model.hpp"
#include "lvmc/observables.hpp"
#include "lvmc/spin.hpp"

namespace lvmc {

/// Dense 2^N x 2^N density matrix in the little-endian sigma-z basis.
struct DenseDensityMatrix {
  Eigen::MatrixXcd matrix;
  int n_sites = 0;
  bool normalized = false;
};

/// Dense 4^N x 4^N superoperator acting on row-major vectorized matrices:
/// vec index = idx(row) * 2^N + idx(col).
struct DenseSuperoperator {
  Eigen::MatrixXcd matrix;
  int n_sites = 0;
};

/// Dense operator acting as `local` on `site` and trivially elsewhere.
Eigen::MatrixXcd dense_operator_on_site(int n_sites, int site, const Eigen::Matrix2cd& local);

Eigen::MatrixXcd build_dense_hamiltonian(const TransverseIsingModel& m);

/// Dense matrix form of the master-equation generator, built from Kronecker
/// products of the Hamiltonian and jump operators (independent of the sparse
/// connected-elements enumerator). Requires n_sites <= 6.
DenseSuperoperator build_dense_liouvillian(const TransverseIsingModel& m);

/// Unique steady state from the null space of L (rank-revealing SVD followed
/// by least-squares refinement of the null vector), Hermitized and normalized
/// to unit trace. Throws if the kernel dimension is not 1 or the residual
/// exceeds 1e-10 * ||L||_2.
DenseDensityMatrix steady_state(const DenseSuperoperator& liouvillian);

/// 2-norm of L applied to vec(rho), normalized by ||L||_2; the steady-state
/// quality measure reported in run outputs.
double steady_state_residual(const DenseSuperoperator& liouvillian,
                             const DenseDensityMatrix& rho);

Eigen::MatrixXcd dense_observable(const ObservableOperator& op, int n_sites);

/// Tr[rho Theta] / Tr[rho]; throws if the imaginary residual exceeds 1e-12
/// relative to the trace scale (Hermitian operators only).
double expectation(const DenseDensityMatrix& rho, const ObservableOperator& op);

/// Reduced density matrix on `keep` (ascending site indices); trace preserved.
DenseDensityMatrix partial_trace(const DenseDensityMatrix& rho, std::span<const int> keep);

struct FidelityResult {
  double value = 0.0;  // clipped to [0, 1]
  double raw = 0.0;    // before clipping
};

/// Uhlmann fidelity in the squared convention, F = (Tr sqrt(sqrt(a) b sqrt(a)))^2,
/// so F(rho, rho) = 1 and F reduces to |<psi|phi>|^2 for pure states. Both
/// inputs must be normalized; negative eigenvalues beyond tolerance throw.
FidelityResult fidelity_detail(const DenseDensityMatrix& a, const DenseDensityMatrix& b);
double fidelity(const DenseDensityMatrix& a, const DenseDensityMatrix& b);

/// Evaluates exp(log_rho) over all 4^N entries (shifted in log space) and
/// normalizes to unit trace. Requires n_sites <= 6.
DenseDensityMatrix ansatz_to_dense(const NdmParameters& p);

}  // namespace lvmc

#endif  // LVMC_EXACT_HPP
