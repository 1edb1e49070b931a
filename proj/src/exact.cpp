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

#include "lvmc/exact.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace lvmc {

namespace {

constexpr Complex kImag{0.0, 1.0};
constexpr int kMaxDenseSites = 6;

// Single-site matrices in the little-endian index basis (e_0 = |down>,
// e_1 = |up>), matching the spin encoding bit = (1 + sigma) / 2.
Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << -1, 0, 0, 1;
  return m;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd sigma_minus_matrix() {
  Eigen::Matrix2cd m;
  m << 0, 1, 0, 0;
  return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_density_matrix(const DenseDensityMatrix& rho, const char* where) {
  const Eigen::Index dim = Eigen::Index{1} << rho.n_sites;
  if (rho.matrix.rows() != dim || rho.matrix.cols() != dim) {
    throw std::invalid_argument(std::string(where) + ": matrix dimension inconsistent with n_sites");
  }
}

/// 2-norm estimate via power iteration on M^dag M, deterministic start.
double operator_two_norm(const Eigen::MatrixXcd& m) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(m.cols()).normalized();
  double norm = 0.0;
  for (int it = 0; it < 40; ++it) {
    v = m.adjoint() * (m * v);
    const double next = std::sqrt(v.norm());
    v.normalize();
    if (it > 4 && std::abs(next - norm) < 1e-10 * next) return next;
    norm = next;
  }
  return norm;
}

}  // namespace

Eigen::MatrixXcd dense_operator_on_site(int n_sites, int site, const Eigen::Matrix2cd& local) {
  if (site < 0 || site >= n_sites) {
    throw std::invalid_argument("dense_operator_on_site: site out of range");
  }
  const Eigen::Index low = Eigen::Index{1} << site;
  const Eigen::Index high = Eigen::Index{1} << (n_sites - 1 - site);
  return kron(Eigen::MatrixXcd::Identity(high, high),
              kron(local, Eigen::MatrixXcd::Identity(low, low)));
}

Eigen::MatrixXcd build_dense_hamiltonian(const TransverseIsingModel& m) {
  m.validate();
  const Eigen::Index dim = Eigen::Index{1} << m.n_sites;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [j, l] : m.bonds) {
    h += (m.coupling / 4.0) * (dense_operator_on_site(m.n_sites, j, pauli_z()) *
                               dense_operator_on_site(m.n_sites, l, pauli_z()));
  }
  for (int j = 0; j < m.n_sites; ++j) {
    h += (m.field / 2.0) * dense_operator_on_site(m.n_sites, j, pauli_x());
  }
  return h;
}

DenseSuperoperator build_dense_liouvillian(const TransverseIsingModel& m) {
  if (m.n_sites > kMaxDenseSites) {
    throw std::invalid_argument("build_dense_liouvillian: system too large (max 6 sites)");
  }
  const Eigen::MatrixXcd h = build_dense_hamiltonian(m);
  const Eigen::Index dim = h.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);

  // Row-major vectorization: vec(A rho B) = kron(A, B^T) vec(rho).
  Eigen::MatrixXcd liouv = -kImag * (kron(h, id) - kron(id, h.transpose()));
  for (int j = 0; j < m.n_sites; ++j) {
    const Eigen::MatrixXcd jump = dense_operator_on_site(m.n_sites, j, sigma_minus_matrix());
    const Eigen::MatrixXcd number = jump.adjoint() * jump;
    liouv += m.gamma * kron(jump, jump.conjugate());
    liouv -= 0.5 * m.gamma * (kron(number, id) + kron(id, number.transpose()));
  }
  return {std::move(liouv), m.n_sites};
}

DenseDensityMatrix steady_state(const DenseSuperoperator& liouvillian) {
  const Eigen::MatrixXcd& liouv = liouvillian.matrix;
  const Eigen::Index dim = Eigen::Index{1} << liouvillian.n_sites;
  if (liouv.rows() != dim * dim || liouv.cols() != dim * dim) {
    throw std::invalid_argument("steady_state: superoperator dimension mismatch");
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(liouv, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double norm = sv[0];
  const double tol = static_cast<double>(liouv.rows()) * 1e-14 * norm;
  int kernel_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] <= tol) ++kernel_dim;
  }
  if (kernel_dim != 1) {
    throw std::runtime_error("steady_state: Liouvillian kernel dimension is " +
                             std::to_string(kernel_dim) + ", expected 1");
  }

  Eigen::VectorXcd x = svd.matrixV().col(liouv.cols() - 1);

  // Least-squares refinement of the null vector through the SVD pseudo-inverse
  // (kernel direction excluded); brings the entry-wise residual down to
  // machine-level so that local estimators of the tabulated state vanish.
  Eigen::VectorXd pinv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol) pinv[i] = 1.0 / sv[i];
  }
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXcd residual = liouv * x;
    x -= svd.matrixV() * (pinv.asDiagonal() * (svd.matrixU().adjoint() * residual));
    x.normalize();
  }

  Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(x.data(), dim, dim);
  // Map is column-major; the vectorization is row-major.
  rho.transposeInPlace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const Complex trace = rho.trace();
  if (std::abs(trace) < 1e-12) {
    throw std::runtime_error("steady_state: null vector has vanishing trace");
  }
  rho /= trace;

  DenseDensityMatrix out{std::move(rho), liouvillian.n_sites, true};
  const double residual = steady_state_residual(liouvillian, out);
  if (residual > 1e-10) {
    throw std::runtime_error("steady_state: residual " + std::to_string(residual) +
                             " exceeds 1e-10 * ||L||");
  }
  return out;
}

double steady_state_residual(const DenseSuperoperator& liouvillian,
                             const DenseDensityMatrix& rho) {
  check_density_matrix(rho, "steady_state_residual");
  const Eigen::MatrixXcd row_major = rho.matrix.transpose();
  const Eigen::Map<const Eigen::VectorXcd> vec(row_major.data(), row_major.size());
  return (liouvillian.matrix * vec).norm() /
         (operator_two_norm(liouvillian.matrix) * vec.norm());
}

Eigen::MatrixXcd dense_observable(const ObservableOperator& op, int n_sites) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const SpinConfiguration sigma = index_to_config(static_cast<std::uint64_t>(c), n_sites);
    for (const auto& [target, element] : op.connections(sigma)) {
      theta(static_cast<Eigen::Index>(config_to_index(target)), c) += element;
    }
  }
  return theta;
}

double expectation(const DenseDensityMatrix& rho, const ObservableOperator& op) {
  check_density_matrix(rho, "expectation");
  const Eigen::MatrixXcd theta = dense_observable(op, rho.n_sites);
  const Complex trace = rho.matrix.trace();
  if (std::abs(trace) == 0.0) throw std::invalid_argument("expectation: traceless input");
  const Complex value = (rho.matrix * theta).trace() / trace;
  const double scale = std::max(1.0, std::abs(value));
  if (std::abs(value.imag()) > 1e-12 * scale) {
    throw std::runtime_error("expectation: imaginary residual " +
                             std::to_string(value.imag()) + " for observable " + op.name);
  }
  return value.real();
}

DenseDensityMatrix partial_trace(const DenseDensityMatrix& rho, std::span<const int> keep) {
  check_density_matrix(rho, "partial_trace");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  std::vector<int> kept(keep.begin(), keep.end());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] < 0 || kept[i] >= rho.n_sites) {
      throw std::invalid_argument("partial_trace: site out of range");
    }
    if (i > 0 && kept[i] <= kept[i - 1]) {
      throw std::invalid_argument("partial_trace: sites must be strictly ascending");
    }
  }
  std::vector<int> traced;
  for (int s = 0; s < rho.n_sites; ++s) {
    if (std::find(kept.begin(), kept.end(), s) == kept.end()) traced.push_back(s);
  }

  const auto full_index = [&](std::uint64_t kept_bits, std::uint64_t env_bits) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      idx |= ((kept_bits >> i) & 1) << kept[i];
    }
    for (std::size_t i = 0; i < traced.size(); ++i) {
      idx |= ((env_bits >> i) & 1) << traced[i];
    }
    return static_cast<Eigen::Index>(idx);
  };

  const Eigen::Index out_dim = Eigen::Index{1} << kept.size();
  const std::uint64_t env_count = std::uint64_t{1} << traced.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
  for (Eigen::Index a = 0; a < out_dim; ++a) {
    for (Eigen::Index b = 0; b < out_dim; ++b) {
      Complex sum{0.0, 0.0};
      for (std::uint64_t e = 0; e < env_count; ++e) {
        sum += rho.matrix(full_index(static_cast<std::uint64_t>(a), e),
                          full_index(static_cast<std::uint64_t>(b), e));
      }
      out(a, b) = sum;
    }
  }
  return {std::move(out), static_cast<int>(kept.size()), rho.normalized};
}

namespace {

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m, const char* where) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  if (ev.minCoeff() < -1e-8 * scale) {
    throw std::invalid_argument(std::string(where) + ": input not positive semi-definite");
  }
  const Eigen::VectorXd roots = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

FidelityResult fidelity_detail(const DenseDensityMatrix& a, const DenseDensityMatrix& b) {
  check_density_matrix(a, "fidelity");
  check_density_matrix(b, "fidelity");
  if (a.n_sites != b.n_sites) throw std::invalid_argument("fidelity: dimension mismatch");
  if (std::abs(a.matrix.trace().real() - 1.0) > 1e-9 ||
      std::abs(b.matrix.trace().real() - 1.0) > 1e-9) {
    throw std::invalid_argument("fidelity: inputs must be normalized to unit trace");
  }
  const Eigen::MatrixXcd root_a = psd_sqrt(a.matrix, "fidelity");
  Eigen::MatrixXcd inner = root_a * b.matrix * root_a;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner);
  double trace_root = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    trace_root += std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  }
  const double raw = trace_root * trace_root;
  return {std::clamp(raw, 0.0, 1.0), raw};
}

double fidelity(const DenseDensityMatrix& a, const DenseDensityMatrix& b) {
  return fidelity_detail(a, b).value;
}

DenseDensityMatrix ansatz_to_dense(const NdmParameters& p) {
  if (p.n_sites > kMaxDenseSites) {
    throw std::invalid_argument("ansatz_to_dense: system too large (max 6 sites)");
  }
  const Eigen::Index dim = Eigen::Index{1} << p.n_sites;
  Eigen::MatrixXcd logs(dim, dim);
  double max_real = -std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < dim; ++r) {
    const SpinConfiguration row = index_to_config(static_cast<std::uint64_t>(r), p.n_sites);
    for (Eigen::Index c = 0; c < dim; ++c) {
      const SpinConfiguration col = index_to_config(static_cast<std::uint64_t>(c), p.n_sites);
      logs(r, c) = log_rho(p, DoubledConfiguration(row, col));
      max_real = std::max(max_real, logs(r, c).real());
    }
  }
  Eigen::MatrixXcd rho(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      rho(r, c) = std::exp(logs(r, c) - max_real);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();
  return {std::move(rho), p.n_sites, true};
}

}  // namespace lvmc
