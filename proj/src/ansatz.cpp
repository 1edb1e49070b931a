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

#include "lvmc/ansatz.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lvmc/lncosh.hpp"

namespace lvmc {

namespace {

constexpr Complex kImag{0.0, 1.0};
constexpr int kAmp = static_cast<int>(Network::amplitude);
constexpr int kPhase = static_cast<int>(Network::phase);

int layer_size(const char* what, double density, int n_sites) {
  const double exact = density * n_sites;
  const int rounded = static_cast<int>(std::lround(exact));
  if (rounded < 1 || std::abs(exact - rounded) > 1e-9) {
    throw std::invalid_argument(std::string(what) +
                                " * n_sites must be a positive integer, got " +
                                std::to_string(exact));
  }
  return rounded;
}

}  // namespace

NdmParameters NdmParameters::zeros(int n_sites, int n_hidden, int n_ancilla) {
  if (n_sites < 1 || n_hidden < 1 || n_ancilla < 1) {
    throw std::invalid_argument("NdmParameters: all layer sizes must be >= 1");
  }
  NdmParameters p;
  p.n_sites = n_sites;
  p.n_hidden = n_hidden;
  p.n_ancilla = n_ancilla;
  for (int nu : {kAmp, kPhase}) {
    p.visible_bias[nu] = Eigen::VectorXd::Zero(n_sites);
    p.hidden_bias[nu] = Eigen::VectorXd::Zero(n_hidden);
    p.weights[nu] = Eigen::MatrixXd::Zero(n_sites, n_hidden);
    p.ancilla_weights[nu] = Eigen::MatrixXd::Zero(n_sites, n_ancilla);
  }
  p.ancilla_bias = Eigen::VectorXd::Zero(n_ancilla);
  return p;
}

NdmParameters NdmParameters::random(int n_sites, double alpha, double beta, double scale,
                                    std::uint64_t seed) {
  if (scale < 0.0) throw std::invalid_argument("NdmParameters::random: scale must be >= 0");
  const int n_hidden = layer_size("alpha", alpha, n_sites);
  const int n_ancilla = layer_size("beta", beta, n_sites);
  NdmParameters p = zeros(n_sites, n_hidden, n_ancilla);
  if (scale == 0.0) return p;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, scale);
  Eigen::VectorXd v(p.parameter_count());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  return parameters_from_vector(v, n_sites, n_hidden, n_ancilla);
}

int NdmParameters::parameter_count() const {
  return ParameterLayout{n_sites, n_hidden, n_ancilla}.total();
}

void NdmParameters::validate() const {
  if (n_sites < 1 || n_hidden < 1 || n_ancilla < 1) {
    throw std::invalid_argument("NdmParameters: all layer sizes must be >= 1");
  }
  const auto check = [](const auto& block, Eigen::Index rows, Eigen::Index cols,
                        const char* name) {
    if (block.rows() != rows || block.cols() != cols) {
      throw std::invalid_argument(std::string("NdmParameters: bad shape for ") + name);
    }
    if (!block.allFinite()) {
      throw std::invalid_argument(std::string("NdmParameters: non-finite entries in ") + name);
    }
  };
  for (int nu : {kAmp, kPhase}) {
    check(visible_bias[nu], n_sites, 1, "visible_bias");
    check(hidden_bias[nu], n_hidden, 1, "hidden_bias");
    check(weights[nu], n_sites, n_hidden, "weights");
    check(ancilla_weights[nu], n_sites, n_ancilla, "ancilla_weights");
  }
  check(ancilla_bias, n_ancilla, 1, "ancilla_bias");
}

int ParameterLayout::network_offset(Network nu) const {
  const int per_network = n_sites + n_hidden + n_sites * n_hidden + n_sites * n_ancilla;
  return nu == Network::amplitude ? 0 : per_network;
}

ParameterLayout::Block ParameterLayout::visible_bias(Network nu) const {
  return {network_offset(nu), n_sites};
}

ParameterLayout::Block ParameterLayout::hidden_bias(Network nu) const {
  return {network_offset(nu) + n_sites, n_hidden};
}

ParameterLayout::Block ParameterLayout::weights(Network nu) const {
  return {network_offset(nu) + n_sites + n_hidden, n_sites * n_hidden};
}

ParameterLayout::Block ParameterLayout::ancilla_weights(Network nu) const {
  return {network_offset(nu) + n_sites + n_hidden + n_sites * n_hidden,
          n_sites * n_ancilla};
}

ParameterLayout::Block ParameterLayout::ancilla_bias() const {
  return {2 * network_offset(Network::phase), n_ancilla};
}

int ParameterLayout::total() const {
  return 2 * network_offset(Network::phase) + n_ancilla;
}

Eigen::VectorXd to_parameter_vector(const NdmParameters& p) {
  const ParameterLayout layout = ParameterLayout::of(p);
  Eigen::VectorXd v(layout.total());
  for (Network nu : {Network::amplitude, Network::phase}) {
    const int i = static_cast<int>(nu);
    v.segment(layout.visible_bias(nu).offset, p.n_sites) = p.visible_bias[i];
    v.segment(layout.hidden_bias(nu).offset, p.n_hidden) = p.hidden_bias[i];
    int k = layout.weights(nu).offset;
    for (int r = 0; r < p.n_sites; ++r)
      for (int c = 0; c < p.n_hidden; ++c) v[k++] = p.weights[i](r, c);
    k = layout.ancilla_weights(nu).offset;
    for (int r = 0; r < p.n_sites; ++r)
      for (int c = 0; c < p.n_ancilla; ++c) v[k++] = p.ancilla_weights[i](r, c);
  }
  v.segment(layout.ancilla_bias().offset, p.n_ancilla) = p.ancilla_bias;
  return v;
}

NdmParameters parameters_from_vector(const Eigen::VectorXd& v, int n_sites, int n_hidden,
                                     int n_ancilla) {
  NdmParameters p = NdmParameters::zeros(n_sites, n_hidden, n_ancilla);
  const ParameterLayout layout = ParameterLayout::of(p);
  if (v.size() != layout.total()) {
    throw std::invalid_argument("parameters_from_vector: length mismatch, expected " +
                                std::to_string(layout.total()) + ", got " +
                                std::to_string(v.size()));
  }
  for (Network nu : {Network::amplitude, Network::phase}) {
    const int i = static_cast<int>(nu);
    p.visible_bias[i] = v.segment(layout.visible_bias(nu).offset, n_sites);
    p.hidden_bias[i] = v.segment(layout.hidden_bias(nu).offset, n_hidden);
    int k = layout.weights(nu).offset;
    for (int r = 0; r < n_sites; ++r)
      for (int c = 0; c < n_hidden; ++c) p.weights[i](r, c) = v[k++];
    k = layout.ancilla_weights(nu).offset;
    for (int r = 0; r < n_sites; ++r)
      for (int c = 0; c < n_ancilla; ++c) p.ancilla_weights[i](r, c) = v[k++];
  }
  p.ancilla_bias = v.segment(layout.ancilla_bias().offset, n_ancilla);
  return p;
}

namespace {

Eigen::VectorXd spins_as_vector(const SpinConfiguration& c) {
  Eigen::VectorXd s(c.size());
  for (int i = 0; i < c.size(); ++i) s[i] = c[i];
  return s;
}

}  // namespace

double effective_angle(const NdmParameters& p, Network nu, int j,
                       const SpinConfiguration& c) {
  if (j < 0 || j >= p.n_hidden) throw std::out_of_range("effective_angle: hidden index");
  if (c.size() != p.n_sites) throw std::invalid_argument("effective_angle: size mismatch");
  double angle = p.hb(nu)[j];
  for (int i = 0; i < p.n_sites; ++i) angle += c[i] * p.w(nu)(i, j);
  return angle;
}

Complex psi(const NdmParameters& p, const SpinConfiguration& c,
            const SpinConfiguration& ancilla) {
  if (c.size() != p.n_sites || ancilla.size() != p.n_ancilla) {
    throw std::invalid_argument("psi: configuration size mismatch");
  }
  const Eigen::VectorXd sigma = spins_as_vector(c);
  const Eigen::VectorXd a = spins_as_vector(ancilla);

  std::array<double, 2> log_p{};
  for (int nu : {kAmp, kPhase}) {
    double e = sigma.dot(p.visible_bias[nu]) + sigma.dot(p.ancilla_weights[nu] * a);
    if (nu == kAmp) e += a.dot(p.ancilla_bias);
    double value = -e;
    const Eigen::VectorXd theta = p.hidden_bias[nu] + p.weights[nu].transpose() * sigma;
    for (Eigen::Index j = 0; j < theta.size(); ++j) value += log_2cosh(theta[j]);
    log_p[nu] = value;
  }
  return std::exp(Complex{0.5 * log_p[kAmp], -0.5 * log_p[kPhase]});
}

RhoCache::RhoCache(const NdmParameters& p, DoubledConfiguration d)
    : params_(&p), config_(std::move(d)) {
  if (config_.n_sites() != p.n_sites) {
    throw std::invalid_argument("RhoCache: configuration size mismatch");
  }
  const Eigen::VectorXd row = spins_as_vector(config_.row);
  const Eigen::VectorXd col = spins_as_vector(config_.col);
  for (int nu : {kAmp, kPhase}) {
    theta_row_[nu] = p.hidden_bias[nu] + p.weights[nu].transpose() * row;
    theta_col_[nu] = p.hidden_bias[nu] + p.weights[nu].transpose() * col;
    vb_row_[nu] = p.visible_bias[nu].dot(row);
    vb_col_[nu] = p.visible_bias[nu].dot(col);
  }
  zeta_ = params_->ancilla_bias +
          0.5 * (params_->ancilla_weights[kAmp].transpose() * (row + col)) -
          0.5 * kImag * (params_->ancilla_weights[kPhase].transpose() * (row - col));
}

Complex RhoCache::log_value() const {
  double gamma_minus = -0.5 * (vb_row_[kAmp] + vb_col_[kAmp]);
  for (Eigen::Index j = 0; j < theta_row_[kAmp].size(); ++j) {
    gamma_minus += 0.5 * (log_2cosh(theta_row_[kAmp][j]) + log_2cosh(theta_col_[kAmp][j]));
  }
  double phase_sum = vb_row_[kPhase] - vb_col_[kPhase];
  for (Eigen::Index j = 0; j < theta_row_[kPhase].size(); ++j) {
    phase_sum -= log_2cosh(theta_row_[kPhase][j]) - log_2cosh(theta_col_[kPhase][j]);
  }
  Complex value{gamma_minus, 0.5 * phase_sum};
  for (Eigen::Index k = 0; k < zeta_.size(); ++k) value += log_2cosh(zeta_[k]);
  return value;
}

void RhoCache::flip_row(std::span<const int> sites) {
  const NdmParameters& p = *params_;
  std::vector<std::int8_t> values = config_.row.values();
  for (const int i : sites) {
    if (i < 0 || i >= p.n_sites) throw std::out_of_range("RhoCache::flip_row: site");
    const double s = values[static_cast<std::size_t>(i)];
    for (int nu : {kAmp, kPhase}) {
      theta_row_[nu] -= 2.0 * s * p.weights[nu].row(i).transpose();
      vb_row_[nu] -= 2.0 * s * p.visible_bias[nu][i];
    }
    zeta_ -= s * (p.ancilla_weights[kAmp].row(i).transpose() -
                  kImag * p.ancilla_weights[kPhase].row(i).transpose());
    values[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(-s);
  }
  config_.row = SpinConfiguration(std::move(values));
}

void RhoCache::flip_col(std::span<const int> sites) {
  const NdmParameters& p = *params_;
  std::vector<std::int8_t> values = config_.col.values();
  for (const int i : sites) {
    if (i < 0 || i >= p.n_sites) throw std::out_of_range("RhoCache::flip_col: site");
    const double s = values[static_cast<std::size_t>(i)];
    for (int nu : {kAmp, kPhase}) {
      theta_col_[nu] -= 2.0 * s * p.weights[nu].row(i).transpose();
      vb_col_[nu] -= 2.0 * s * p.visible_bias[nu][i];
    }
    zeta_ -= s * (p.ancilla_weights[kAmp].row(i).transpose() +
                  kImag * p.ancilla_weights[kPhase].row(i).transpose());
    values[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(-s);
  }
  config_.col = SpinConfiguration(std::move(values));
}

Eigen::VectorXcd RhoCache::log_derivatives() const {
  const NdmParameters& p = *params_;
  const ParameterLayout layout = ParameterLayout::of(p);
  Eigen::VectorXcd out(layout.total());

  const Eigen::VectorXd tanh_amp_row = theta_row_[kAmp].array().tanh();
  const Eigen::VectorXd tanh_amp_col = theta_col_[kAmp].array().tanh();
  const Eigen::VectorXd tanh_ph_row = theta_row_[kPhase].array().tanh();
  const Eigen::VectorXd tanh_ph_col = theta_col_[kPhase].array().tanh();
  Eigen::VectorXcd tanh_zeta(zeta_.size());
  for (Eigen::Index k = 0; k < zeta_.size(); ++k) tanh_zeta[k] = std::tanh(zeta_[k]);

  const auto& row = config_.row;
  const auto& col = config_.col;

  int k = layout.visible_bias(Network::amplitude).offset;
  for (int i = 0; i < p.n_sites; ++i) out[k++] = -0.5 * (row[i] + col[i]);
  k = layout.hidden_bias(Network::amplitude).offset;
  for (int j = 0; j < p.n_hidden; ++j) out[k++] = 0.5 * (tanh_amp_row[j] + tanh_amp_col[j]);
  k = layout.weights(Network::amplitude).offset;
  for (int i = 0; i < p.n_sites; ++i)
    for (int j = 0; j < p.n_hidden; ++j)
      out[k++] = 0.5 * (row[i] * tanh_amp_row[j] + col[i] * tanh_amp_col[j]);
  k = layout.ancilla_weights(Network::amplitude).offset;
  for (int i = 0; i < p.n_sites; ++i)
    for (int a = 0; a < p.n_ancilla; ++a)
      out[k++] = 0.5 * (row[i] + col[i]) * tanh_zeta[a];

  k = layout.visible_bias(Network::phase).offset;
  for (int i = 0; i < p.n_sites; ++i) {
    out[k++] = 0.5 * kImag * static_cast<double>(row[i] - col[i]);
  }
  k = layout.hidden_bias(Network::phase).offset;
  for (int j = 0; j < p.n_hidden; ++j)
    out[k++] = -0.5 * kImag * (tanh_ph_row[j] - tanh_ph_col[j]);
  k = layout.weights(Network::phase).offset;
  for (int i = 0; i < p.n_sites; ++i)
    for (int j = 0; j < p.n_hidden; ++j)
      out[k++] = -0.5 * kImag * (row[i] * tanh_ph_row[j] - col[i] * tanh_ph_col[j]);
  k = layout.ancilla_weights(Network::phase).offset;
  for (int i = 0; i < p.n_sites; ++i)
    for (int a = 0; a < p.n_ancilla; ++a)
      out[k++] = -0.5 * kImag * static_cast<double>(row[i] - col[i]) * tanh_zeta[a];

  k = layout.ancilla_bias().offset;
  for (int a = 0; a < p.n_ancilla; ++a) out[k++] = tanh_zeta[a];
  return out;
}

Complex log_rho(const NdmParameters& p, const DoubledConfiguration& d) {
  return RhoCache(p, d).log_value();
}

Complex log_rho_diff(const NdmParameters& p, const DoubledConfiguration& d_old,
                     const DoubledConfiguration& d_new) {
  if (d_old.n_sites() != d_new.n_sites()) {
    throw std::invalid_argument("log_rho_diff: configuration size mismatch");
  }
  RhoCache cache(p, d_old);
  const Complex before = cache.log_value();
  std::vector<int> row_sites, col_sites;
  for (int i = 0; i < d_old.n_sites(); ++i) {
    if (d_old.row[i] != d_new.row[i]) row_sites.push_back(i);
    if (d_old.col[i] != d_new.col[i]) col_sites.push_back(i);
  }
  cache.flip_row(row_sites);
  cache.flip_col(col_sites);
  return cache.log_value() - before;
}

Eigen::VectorXcd log_derivatives(const NdmParameters& p, const DoubledConfiguration& d) {
  return RhoCache(p, d).log_derivatives();
}

Complex rho_by_ancilla_trace(const NdmParameters& p, const DoubledConfiguration& d) {
  if (p.n_ancilla > 16) {
    throw std::invalid_argument("rho_by_ancilla_trace: ancilla space too large (max 16)");
  }
  Complex total{0.0, 0.0};
  const std::uint64_t count = std::uint64_t{1} << p.n_ancilla;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const SpinConfiguration a = index_to_config(idx, p.n_ancilla);
    total += psi(p, d.row, a) * std::conj(psi(p, d.col, a));
  }
  return total;
}

void save_parameters(const NdmParameters& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_parameters: cannot open " + path.string());
  out << "lvmc-ndm-parameters v1\n";
  out << "n_sites " << p.n_sites << "\n";
  out << "n_hidden " << p.n_hidden << "\n";
  out << "n_ancilla " << p.n_ancilla << "\n";
  const Eigen::VectorXd v = to_parameter_vector(p);
  out.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << v[i] << "\n";
  if (!out) throw std::runtime_error("save_parameters: write failed for " + path.string());
}

NdmParameters load_parameters(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_parameters: cannot open " + path.string());
  std::string magic;
  std::getline(in, magic);
  if (magic != "lvmc-ndm-parameters v1") {
    throw std::runtime_error("load_parameters: bad header in " + path.string());
  }
  const auto read_field = [&](const std::string& name) {
    std::string key;
    int value = 0;
    if (!(in >> key >> value) || key != name) {
      throw std::runtime_error("load_parameters: expected '" + name + "' in " + path.string());
    }
    return value;
  };
  const int n_sites = read_field("n_sites");
  const int n_hidden = read_field("n_hidden");
  const int n_ancilla = read_field("n_ancilla");
  const int total = ParameterLayout{n_sites, n_hidden, n_ancilla}.total();
  Eigen::VectorXd v(total);
  for (int i = 0; i < total; ++i) {
    if (!(in >> v[i])) {
      throw std::runtime_error("load_parameters: truncated parameter list in " + path.string());
    }
  }
  return parameters_from_vector(v, n_sites, n_hidden, n_ancilla);
}

}  // namespace lvmc
