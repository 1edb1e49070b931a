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

#include "lvmc/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace lvmc {

namespace {

constexpr Complex kImag{0.0, 1.0};

/// Number of up spins, i.e. the eigenvalue of sum_j sigma^+_j sigma^-_j.
int count_up(const SpinConfiguration& c) {
  int n = 0;
  for (int i = 0; i < c.size(); ++i) {
    if (c[i] > 0) ++n;
  }
  return n;
}

}  // namespace

TransverseIsingModel TransverseIsingModel::periodic_ring(int n_sites, double coupling,
                                                         double field, double gamma) {
  TransverseIsingModel m{n_sites, coupling, field, gamma, {}};
  if (n_sites == 2) {
    m.bonds.emplace_back(0, 1);
  } else if (n_sites >= 3) {
    for (int j = 0; j < n_sites; ++j) m.bonds.emplace_back(j, (j + 1) % n_sites);
  }
  m.validate();
  return m;
}

TransverseIsingModel TransverseIsingModel::open_chain(int n_sites, double coupling,
                                                      double field, double gamma) {
  TransverseIsingModel m{n_sites, coupling, field, gamma, {}};
  for (int j = 0; j + 1 < n_sites; ++j) m.bonds.emplace_back(j, j + 1);
  m.validate();
  return m;
}

void TransverseIsingModel::validate() const {
  if (n_sites < 1) throw std::invalid_argument("TransverseIsingModel: n_sites must be >= 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("TransverseIsingModel: gamma must be > 0");
  std::set<std::pair<int, int>> seen;
  for (const auto& [j, l] : bonds) {
    if (j < 0 || j >= n_sites || l < 0 || l >= n_sites) {
      throw std::invalid_argument("TransverseIsingModel: bond site out of range");
    }
    if (j == l) throw std::invalid_argument("TransverseIsingModel: bond joins a site to itself");
    if (!seen.insert({std::min(j, l), std::max(j, l)}).second) {
      throw std::invalid_argument("TransverseIsingModel: duplicated unordered bond pair");
    }
  }
}

std::vector<std::pair<SpinConfiguration, double>> hamiltonian_connections(
    const TransverseIsingModel& m, const SpinConfiguration& c) {
  if (c.size() != m.n_sites) {
    throw std::invalid_argument("hamiltonian_connections: configuration size mismatch");
  }
  std::vector<std::pair<SpinConfiguration, double>> out;
  double diagonal = 0.0;
  for (const auto& [j, l] : m.bonds) diagonal += c[j] * c[l];
  diagonal *= m.coupling / 4.0;
  if (diagonal != 0.0) out.emplace_back(c, diagonal);
  if (m.field != 0.0) {
    for (int j = 0; j < m.n_sites; ++j) {
      out.emplace_back(flip(c, {j}), m.field / 2.0);
    }
  }
  return out;
}

std::vector<std::pair<SpinConfiguration, double>> jump_connections(
    const TransverseIsingModel& m, int site, const SpinConfiguration& c) {
  if (site < 0 || site >= m.n_sites) {
    throw std::invalid_argument("jump_connections: site out of range");
  }
  std::vector<std::pair<SpinConfiguration, double>> out;
  if (c[site] > 0) out.emplace_back(flip(c, {site}), 1.0);
  return out;
}

std::vector<ConnectedElement> liouvillian_connections(const TransverseIsingModel& m,
                                                      const DoubledConfiguration& d) {
  if (d.n_sites() != m.n_sites) {
    throw std::invalid_argument("liouvillian_connections: configuration size mismatch");
  }
  std::vector<ConnectedElement> out;
  out.reserve(static_cast<std::size_t>(3 * m.n_sites + 1));

  const auto add = [&out](DoubledConfiguration target, Complex amplitude) {
    for (auto& element : out) {
      if (element.target == target) {
        element.amplitude += amplitude;
        return;
      }
    }
    out.push_back({std::move(target), amplitude});
  };

  // Diagonal part: -i (E(row) - E(col)) from the ZZ term, plus the
  // anticommutator -(gamma/2) (n_up(row) + n_up(col)).
  double row_energy = 0.0, col_energy = 0.0;
  for (const auto& [j, l] : m.bonds) {
    row_energy += d.row[j] * d.row[l];
    col_energy += d.col[j] * d.col[l];
  }
  row_energy *= m.coupling / 4.0;
  col_energy *= m.coupling / 4.0;
  const Complex diagonal = -kImag * (row_energy - col_energy) -
                           0.5 * m.gamma * (count_up(d.row) + count_up(d.col));
  if (diagonal != Complex{0.0, 0.0}) add(d, diagonal);

  // Transverse field: -i (g/2) on the row, +i (g/2) on the column. Matrix
  // elements of H are real, so the conjugation on the column side is a no-op.
  if (m.field != 0.0) {
    const Complex row_amp = -kImag * (m.field / 2.0);
    const Complex col_amp = kImag * (m.field / 2.0);
    for (int j = 0; j < m.n_sites; ++j) {
      add(DoubledConfiguration(flip(d.row, {j}), d.col), row_amp);
      add(DoubledConfiguration(d.row, flip(d.col, {j})), col_amp);
    }
  }

  // Recycling term gamma L rho L^dag: <s|sigma^-|s'> requires s_j = -1 with
  // s' = flip(s, {j}), simultaneously on the row and the column.
  for (int j = 0; j < m.n_sites; ++j) {
    if (d.row[j] < 0 && d.col[j] < 0) {
      add(DoubledConfiguration(flip(d.row, {j}), flip(d.col, {j})), m.gamma);
    }
  }

  std::erase_if(out, [](const ConnectedElement& e) { return e.amplitude == Complex{0.0, 0.0}; });
  return out;
}

}  // namespace lvmc
