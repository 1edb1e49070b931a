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

#ifndef LVMC_MODEL_HPP
#define LVMC_MODEL_HPP

#include <utility>
#include <vector>

#include "lvmc/spin.hpp"

namespace lvmc {

/// Dissipative transverse-field Ising model on a spin-1/2 lattice:
///
///   H = (V/4) sum_<j,l> sz_j sz_l + (g/2) sum_j sx_j
///
/// with a spin-lowering jump operator sigma^- at rate gamma on every site.
/// All energies are in units of gamma (gamma = 1 by default).
struct TransverseIsingModel {
  int n_sites = 1;
  double coupling = 0.0;  // V
  double field = 0.0;     // g
  double gamma = 1.0;
  std::vector<std::pair<int, int>> bonds;

  /// 1D ring: n bonds for n >= 3, a single bond for n = 2, none for n = 1.
  static TransverseIsingModel periodic_ring(int n_sites, double coupling, double field,
                                            double gamma = 1.0);
  static TransverseIsingModel open_chain(int n_sites, double coupling, double field,
                                         double gamma = 1.0);

  /// Throws std::invalid_argument on malformed fields (bad sites, duplicated
  /// unordered bond pairs, non-positive gamma).
  void validate() const;
};

/// One nonzero Liouvillian matrix element L(sigma, sigma~; sigma', sigma~')
/// together with the (sigma', sigma~') it connects to.
struct ConnectedElement {
  DoubledConfiguration target;
  Complex amplitude;
};

/// All (c', mel) with <c|H|c'> = mel != 0: at most one diagonal entry
/// (V/4) sum_bonds c_j c_l plus one single-site-flipped entry of g/2 per site.
std::vector<std::pair<SpinConfiguration, double>> hamiltonian_connections(
    const TransverseIsingModel& m, const SpinConfiguration& c);

/// Action of the jump operator sigma^- at `site` on |c>: a single target
/// (flip(c, {site}), 1) when c_site = +1, nothing otherwise.
std::vector<std::pair<SpinConfiguration, double>> jump_connections(
    const TransverseIsingModel& m, int site, const SpinConfiguration& c);

/// All (sigma', sigma~', A) with (L rho)(sigma, sigma~) = sum A rho(sigma', sigma~').
///
/// Assembled from -iH on the row, +iH on the column, the gamma L (x) L*
/// recycling term, and -(gamma/2) L^dag L on row and column. Duplicate
/// targets are merged by summing amplitudes; exact zeros are dropped.
std::vector<ConnectedElement> liouvillian_connections(const TransverseIsingModel& m,
                                                      const DoubledConfiguration& d);

}  // namespace lvmc

#endif  // LVMC_MODEL_HPP
