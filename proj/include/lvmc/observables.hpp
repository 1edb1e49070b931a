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

#ifndef LVMC_OBSERVABLES_HPP
#define LVMC_OBSERVABLES_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lvmc/spin.hpp"

namespace lvmc {

/// A Hermitian operator given by its connected matrix elements: for a column
/// label sigma, `connections` lists every (sigma~, <sigma~|Theta|sigma>) with a
/// nonzero element.
struct ObservableOperator {
  std::string name;
  std::function<std::vector<std::pair<SpinConfiguration, Complex>>(const SpinConfiguration&)>
      connections;
};

ObservableOperator sigma_x(int site);
ObservableOperator sigma_y(int site);
ObservableOperator sigma_z(int site);

/// Lattice averages (1/N) sum_j sigma^alpha_j.
ObservableOperator average_sigma_x(int n_sites);
ObservableOperator average_sigma_y(int n_sites);
ObservableOperator average_sigma_z(int n_sites);

}  // namespace lvmc

#endif  // LVMC_OBSERVABLES_HPP
