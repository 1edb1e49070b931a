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

#include "lvmc/observables.hpp"

namespace lvmc {

namespace {

using Connections = std::vector<std::pair<SpinConfiguration, Complex>>;

}  // namespace

// Matrix elements in the sigma-z basis: <sigma~|Theta|sigma>. For sigma_y the
// nonzero element is i sigma_j on the flipped target (|up> -> i |down>).
ObservableOperator sigma_x(int site) {
  return {"sx" + std::to_string(site), [site](const SpinConfiguration& c) -> Connections {
            return {{flip(c, {site}), Complex{1.0, 0.0}}};
          }};
}

ObservableOperator sigma_y(int site) {
  return {"sy" + std::to_string(site), [site](const SpinConfiguration& c) -> Connections {
            return {{flip(c, {site}), Complex{0.0, static_cast<double>(c[site])}}};
          }};
}

ObservableOperator sigma_z(int site) {
  return {"sz" + std::to_string(site), [site](const SpinConfiguration& c) -> Connections {
            return {{c, Complex{static_cast<double>(c[site]), 0.0}}};
          }};
}

ObservableOperator average_sigma_x(int n_sites) {
  return {"sx", [n_sites](const SpinConfiguration& c) -> Connections {
            Connections out;
            out.reserve(static_cast<std::size_t>(n_sites));
            for (int j = 0; j < n_sites; ++j) {
              out.emplace_back(flip(c, {j}), Complex{1.0 / n_sites, 0.0});
            }
            return out;
          }};
}

ObservableOperator average_sigma_y(int n_sites) {
  return {"sy", [n_sites](const SpinConfiguration& c) -> Connections {
            Connections out;
            out.reserve(static_cast<std::size_t>(n_sites));
            for (int j = 0; j < n_sites; ++j) {
              out.emplace_back(flip(c, {j}), Complex{0.0, static_cast<double>(c[j]) / n_sites});
            }
            return out;
          }};
}

ObservableOperator average_sigma_z(int n_sites) {
  return {"sz", [n_sites](const SpinConfiguration& c) -> Connections {
            double total = 0.0;
            for (int j = 0; j < n_sites; ++j) total += c[j];
            return {{c, Complex{total / n_sites, 0.0}}};
          }};
}

}  // namespace lvmc
