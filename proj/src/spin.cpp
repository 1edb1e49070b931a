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

#include "lvmc/spin.hpp"

#include <stdexcept>
#include <string>

namespace lvmc {

SpinConfiguration::SpinConfiguration(std::vector<std::int8_t> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("SpinConfiguration: lattice size must be >= 1");
  }
  for (const auto v : values_) {
    if (v != 1 && v != -1) {
      throw std::invalid_argument("SpinConfiguration: entries must be +1 or -1, got " +
                                  std::to_string(static_cast<int>(v)));
    }
  }
}

SpinConfiguration::SpinConfiguration(std::initializer_list<int> values)
    : SpinConfiguration(std::vector<std::int8_t>(values.begin(), values.end())) {}

SpinConfiguration SpinConfiguration::all_down(int n_sites) {
  if (n_sites < 1) {
    throw std::invalid_argument("SpinConfiguration: lattice size must be >= 1");
  }
  return SpinConfiguration(std::vector<std::int8_t>(static_cast<std::size_t>(n_sites), -1));
}

DoubledConfiguration::DoubledConfiguration(SpinConfiguration row_, SpinConfiguration col_)
    : row(std::move(row_)), col(std::move(col_)) {
  if (row.size() != col.size()) {
    throw std::invalid_argument("DoubledConfiguration: row and col lengths differ");
  }
}

std::uint64_t config_to_index(const SpinConfiguration& c) {
  if (c.size() > 63) {
    throw std::invalid_argument("config_to_index: supports at most 63 sites");
  }
  std::uint64_t index = 0;
  for (int i = 0; i < c.size(); ++i) {
    if (c[i] > 0) index |= (std::uint64_t{1} << i);
  }
  return index;
}

SpinConfiguration index_to_config(std::uint64_t index, int n_sites) {
  if (n_sites < 1 || n_sites > 63) {
    throw std::invalid_argument("index_to_config: n_sites out of range");
  }
  if (index >= (std::uint64_t{1} << n_sites)) {
    throw std::out_of_range("index_to_config: index " + std::to_string(index) +
                            " out of range for " + std::to_string(n_sites) + " sites");
  }
  std::vector<std::int8_t> values(static_cast<std::size_t>(n_sites));
  for (int i = 0; i < n_sites; ++i) {
    values[static_cast<std::size_t>(i)] = (index >> i) & 1 ? 1 : -1;
  }
  return SpinConfiguration(std::move(values));
}

std::uint64_t doubled_to_index(const DoubledConfiguration& d) {
  const int n = d.n_sites();
  if (n > 31) {
    throw std::invalid_argument("doubled_to_index: supports at most 31 sites");
  }
  return (config_to_index(d.row) << n) | config_to_index(d.col);
}

DoubledConfiguration index_to_doubled(std::uint64_t index, int n_sites) {
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  if (index >= dim * dim) {
    throw std::out_of_range("index_to_doubled: index out of range");
  }
  return DoubledConfiguration(index_to_config(index >> n_sites, n_sites),
                              index_to_config(index & (dim - 1), n_sites));
}

SpinConfiguration flip(const SpinConfiguration& c, std::span<const int> sites) {
  std::vector<std::int8_t> values = c.values();
  for (const int site : sites) {
    if (site < 0 || site >= c.size()) {
      throw std::out_of_range("flip: site " + std::to_string(site) + " out of range");
    }
    values[static_cast<std::size_t>(site)] =
        static_cast<std::int8_t>(-values[static_cast<std::size_t>(site)]);
  }
  return SpinConfiguration(std::move(values));
}

SpinConfiguration flip(const SpinConfiguration& c, std::initializer_list<int> sites) {
  return flip(c, std::span<const int>(sites.begin(), sites.size()));
}

}  // namespace lvmc
