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

#ifndef LVMC_SPIN_HPP
#define LVMC_SPIN_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace lvmc {

using Complex = std::complex<double>;

/// A basis label for the spin-1/2 lattice: one sigma-z eigenvalue (+1 or -1)
/// per site. Immutable value type; all mutating operations return copies.
class SpinConfiguration {
 public:
  SpinConfiguration() = default;
  explicit SpinConfiguration(std::vector<std::int8_t> values);
  SpinConfiguration(std::initializer_list<int> values);

  static SpinConfiguration all_down(int n_sites);

  int size() const { return static_cast<int>(values_.size()); }
  /// Spin value at `site`, +1 or -1.
  int operator[](int site) const { return values_[static_cast<std::size_t>(site)]; }
  const std::vector<std::int8_t>& values() const { return values_; }

  bool operator==(const SpinConfiguration&) const = default;

 private:
  std::vector<std::int8_t> values_;
};

/// A (row, column) pair of basis labels addressing one density-matrix entry.
struct DoubledConfiguration {
  SpinConfiguration row;
  SpinConfiguration col;

  DoubledConfiguration() = default;
  DoubledConfiguration(SpinConfiguration row_, SpinConfiguration col_);

  int n_sites() const { return row.size(); }
  bool operator==(const DoubledConfiguration&) const = default;
};

/// Little-endian encoding: bit i of the result is (1 + values[i]) / 2, with
/// site 0 the least significant bit. Requires n_sites <= 63.
std::uint64_t config_to_index(const SpinConfiguration& c);

/// Inverse of config_to_index. Throws std::out_of_range for index >= 2^n_sites.
SpinConfiguration index_to_config(std::uint64_t index, int n_sites);

/// Row-major index of a density-matrix entry: idx(row) * 2^N + idx(col).
std::uint64_t doubled_to_index(const DoubledConfiguration& d);

DoubledConfiguration index_to_doubled(std::uint64_t index, int n_sites);

/// Returns a copy of `c` with the spins at `sites` negated.
SpinConfiguration flip(const SpinConfiguration& c, std::span<const int> sites);
SpinConfiguration flip(const SpinConfiguration& c, std::initializer_list<int> sites);

}  // namespace lvmc

#endif  // LVMC_SPIN_HPP
