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

#ifndef LVMC_LNCOSH_HPP
#define LVMC_LNCOSH_HPP

#include <cmath>
#include <complex>

namespace lvmc {

/// log(2 cosh x), overflow-safe: |x| + log1p(exp(-2|x|)).
inline double log_2cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax));
}

/// log(2 cosh z) for complex z, principal branch.
///
/// Written as s*z + log(1 + exp(-2 s z)) with s = sign(Re z), so the
/// exponential argument always has non-positive real part. The value is
/// single-valued everywhere; cosh zeros (Re z = 0, Im z = pi/2 + k pi)
/// map to -inf real part, which callers treat as a vanishing amplitude.
inline std::complex<double> log_2cosh(std::complex<double> z) {
  const double s = z.real() >= 0.0 ? 1.0 : -1.0;
  const std::complex<double> sz = s * z;
  return sz + std::log(1.0 + std::exp(-2.0 * sz));
}

inline double log_cosh(double x) { return log_2cosh(x) - M_LN2; }

inline std::complex<double> log_cosh(std::complex<double> z) {
  return log_2cosh(z) - M_LN2;
}

}  // namespace lvmc

#endif  // LVMC_LNCOSH_HPP
