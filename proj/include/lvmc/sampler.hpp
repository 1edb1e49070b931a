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

#ifndef LVMC_SAMPLER_HPP
#define LVMC_SAMPLER_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "lvmc/ansatz.hpp"
#include "lvmc/spin.hpp"

namespace lvmc {

struct SamplerConfig {
  int n_chains = 1;
  long n_samples_per_chain = 1000;
  int burn_in_sweeps = 100;
  int max_flips_per_move = 1;
  std::uint64_t seed = 0;

  void validate(int n_sites) const;
};

struct SampleStats {
  long proposed = 0;
  long accepted = 0;

  double acceptance_rate() const {
    return proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
  }
};

struct JointSample {
  DoubledConfiguration config;
  double log_weight;  // log |rho(row, col)|^2
};

struct JointBatch {
  std::vector<JointSample> samples;  // chains concatenated in chain order
  SampleStats stats;
};

struct DiagonalSample {
  SpinConfiguration config;
  double log_weight;  // log rho(sigma, sigma)
};

struct DiagonalBatch {
  std::vector<DiagonalSample> samples;
  SampleStats stats;
};

/// Deterministic substream derivation (splitmix-style), used for per-chain
/// and per-iteration seeds. Never feed the master seed to two different
/// consumers directly; derive with distinct tags instead.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// k uniform on [1, max_flips], then a uniform k-subset of sites. The move is
/// its own inverse with equal probability, so the proposal is symmetric.
std::vector<int> propose_flip_sites(int n_sites, int max_flips, std::mt19937_64& rng);

/// Metropolis rule: accept with probability min(1, exp(log_w_new - log_w_old)).
/// log_w_new = -inf always rejects.
bool metropolis_accept(double log_w_old, double log_w_new, std::mt19937_64& rng);

/// Markov chain over (row, col) pairs with stationary weight |rho|^2.
/// Each proposal touches the row only, the column only, or both (probability
/// 1/3 each). One sweep = n_sites proposals; after burn_in_sweeps sweeps the
/// chain emits one sample per sweep, n_samples_per_chain per chain. With
/// several chains, each runs an independent substream and the batches are
/// concatenated in chain order (chains may execute in parallel; the
/// LVMC_NUM_THREADS environment variable caps the worker count).
JointBatch run_chain_joint(const NdmParameters& p, const SamplerConfig& cfg);

/// Same mechanics restricted to the diagonal, stationary weight rho(s, s).
DiagonalBatch run_chain_diagonal(const NdmParameters& p, const SamplerConfig& cfg);

}  // namespace lvmc

#endif  // LVMC_SAMPLER_HPP
