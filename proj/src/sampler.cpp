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

#include "lvmc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

namespace lvmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Substream tags so the joint and diagonal chains never share a stream even
// when handed the same config seed.
constexpr std::uint64_t kJointTag = 0x6a;
constexpr std::uint64_t kDiagonalTag = 0x64;

int worker_count(int n_chains) {
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LVMC_NUM_THREADS")) {
    workers = std::max(1, std::atoi(env));
  }
  return std::clamp(workers, 1, n_chains);
}

SpinConfiguration random_configuration(int n_sites, std::mt19937_64& rng) {
  std::vector<std::int8_t> values(static_cast<std::size_t>(n_sites));
  for (auto& v : values) v = (rng() & 1) ? 1 : -1;
  return SpinConfiguration(std::move(values));
}

}  // namespace

void SamplerConfig::validate(int n_sites) const {
  if (n_chains < 1) throw std::invalid_argument("SamplerConfig: n_chains must be >= 1");
  if (n_samples_per_chain < 1) {
    throw std::invalid_argument("SamplerConfig: n_samples_per_chain must be >= 1");
  }
  if (burn_in_sweeps < 0) throw std::invalid_argument("SamplerConfig: negative burn-in");
  if (max_flips_per_move < 1 || max_flips_per_move > n_sites) {
    throw std::invalid_argument("SamplerConfig: max_flips_per_move must be in [1, n_sites]");
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = master;
  for (const std::uint64_t word : {a, b}) {
    z += 0x9e3779b97f4a7c15ULL + word;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
  }
  return z;
}

std::vector<int> propose_flip_sites(int n_sites, int max_flips, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> flip_count(1, max_flips);
  const int k = flip_count(rng);
  // Partial Fisher-Yates over site indices gives a uniform k-subset.
  std::vector<int> sites(static_cast<std::size_t>(n_sites));
  for (int i = 0; i < n_sites; ++i) sites[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n_sites - 1);
    std::swap(sites[static_cast<std::size_t>(i)], sites[static_cast<std::size_t>(pick(rng))]);
  }
  sites.resize(static_cast<std::size_t>(k));
  return sites;
}

bool metropolis_accept(double log_w_old, double log_w_new, std::mt19937_64& rng) {
  if (!std::isfinite(log_w_old)) {
    throw std::invalid_argument("metropolis_accept: current state has non-finite weight");
  }
  if (log_w_new == kNegInf) return false;
  const double delta = log_w_new - log_w_old;
  if (delta >= 0.0) return true;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit(rng) < std::exp(delta);
}

namespace {

// One Markov chain over the doubled space. The cache tracks the effective
// angles incrementally; the log weight is re-synced from a fresh cache at
// every sweep boundary.
JointBatch run_single_joint_chain(const NdmParameters& p, const SamplerConfig& cfg,
                                  std::uint64_t chain_seed) {
  std::mt19937_64 rng(chain_seed);
  const int n = p.n_sites;

  DoubledConfiguration current(random_configuration(n, rng), random_configuration(n, rng));
  RhoCache cache(p, current);
  double log_weight = 2.0 * cache.log_value().real();
  for (int attempt = 0; !std::isfinite(log_weight); ++attempt) {
    if (attempt >= 100) {
      throw std::runtime_error("run_chain_joint: could not find a nonzero-weight start");
    }
    current = DoubledConfiguration(random_configuration(n, rng), random_configuration(n, rng));
    cache = RhoCache(p, current);
    log_weight = 2.0 * cache.log_value().real();
  }

  JointBatch batch;
  batch.samples.reserve(static_cast<std::size_t>(cfg.n_samples_per_chain));
  std::uniform_int_distribution<int> which_register(0, 2);

  const long total_sweeps = cfg.burn_in_sweeps + cfg.n_samples_per_chain;
  for (long sweep = 0; sweep < total_sweeps; ++sweep) {
    for (int step = 0; step < n; ++step) {
      const int mode = which_register(rng);
      std::vector<int> row_sites, col_sites;
      if (mode == 0 || mode == 2) {
        row_sites = propose_flip_sites(n, cfg.max_flips_per_move, rng);
      }
      if (mode == 1 || mode == 2) {
        col_sites = propose_flip_sites(n, cfg.max_flips_per_move, rng);
      }

      RhoCache proposal = cache;
      proposal.flip_row(row_sites);
      proposal.flip_col(col_sites);
      const double log_weight_new = 2.0 * proposal.log_value().real();

      ++batch.stats.proposed;
      if (metropolis_accept(log_weight, log_weight_new, rng)) {
        cache = std::move(proposal);
        log_weight = log_weight_new;
        ++batch.stats.accepted;
      }
    }
    // Re-sync against numerical drift of the incremental angles.
    cache = RhoCache(p, cache.config());
    log_weight = 2.0 * cache.log_value().real();
    if (sweep >= cfg.burn_in_sweeps) {
      batch.samples.push_back({cache.config(), log_weight});
    }
  }
  return batch;
}

DiagonalBatch run_single_diagonal_chain(const NdmParameters& p, const SamplerConfig& cfg,
                                        std::uint64_t chain_seed) {
  std::mt19937_64 rng(chain_seed);
  const int n = p.n_sites;

  SpinConfiguration current = random_configuration(n, rng);
  const auto diagonal_log_weight = [&p](const SpinConfiguration& c) {
    // rho(s, s) is real and positive by the purification structure.
    return log_rho(p, DoubledConfiguration(c, c)).real();
  };
  double log_weight = diagonal_log_weight(current);

  DiagonalBatch batch;
  batch.samples.reserve(static_cast<std::size_t>(cfg.n_samples_per_chain));

  const long total_sweeps = cfg.burn_in_sweeps + cfg.n_samples_per_chain;
  for (long sweep = 0; sweep < total_sweeps; ++sweep) {
    for (int step = 0; step < n; ++step) {
      const std::vector<int> sites = propose_flip_sites(n, cfg.max_flips_per_move, rng);
      const SpinConfiguration candidate = flip(current, sites);
      const double log_weight_new = diagonal_log_weight(candidate);
      ++batch.stats.proposed;
      if (metropolis_accept(log_weight, log_weight_new, rng)) {
        current = candidate;
        log_weight = log_weight_new;
        ++batch.stats.accepted;
      }
    }
    if (sweep >= cfg.burn_in_sweeps) {
      batch.samples.push_back({current, log_weight});
    }
  }
  return batch;
}

template <typename Batch, typename RunChain>
Batch run_chains(const NdmParameters& p, const SamplerConfig& cfg, std::uint64_t tag,
                 RunChain&& run_chain) {
  p.validate();
  cfg.validate(p.n_sites);

  std::vector<Batch> partial(static_cast<std::size_t>(cfg.n_chains));
  const int workers = worker_count(cfg.n_chains);
  if (workers <= 1 || cfg.n_chains == 1) {
    for (int c = 0; c < cfg.n_chains; ++c) {
      partial[static_cast<std::size_t>(c)] =
          run_chain(p, cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(c), tag));
    }
  } else {
    std::vector<std::future<Batch>> futures;
    futures.reserve(static_cast<std::size_t>(cfg.n_chains));
    for (int c = 0; c < cfg.n_chains; ++c) {
      futures.push_back(std::async(std::launch::async, [&, c] {
        return run_chain(p, cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(c), tag));
      }));
    }
    for (int c = 0; c < cfg.n_chains; ++c) {
      partial[static_cast<std::size_t>(c)] = futures[static_cast<std::size_t>(c)].get();
    }
  }

  Batch merged;
  merged.samples.reserve(static_cast<std::size_t>(cfg.n_chains) *
                         static_cast<std::size_t>(cfg.n_samples_per_chain));
  for (auto& b : partial) {
    merged.samples.insert(merged.samples.end(), b.samples.begin(), b.samples.end());
    merged.stats.proposed += b.stats.proposed;
    merged.stats.accepted += b.stats.accepted;
  }
  return merged;
}

}  // namespace

JointBatch run_chain_joint(const NdmParameters& p, const SamplerConfig& cfg) {
  return run_chains<JointBatch>(p, cfg, kJointTag, run_single_joint_chain);
}

DiagonalBatch run_chain_diagonal(const NdmParameters& p, const SamplerConfig& cfg) {
  return run_chains<DiagonalBatch>(p, cfg, kDiagonalTag, run_single_diagonal_chain);
}

}  // namespace lvmc
