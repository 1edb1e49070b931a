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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "lvmc/sampler.hpp"

using namespace lvmc;

namespace {

// Total-variation distance between an empirical histogram and a target pmf.
template <typename Batch, typename IndexFn>
double tv_distance(const Batch& batch, const std::vector<double>& target, IndexFn&& index_of) {
  std::vector<double> histogram(target.size(), 0.0);
  for (const auto& s : batch.samples) {
    histogram[index_of(s)] += 1.0 / static_cast<double>(batch.samples.size());
  }
  double tv = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) tv += std::abs(histogram[i] - target[i]);
  return 0.5 * tv;
}

}  // namespace

TEST_CASE("propose_flip_sites draws a uniform subset of the right size") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sites = propose_flip_sites(5, 3, rng);
    CHECK(sites.size() >= 1);
    CHECK(sites.size() <= 3);
    std::set<int> unique(sites.begin(), sites.end());
    CHECK(unique.size() == sites.size());
    for (const int s : sites) {
      CHECK(s >= 0);
      CHECK(s < 5);
    }
  }
  // max_flips = 1: exactly one site, roughly uniform over sites.
  std::map<int, int> counts;
  for (int trial = 0; trial < 6000; ++trial) {
    const auto sites = propose_flip_sites(3, 1, rng);
    REQUIRE(sites.size() == 1);
    counts[sites[0]]++;
  }
  for (const auto& [site, count] : counts) {
    CHECK(std::abs(count - 2000) < 200);  // ~5 sigma
  }
}

TEST_CASE("metropolis rule") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    CHECK(metropolis_accept(-1.5, -1.5, rng));  // equal weights always accept
    CHECK_FALSE(metropolis_accept(0.0, -std::numeric_limits<double>::infinity(), rng));
  }
  // log ratio ln(1/2): acceptance 0.5 +- 0.02 over 1e4 trials.
  int accepted = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    if (metropolis_accept(0.0, std::log(0.5), rng)) ++accepted;
  }
  CHECK(std::abs(accepted / static_cast<double>(trials) - 0.5) < 0.02);
  CHECK_THROWS_AS(metropolis_accept(std::nan(""), 0.0, rng), std::invalid_argument);
}

TEST_CASE("joint chain samples the uniform state uniformly") {
  const NdmParameters p = NdmParameters::zeros(2, 2, 2);
  SamplerConfig cfg;
  cfg.n_samples_per_chain = 40000;
  cfg.burn_in_sweeps = 100;
  cfg.max_flips_per_move = 2;
  cfg.seed = 3;
  const JointBatch batch = run_chain_joint(p, cfg);
  CHECK(batch.samples.size() == 40000);
  const std::vector<double> target(16, 1.0 / 16.0);
  const double tv = tv_distance(batch, target, [](const JointSample& s) {
    return doubled_to_index(s.config);
  });
  CHECK(tv < 0.02);
  CHECK(batch.stats.acceptance_rate() == doctest::Approx(1.0));  // uniform target
}

TEST_CASE("joint chain matches the enumerated |rho|^2 distribution") {
  const NdmParameters p = NdmParameters::random(2, 1.0, 1.0, 0.4, 11);
  std::vector<double> target(16);
  double norm = 0.0;
  for (std::uint64_t i = 0; i < 16; ++i) {
    target[i] = std::exp(2.0 * log_rho(p, index_to_doubled(i, 2)).real());
    norm += target[i];
  }
  for (auto& t : target) t /= norm;

  SamplerConfig cfg;
  cfg.n_chains = 2;
  cfg.n_samples_per_chain = 50000;
  cfg.burn_in_sweeps = 200;
  cfg.max_flips_per_move = 2;
  cfg.seed = 13;
  const JointBatch batch = run_chain_joint(p, cfg);
  const double tv = tv_distance(batch, target, [](const JointSample& s) {
    return doubled_to_index(s.config);
  });
  CHECK(tv < 0.02);
  CHECK(batch.stats.accepted <= batch.stats.proposed);
  CHECK(batch.stats.acceptance_rate() > 0.0);
  CHECK(batch.stats.acceptance_rate() <= 1.0);

  // Sample log-weights are the actual target weights.
  for (int i = 0; i < 20; ++i) {
    const auto& s = batch.samples[static_cast<std::size_t>(i) * 997];
    CHECK(s.log_weight == doctest::Approx(2.0 * log_rho(p, s.config).real()));
  }
}

TEST_CASE("diagonal chain samples rho(s, s)") {
  const NdmParameters uniform = NdmParameters::zeros(2, 2, 2);
  SamplerConfig cfg;
  cfg.n_samples_per_chain = 20000;
  cfg.burn_in_sweeps = 50;
  // With single flips and acceptance 1 the sweep snapshots would be locked
  // to one parity sector; two flips keep the sweep parity random.
  cfg.max_flips_per_move = 2;
  cfg.seed = 17;
  const DiagonalBatch flat = run_chain_diagonal(uniform, cfg);
  const std::vector<double> flat_target(4, 0.25);
  CHECK(tv_distance(flat, flat_target, [](const DiagonalSample& s) {
          return config_to_index(s.config);
        }) < 0.02);

  const NdmParameters p = NdmParameters::random(2, 1.0, 1.0, 0.5, 19);
  std::vector<double> target(4);
  double norm = 0.0;
  for (std::uint64_t i = 0; i < 4; ++i) {
    const SpinConfiguration c = index_to_config(i, 2);
    target[i] = std::exp(log_rho(p, {c, c}).real());
    norm += target[i];
  }
  for (auto& t : target) t /= norm;
  cfg.n_samples_per_chain = 50000;
  cfg.seed = 23;
  const DiagonalBatch batch = run_chain_diagonal(p, cfg);
  CHECK(tv_distance(batch, target, [](const DiagonalSample& s) {
          return config_to_index(s.config);
        }) < 0.02);
  for (const auto& s : batch.samples) {
    CHECK(std::isfinite(s.log_weight));  // diagonal weights strictly positive
  }
}

TEST_CASE("fixed seeds give identical streams; chains are distinct substreams") {
  const NdmParameters p = NdmParameters::random(3, 1.0, 1.0, 0.3, 29);
  SamplerConfig cfg;
  cfg.n_chains = 2;
  cfg.n_samples_per_chain = 200;
  cfg.burn_in_sweeps = 10;
  cfg.seed = 31;

  const JointBatch a = run_chain_joint(p, cfg);
  const JointBatch b = run_chain_joint(p, cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].config == b.samples[i].config);
    CHECK(a.samples[i].log_weight == b.samples[i].log_weight);
  }
  CHECK(a.stats.accepted == b.stats.accepted);

  // The two chains of the same run must not be identical streams.
  bool any_difference = false;
  for (std::size_t i = 0; i < 200; ++i) {
    if (!(a.samples[i].config == a.samples[i + 200].config)) any_difference = true;
  }
  CHECK(any_difference);

  cfg.seed = 32;
  const JointBatch c = run_chain_joint(p, cfg);
  bool seed_changes_stream = false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (!(a.samples[i].config == c.samples[i].config)) seed_changes_stream = true;
  }
  CHECK(seed_changes_stream);
}

TEST_CASE("sampler config validation") {
  SamplerConfig cfg;
  cfg.max_flips_per_move = 4;
  CHECK_THROWS_AS(cfg.validate(3), std::invalid_argument);
  cfg.max_flips_per_move = 0;
  CHECK_THROWS_AS(cfg.validate(3), std::invalid_argument);
  cfg.max_flips_per_move = 1;
  cfg.n_samples_per_chain = 0;
  CHECK_THROWS_AS(cfg.validate(3), std::invalid_argument);
}
