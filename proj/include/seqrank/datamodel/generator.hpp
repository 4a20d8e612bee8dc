/* Copyright 2026 The SeqRank Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seqrank/datamodel/kv_config.hpp"
#include "seqrank/datamodel/types.hpp"
#include "seqrank/numcore/rng.hpp"

namespace seqrank::data {

/// Synthetic multi-session search log. Every count distribution is a
/// discrete power law k^-s truncated to [min, max] whose exponent is solved so
/// the expected value equals the configured mean; that reproduces the long
/// right tail of real session logs (mean 13.42 vs max 113 sessions per user).
struct GeneratorConfig {
  std::size_t users = 200;
  double sessions_mean = 6.0;
  std::size_t sessions_max = 40;
  double items_mean = 8.0;
  std::size_t items_min = 2;
  std::size_t items_max = 40;
  std::size_t dense_width = 16;
  std::size_t query_dense_width = 4;
  std::size_t latent_dim = 8;
  double drift_rate = 0.3;        // per-session preference step size
  double relevance_noise = 0.5;   // std-dev of per-impression utility noise
  double affinity_scale = 2.0;    // weight of user-item latent affinity in utility
  double category_focus = 0.7;    // share of session items drawn from the query category
  std::size_t catalog_items = 1000;
  std::size_t categories = 20;
  std::size_t shops = 50;
  std::size_t brands = 50;
  std::size_t queries_per_category = 5;
  std::size_t longterm_max = 50;
  std::size_t days = 30;
  double eligible_fraction = 1.0;  // share of sessions forced to carry a purchase
  std::uint64_t seed = 1;

  void validate() const;
  static GeneratorConfig from_kv(const KvConfig& cfg, std::string_view prefix = "gen.");
  void to_kv(KvConfig& cfg, std::string_view prefix = "gen.") const;
  std::size_t query_vocab() const { return categories * queries_per_category; }
};

/// Truncated discrete power law on [lo, hi] with a prescribed mean.
class CountDistribution {
 public:
  CountDistribution(std::size_t lo, std::size_t hi, double mean);
  std::size_t sample(num::Rng& rng) const;
  double expected() const { return expected_; }
  double exponent() const { return exponent_; }

 private:
  std::size_t lo_;
  std::vector<double> cdf_;
  double exponent_ = 0.0;
  double expected_ = 0.0;
};

/// Deterministic in config (including seed). Users are independent streams
/// seeded from (seed, user index).
std::vector<UserHistory> generate_log(const GeneratorConfig& config);

}  // namespace seqrank::data
