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

#include <cstdint>
#include <optional>
#include <vector>

#include "seqrank/datamodel/batching.hpp"
#include "seqrank/datamodel/generator.hpp"
#include "seqrank/models/config.hpp"
#include "seqrank/numcore/rng.hpp"
#include "seqrank/packing/pairwise.hpp"

namespace seqrank::testing {

/// A few users with short sessions over a tiny catalog.
inline data::GeneratorConfig tiny_generator(std::uint64_t seed, std::size_t users = 3, std::size_t sessions_max = 3) {
  data::GeneratorConfig g;
  g.users = users;
  g.sessions_mean = static_cast<double>(sessions_max + 1) / 2.0;
  g.sessions_max = sessions_max;
  g.items_mean = 3;
  g.items_max = 5;
  g.dense_width = 3;
  g.query_dense_width = 2;
  g.catalog_items = 40;
  g.categories = 4;
  g.shops = 6;
  g.brands = 6;
  g.queries_per_category = 2;
  g.longterm_max = 4;
  g.eligible_fraction = 1.0;
  g.seed = seed;
  return g;
}

inline model::ModelConfig tiny_model(model::Variant v, const data::GeneratorConfig& g, std::size_t d = 16) {
  model::ModelConfig m;
  m.variant = v;
  m.embed_dim = 4;
  m.state_dim = d;
  m.encoder_hidden = {8};
  m.scorer_dims = {16, 8, 1};
  m.actor_dims = {d, 8, 1};
  m.critic_dims = {2 * d, 8, 1};
  m.embed_init = 0.3;
  m.adopt_vocab(g);
  // Leave a few ids outside the vocabulary so the OOV row is exercised.
  m.item_vocab = g.catalog_items - 5;
  return m;
}

inline data::SessionBatch batch_of(const std::vector<data::UserHistory>& users) {
  data::SessionBatch b;
  b.users = users;
  return b;
}

/// One pairwise draw per session, for sessions with at least two items.
inline std::vector<std::vector<std::optional<pack::PairSample>>> sample_pairs(const data::SessionBatch& batch,
                                                                               num::Rng& rng) {
  std::vector<std::vector<std::optional<pack::PairSample>>> out;
  for (const auto& u : batch.users) {
    out.emplace_back();
    for (const auto& s : u.sessions) {
      const auto labels = s.labels();
      if (labels.size() >= 2 && s.has_purchase())
        out.back().push_back(pack::pairwise_sample(labels, rng));
      else
        out.back().push_back(std::nullopt);
    }
  }
  return out;
}

}  // namespace seqrank::testing
