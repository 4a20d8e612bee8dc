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

#include "seqrank/datamodel/batching.hpp"
#include "seqrank/packing/knapsack.hpp"

namespace seqrank::pack {

/// B' over the packed grid. Padding cells hold no session (a zero slice) and
/// are masked; labels travel inside the sessions they belong to.
struct PackedBatch {
  PackedGrid<data::QuerySession> sessions;
  const PackingPlan* plan = nullptr;

  bool masked(std::size_t row, std::size_t col) const { return !sessions.at(row, col).has_value(); }
  std::size_t occupied() const { return sessions.filled(); }
};

/// The plan must have been built from batch.lengths(); it is referenced, not copied.
PackedBatch pack_batch(const data::SessionBatch& batch, const PackingPlan& plan);

/// Knapsack statistics summed over the batches make_batches forms from
/// histories (users without sessions are left out).
PackingStats log_packing_stats(const std::vector<data::UserHistory>& histories, std::size_t batch_users);

}  // namespace seqrank::pack
