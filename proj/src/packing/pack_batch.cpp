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

#include "seqrank/packing/pack_batch.hpp"

#include <algorithm>
#include <stdexcept>

namespace seqrank::pack {

PackedBatch pack_batch(const data::SessionBatch& batch, const PackingPlan& plan) {
  const auto lengths = batch.lengths();
  if (!std::equal(lengths.begin(), lengths.end(), plan.lengths().begin(), plan.lengths().end()))
    throw std::invalid_argument("pack_batch: plan was built for different sequence lengths");
  std::vector<std::vector<data::QuerySession>> per_user;
  per_user.reserve(batch.users.size());
  for (const auto& u : batch.users) per_user.push_back(u.sessions);
  PackedBatch out;
  out.sessions = pack_values(per_user, plan);
  out.plan = &plan;
  return out;
}

PackingStats log_packing_stats(const std::vector<data::UserHistory>& histories, std::size_t batch_users) {
  std::vector<data::UserHistory> users;
  for (const auto& h : histories)
    if (!h.sessions.empty()) users.push_back(h);
  PackingStats total;
  for (const auto& batch : data::make_batches(users, batch_users)) {
    const auto lengths = batch.lengths();
    total += packing_stats(greedy_knapsack(lengths), lengths);
  }
  return total;
}

}  // namespace seqrank::pack
