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

#include "seqrank/models/scoring.hpp"

#include <stdexcept>

namespace seqrank::model {

std::vector<std::vector<std::vector<float>>> offline_scores(const ModelRef<float>& m,
                                                            const std::vector<data::UserHistory>& users,
                                                            const std::vector<std::vector<bool>>& mask,
                                                            std::size_t batch_users, bool packed) {
  if (mask.size() != users.size()) throw std::invalid_argument("offline_scores: mask does not cover every user");
  std::vector<std::vector<std::vector<float>>> out(users.size());
  std::size_t start = 0;
  for (const auto& batch : data::make_batches(users, batch_users)) {
    auto req = TrajectoryRequest::for_batch(batch);
    for (std::size_t u = 0; u < batch.users.size(); ++u) {
      if (mask[start + u].size() != batch.users[u].sessions.size())
        throw std::invalid_argument("offline_scores: mask does not cover every session");
      req.score[u] = mask[start + u];
    }
    num::Tape<float> tape(m.store);
    const Trajectory tr = forward_variant(tape, m, batch, req, {.packed = packed});
    for (std::size_t u = 0; u < batch.users.size(); ++u) {
      auto& dst = out[start + u];
      dst.resize(batch.users[u].sessions.size());
      for (std::size_t t = 0; t < dst.size(); ++t) {
        if (!req.score[u][t]) continue;
        for (auto row : tr.item_rows[u][t]) dst[t].push_back(tape.value(tr.scores)(static_cast<std::size_t>(row), 0));
      }
    }
    start += batch.users.size();
  }
  return out;
}

}  // namespace seqrank::model
