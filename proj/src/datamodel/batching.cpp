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

#include "seqrank/datamodel/batching.hpp"

#include <stdexcept>

namespace seqrank::data {

std::size_t SessionBatch::session_count() const { return total_sessions(users); }

std::vector<std::size_t> SessionBatch::lengths() const {
  std::vector<std::size_t> out;
  out.reserve(users.size());
  for (const auto& u : users) out.push_back(u.sessions.size());
  return out;
}

std::vector<SessionBatch> make_batches(const std::vector<UserHistory>& histories, std::size_t batch_users) {
  if (batch_users == 0) throw std::invalid_argument("make_batches: batch_users must be >= 1");
  std::vector<SessionBatch> out;
  for (std::size_t start = 0; start < histories.size(); start += batch_users) {
    SessionBatch b;
    const std::size_t end = std::min(histories.size(), start + batch_users);
    b.users.assign(histories.begin() + static_cast<std::ptrdiff_t>(start),
                   histories.begin() + static_cast<std::ptrdiff_t>(end));
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace seqrank::data
