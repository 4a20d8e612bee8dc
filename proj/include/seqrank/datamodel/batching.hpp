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
#include <vector>

#include "seqrank/datamodel/types.hpp"

namespace seqrank::data {

/// A minibatch of whole users. B_{u,t} is users[u].sessions[t]; its items are
/// the rows of the 2-d (items x features) slice.
struct SessionBatch {
  std::vector<UserHistory> users;

  std::size_t user_count() const { return users.size(); }
  std::size_t session_count() const;
  /// T_u for every user, i.e. the sequence lengths handed to the packer.
  std::vector<std::size_t> lengths() const;
  const QuerySession& session(std::size_t u, std::size_t t) const { return users[u].sessions[t]; }
};

/// Consecutive groups of at most batch_users users, input order preserved.
std::vector<SessionBatch> make_batches(const std::vector<UserHistory>& histories, std::size_t batch_users);

}  // namespace seqrank::data
