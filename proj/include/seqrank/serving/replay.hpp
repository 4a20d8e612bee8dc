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
#include <map>
#include <string>
#include <vector>

#include "seqrank/datamodel/types.hpp"
#include "seqrank/models/config.hpp"
#include "seqrank/numcore/param_store.hpp"
#include "seqrank/numcore/tensor.hpp"

namespace seqrank::serve {

struct StateUpdate {
  std::uint64_t user_id = 0;
  std::size_t session = 0;  // index into the user's replayed sessions
  std::int64_t timestamp = 0;
  double delta_norm = 0.0;  // Euclidean norm of H_after - H_before
};

/// Per-user hidden states of a served model plus the update log.
struct ServingState {
  std::size_t state_dim = 0;
  std::map<std::uint64_t, num::Tensor2<float>> users;
  std::map<std::uint64_t, std::int64_t> last_timestamp;
  std::vector<StateUpdate> log;

  /// H for a user, or zeros for a user never seen.
  num::Tensor2<float> state_of(std::uint64_t user_id) const;

  /// Text file: a header line, then "user_id last_timestamp v_1 .. v_d" per user.
  void save(const std::string& path) const;
  static ServingState load(const std::string& path);
};

struct ReplaySession {
  std::uint64_t user_id = 0;
  std::size_t session = 0;
  std::vector<float> scores;
};

struct AuditResult {
  bool ran = false;
  double max_abs_diff = 0.0;
  std::size_t scores_compared = 0;
};

struct ReplayResult {
  std::vector<ReplaySession> sessions;
  AuditResult audit;
};

/// Replays each user's sessions in timestamp order, one user at a time and
/// never packed: score all items from the current H, then move H to the
/// mean output of the purchased items (unchanged when nothing was bought).
/// With audit, the offline batch forward over the same histories is the
/// oracle; a score differing by more than tolerance throws
/// std::runtime_error naming the first offending (user, session). Auditing
/// needs every replayed user to start from H0.
ReplayResult serve_replay(const model::ModelConfig& cfg, const num::ParamStore<float>& params,
                          const std::vector<data::UserHistory>& histories, ServingState& state, bool audit,
                          double tolerance = 1e-6);

}  // namespace seqrank::serve
