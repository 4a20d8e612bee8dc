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
#include <string>
#include <vector>

#include "seqrank/datamodel/types.hpp"
#include "seqrank/models/network.hpp"

namespace seqrank::metrics {

struct GroupMetrics {
  std::string name;
  std::size_t users = 0;
  std::size_t sessions = 0;
  double session_auc = 0.0;
  double ndcg = 0.0;
};

struct MetricsReport {
  double session_auc = 0.0;
  double roc_auc = 0.0;  // mean rank-based ROC AUC over the same sessions
  double ndcg = 0.0;
  std::size_t users = 0;
  std::size_t sessions = 0;        // final-day sessions scored
  std::size_t auc_sessions = 0;
  std::size_t auc_skipped = 0;     // fewer than two items or constant labels
  std::size_t ndcg_sessions = 0;
  std::size_t ndcg_skipped = 0;    // no purchase
  std::vector<GroupMetrics> groups;

  /// Aligned "key value" lines.
  std::string to_text(const std::string& prefix = "") const;
};

struct EvalOptions {
  int eval_day = -1;        // -1: the last day present
  int warmup_days = 29;     // days before eval_day used to evolve user state
  std::size_t batch_users = 64;
  bool packed = true;
  std::size_t past_session_threshold = 5;
};

/// Scores every final-day session with all its items. Recurrent variants
/// first evolve state through the user's sessions in the warm-up window
/// using their true labels; only final-day labels enter the metrics.
/// Users are grouped by prior-session count and by whether a final-day query
/// category is new to them (absent from their long-term ids and earlier
/// queries).
MetricsReport evaluate_protocol(const model::ModelRef<float>& m, const std::vector<data::UserHistory>& histories,
                                const EvalOptions& options = {});

}  // namespace seqrank::metrics
