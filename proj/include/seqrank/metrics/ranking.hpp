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
#include <span>
#include <vector>

namespace seqrank::metrics {

/// sum_{i<j} sign(p_i - p_j) * sign(t_i - t_j), the integer numerator of auc_sign.
std::int64_t sign_concordance(std::span<const double> p, std::span<const std::uint8_t> t);

/// Sign-product statistic normalized by all n(n-1)/2 pairs; lies in [-1, 1].
/// Throws std::invalid_argument for n < 2.
double auc_sign(std::span<const double> p, std::span<const std::uint8_t> t);

/// Rank-based ROC AUC (Mann-Whitney with average ranks for ties). Needs both
/// classes present.
double roc_auc(std::span<const double> p, std::span<const std::uint8_t> t);

/// DCG of the labels ranked by descending p (ties by index) over the DCG of
/// all positives ranked first. Needs at least one positive.
double ndcg(std::span<const double> p, std::span<const std::uint8_t> t);

/// True when auc_sign is informative: n >= 2 and both labels present.
bool auc_defined(std::span<const std::uint8_t> t);
bool ndcg_defined(std::span<const std::uint8_t> t);

struct ScoredSession {
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
};

struct SessionAuc {
  double mean = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

/// Mean auc_sign over sessions where it is defined; throws when none is.
SessionAuc session_auc(const std::vector<ScoredSession>& sessions);

}  // namespace seqrank::metrics
