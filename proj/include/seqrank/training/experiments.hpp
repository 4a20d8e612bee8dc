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

#include <iosfwd>
#include <string>
#include <vector>

#include "seqrank/training/trainer.hpp"

namespace seqrank::train {

struct SweepRow {
  double mu = 0.0;
  double session_auc = 0.0;
  double ndcg = 0.0;
  std::size_t epochs = 0;
};

/// Trains S3DDPG once per mu with shared seeds. Every value is validated
/// before any training starts.
std::vector<SweepRow> sweep_mu(const std::vector<double>& values, const model::ModelConfig& cfg,
                               const DataSplit& data, const TrainConfig& tc, std::ostream* log = nullptr);
std::string sweep_table(const std::vector<SweepRow>& rows);

struct LadderRow {
  model::Variant variant = model::Variant::kDnn;
  double session_auc = 0.0;
  double ndcg = 0.0;
  double initial_auc = 0.0;
  std::size_t epochs = 0;
  bool warm_started = false;
};

/// Trains DNN, DIN-S, RNN and S3DDPG on the same data and seeds. With
/// tc.warm_start, S3DDPG starts from the trained RNN's parameters.
std::vector<LadderRow> ladder(const model::ModelConfig& base, const DataSplit& data, const TrainConfig& tc,
                              std::ostream* log = nullptr);
std::string ladder_table(const std::vector<LadderRow>& rows);

struct EpochComparison {
  double max_param_diff = 0.0;
  std::string worst_block;
  EpochStats packed;
  EpochStats unpacked;
};

/// One epoch from the same initial state and streams, once through the
/// packed path and once through the per-user path.
EpochComparison compare_packed_epoch(const model::ModelConfig& cfg, const std::vector<data::UserHistory>& train,
                                     const TrainConfig& tc);

}  // namespace seqrank::train
