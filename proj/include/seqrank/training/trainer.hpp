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
#include <iosfwd>
#include <string>
#include <vector>

#include "seqrank/datamodel/kv_config.hpp"
#include "seqrank/datamodel/types.hpp"
#include "seqrank/losses/losses.hpp"
#include "seqrank/metrics/evaluate.hpp"
#include "seqrank/models/checkpoint.hpp"
#include "seqrank/models/config.hpp"
#include "seqrank/numcore/optimizer.hpp"
#include "seqrank/numcore/param_store.hpp"

namespace seqrank::train {

struct TrainConfig {
  loss::ObjectiveConfig objective;
  num::OptimizerKind optimizer = num::OptimizerKind::kSgd;
  double learning_rate = 0.05;
  std::size_t batch_users = 32;
  std::size_t patience = 3;
  std::size_t max_epochs = 30;
  bool packed = true;
  std::uint64_t data_seed = 1;    // user shuffling
  std::uint64_t sample_seed = 2;  // pair draws
  std::uint64_t init_seed = 3;    // parameter init
  std::size_t target_sync_every = 1;  // optimizer steps between target copies
  bool warm_start = false;           // S3DDPG in the ladder starts from the trained RNN
  int eval_day = -1;
  int warmup_days = 29;

  void validate() const;
  /// Sets the three streams from one seed, each on its own offset.
  void reseed(std::uint64_t seed);
  metrics::EvalOptions eval_options() const;
  static TrainConfig from_kv(const data::KvConfig& cfg, std::string_view prefix = "train.");
  void to_kv(data::KvConfig& cfg, std::string_view prefix = "train.") const;
};

struct EpochStats {
  double loss = 0.0;  // mean objective over batches, weighted by pairs
  std::size_t pairs = 0;
  std::size_t batches = 0;
  std::size_t packed_rows = 0;
};

struct EpochLog {
  std::size_t epoch = 0;
  EpochStats stats;
  metrics::MetricsReport validation;
  bool improved = false;

  /// One line of space-separated key=value pairs.
  std::string to_line() const;
};

/// The mutable part of a run.
struct RunState {
  num::ParamStore<float> params;
  num::OptimizerState<float> optimizer;
  num::Rng data_rng{1};
  num::Rng sample_rng{2};
  std::size_t steps = 0;
};

RunState start_run(const model::ModelConfig& cfg, const TrainConfig& tc);

/// One pass over the training users: shuffle, batch, draw a pair per
/// session, forward, objective, step. Sessions that are not
/// training-eligible are skipped. A non-finite loss or gradient throws
/// std::runtime_error naming the epoch and batch.
EpochStats train_epoch(const model::ModelConfig& cfg, RunState& run, const std::vector<data::UserHistory>& train,
                       const TrainConfig& tc, std::size_t epoch = 1);

struct TrainResult {
  model::ModelConfig model;
  num::ParamStore<float> best;
  double initial_auc = 0.0;
  double best_auc = 0.0;
  std::size_t best_epoch = 0;
  metrics::MetricsReport best_report;
  std::vector<EpochLog> epochs;

  model::Checkpoint checkpoint(const TrainConfig& tc) const;
};

/// Trains until validation Session AUC has not improved for `patience`
/// epochs (patience 0 runs one epoch) or max_epochs is reached, and returns
/// the best epoch's parameters. `init`, when given, replaces the random
/// initialization (blocks are matched by name; the target is re-synced).
/// Epoch lines go to `log` when it is not null.
TrainResult train(const model::ModelConfig& cfg, const std::vector<data::UserHistory>& train,
                  const std::vector<data::UserHistory>& validation, const TrainConfig& tc,
                  std::ostream* log = nullptr, const num::ParamStore<float>* init = nullptr);

/// Copies every block of src whose name and shape match a block of dst.
/// Returns how many were copied.
std::size_t copy_matching_blocks(num::ParamStore<float>& dst, const num::ParamStore<float>& src);

/// Training and validation views of one log: training uses sessions before
/// the evaluation day, validation warms up on them and scores that day.
struct DataSplit {
  std::vector<data::UserHistory> train;
  std::vector<data::UserHistory> validation;
  int eval_day = 0;
};
DataSplit split_by_day(const std::vector<data::UserHistory>& log, int eval_day = -1);

}  // namespace seqrank::train
