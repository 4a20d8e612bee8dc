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
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "seqrank/datamodel/batching.hpp"
#include "seqrank/models/config.hpp"
#include "seqrank/numcore/param_store.hpp"
#include "seqrank/numcore/tape.hpp"
#include "seqrank/packing/knapsack.hpp"
#include "seqrank/packing/pairwise.hpp"

namespace seqrank::model {

using num::NodeId;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Fresh parameters for cfg.variant. Embedding tables have vocab + 1 rows;
/// row 0 is the shared out-of-vocabulary row. The target critic starts as a
/// copy of the critic and is not trainable.
template <typename T>
num::ParamStore<T> init_params(const ModelConfig& cfg, std::uint64_t seed);

/// Throws std::invalid_argument when the store lacks (or has extra) blocks
/// for cfg.variant or a block has the wrong shape.
template <typename T>
void check_params(const ModelConfig& cfg, const num::ParamStore<T>& store);

/// Q~ <- Q, a hard copy.
template <typename T>
void sync_target(num::ParamStore<T>& store);

/// Parameters and shapes a forward pass reads from.
template <typename T>
struct ModelRef {
  const ModelConfig& cfg;
  const num::ParamStore<T>& store;
};

/// One item of one session of a user.
struct ItemRef {
  std::size_t session = 0;
  std::size_t item = 0;
};

/// Sum of the four id embeddings of each quad, (n x e).
template <typename T>
NodeId id_keys(num::Tape<T>& tape, const ModelRef<T>& m, std::span<const data::IdQuad> ids);

/// Softmax over [scores..., 0] then the weighted sum of keys. keys may be
/// kNoNode for an empty history, giving zero rows.
template <typename T>
NodeId zero_attention_pool(num::Tape<T>& tape, const ModelRef<T>& m, NodeId keys, NodeId context);

/// Per-item encodings (rows.size() x state_dim) for items of one user.
template <typename T>
NodeId encode_items(num::Tape<T>& tape, const ModelRef<T>& m, const data::UserHistory& user,
                    std::span<const ItemRef> rows);

/// Value-level helpers over an inference tape.
template <typename T>
num::Tensor2<T> zero_attention_pool_values(const ModelRef<T>& m, const num::Tensor2<T>& keys,
                                           const num::Tensor2<T>& context);
template <typename T>
num::Tensor2<T> encode_session(const ModelRef<T>& m, const data::UserHistory& user, std::size_t session);

/// A session step: rows of the encoding matrix to run through the kernel,
/// and which of them (positions into rows, ascending) were purchased.
struct StepInput {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> purchased;
};

/// Where a step's outputs live: rows [offset, offset + count) of node omega,
/// and the state after the step at row state_row of node state.
struct StepOutput {
  NodeId omega = kNoNode;
  std::size_t offset = 0;
  std::size_t count = 0;
  NodeId state = kNoNode;
  std::size_t state_row = 0;
};

/// One kernel application for a group of rows that share an incoming state.
/// Omega = GRU(enc, H); H' = mean of omega over purchased rows, or H when
/// nothing was purchased.
template <typename T>
struct KernelResult {
  num::Tensor2<T> omega;
  num::Tensor2<T> state;
};
template <typename T>
KernelResult<T> rnn_kernel(const ModelRef<T>& m, const num::Tensor2<T>& encodings, const num::Tensor2<T>& state,
                           std::span<const std::uint8_t> labels);

/// Per-user left-to-right scans starting from H0 = 0.
template <typename T>
std::vector<std::vector<StepOutput>> sequential_map(num::Tape<T>& tape, const ModelRef<T>& m, NodeId enc,
                                                    const std::vector<std::vector<StepInput>>& steps);

/// Start indicators of a plan as a packed grid of flags.
std::vector<std::vector<bool>> start_indicators(const pack::PackingPlan& plan);

/// Column-by-column scan over packed rows; the incoming state is replaced by
/// H0 wherever starts[row][col] is set. Empty cells are skipped.
template <typename T>
pack::PackedGrid<StepOutput> boundary_aware_sequence_map(num::Tape<T>& tape, const ModelRef<T>& m, NodeId enc,
                                                         const pack::PackedGrid<StepInput>& steps,
                                                         const std::vector<std::vector<bool>>& starts);

/// Scalar heads on single rows (1 x d).
template <typename T>
T actor_logit(const ModelRef<T>& m, const num::Tensor2<T>& omega_a, const num::Tensor2<T>& omega_b);
template <typename T>
T critic_q(const ModelRef<T>& m, const num::Tensor2<T>& omega_a, const num::Tensor2<T>& omega_b, bool use_target);
/// Actor scores P(omega) for every row.
template <typename T>
num::Tensor2<T> actor_scores(const ModelRef<T>& m, const num::Tensor2<T>& omega);

/// What to compute for each (u, t) of a batch. A pair feeds the training
/// heads; score requests every item of the session. Sessions with neither
/// still advance the state through their purchased items.
struct TrajectoryRequest {
  std::vector<std::vector<std::optional<pack::PairSample>>> pairs;
  std::vector<std::vector<bool>> score;

  static TrajectoryRequest for_batch(const data::SessionBatch& batch);
};

struct ForwardOptions {
  bool packed = true;
};

/// Graph handles for one batch forward pass. Pair rows are listed in
/// canonical (u, t) order.
struct Trajectory {
  NodeId omega = kNoNode;   // every computed item row
  NodeId scores = kNoNode;  // actor score per omega row, only when something was scored
  NodeId eta = kNoNode;     // (pairs x 1)
  NodeId q = kNoNode;       // live critic, S3DDPG only
  NodeId q_target = kNoNode;
  std::vector<pack::Step> pair_steps;
  std::vector<double> lambda;          // lambda_a / (lambda_a + lambda_b) per pair
  std::vector<std::size_t> user_pairs;  // pairs per user, same order
  /// Row of omega for (u, t, i), or -1 when the item was not computed.
  std::vector<std::vector<std::vector<std::int64_t>>> item_rows;
  std::vector<std::vector<StepOutput>> steps;  // empty for non-recurrent variants
  std::size_t packed_rows = 0;
};

template <typename T>
Trajectory forward_variant(num::Tape<T>& tape, const ModelRef<T>& m, const data::SessionBatch& batch,
                           const TrajectoryRequest& request, const ForwardOptions& options = {});

}  // namespace seqrank::model
