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

#include "seqrank/numcore/param_store.hpp"
#include "seqrank/numcore/rng.hpp"
#include "seqrank/numcore/tape.hpp"
#include "seqrank/numcore/tensor.hpp"

namespace seqrank::num {

/// Weight matrix (fan_in x fan_out) drawn uniform in +-1/sqrt(fan_in).
template <typename T>
Tensor2<T> uniform_init(std::size_t fan_in, std::size_t fan_out, Rng& rng);

/// Adds blocks `<prefix>.l<k>.w` (dims[k] x dims[k+1]) and `<prefix>.l<k>.b`
/// (1 x dims[k+1]) for every consecutive pair in dims. Biases start at 0.
template <typename T>
void add_mlp_params(ParamStore<T>& store, const std::string& prefix,
                    const std::vector<std::size_t>& dims, Rng& rng, bool trainable = true);

/// Number of layers registered under prefix.
template <typename T>
std::size_t mlp_depth(const ParamStore<T>& store, const std::string& prefix);

/// Affine then activation on every hidden layer, final layer affine only.
/// Throws std::invalid_argument naming the offending layer on a fan-in
/// mismatch.
template <typename T>
NodeId mlp(Tape<T>& tape, NodeId input, const ParamStore<T>& store, const std::string& prefix,
           Activation hidden);

template <typename T>
Tensor2<T> mlp_forward(const Tensor2<T>& input, const ParamStore<T>& store,
                       const std::string& prefix, Activation hidden);

/// Gated recurrent unit: update gate z, reset gate r, tanh candidate n,
///   h' = (1 - z) * n + z * h,   n = tanh(x Wn + (r * h) Un + bn).
/// Blocks: <prefix>.{wz,wr,wn} (in x d), .{uz,ur,un} (d x d), .{bz,br,bn}.
template <typename T>
void add_gru_params(ParamStore<T>& store, const std::string& prefix, std::size_t input_width,
                    std::size_t state_width, Rng& rng);

/// Row-wise GRU step: input (n x in), state (n x d) -> new state (n x d).
template <typename T>
NodeId gru(Tape<T>& tape, NodeId input, NodeId state, const ParamStore<T>& store,
           const std::string& prefix);

template <typename T>
Tensor2<T> gru_cell(const Tensor2<T>& input, const Tensor2<T>& state, const ParamStore<T>& store,
                    const std::string& prefix);

}  // namespace seqrank::num
