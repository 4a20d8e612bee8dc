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
#include <string_view>
#include <vector>

#include "seqrank/datamodel/generator.hpp"
#include "seqrank/datamodel/kv_config.hpp"
#include "seqrank/numcore/tape.hpp"

namespace seqrank::model {

enum class Variant { kDnn, kDinS, kRnn, kS3ddpg };

Variant parse_variant(std::string_view name);
std::string_view variant_name(Variant v);
bool is_recurrent(Variant v);
bool uses_attention(Variant v);
bool has_critic(Variant v);

/// Network shapes. MLP dims list every width from input to output; the
/// input widths of scorer, actor and critic are pinned by embed_dim and
/// state_dim and checked by validate().
struct ModelConfig {
  Variant variant = Variant::kRnn;
  std::size_t embed_dim = 8;
  std::size_t state_dim = 16;
  std::size_t dense_width = 16;
  std::size_t query_dense_width = 4;
  std::size_t item_vocab = 1000;
  std::size_t category_vocab = 20;
  std::size_t shop_vocab = 50;
  std::size_t brand_vocab = 50;
  std::size_t query_vocab = 100;
  std::vector<std::size_t> encoder_hidden = {32};
  std::vector<std::size_t> scorer_dims = {32, 16, 1};
  std::vector<std::size_t> actor_dims = {16, 32, 16, 1};
  std::vector<std::size_t> critic_dims = {32, 64, 32, 1};
  num::Activation activation = num::Activation::kTanh;
  double embed_init = 0.1;

  void validate() const;
  /// Width of the per-item encoder input: 4 id embeddings, dense features,
  /// query embedding, query features and the pooled long-term vector.
  std::size_t encoder_input_width() const {
    return 4 * embed_dim + dense_width + embed_dim + query_dense_width + embed_dim;
  }
  std::vector<std::size_t> encoder_dims() const;

  static ModelConfig from_kv(const data::KvConfig& cfg, std::string_view prefix = "model.");
  void to_kv(data::KvConfig& cfg, std::string_view prefix = "model.") const;
  /// Vocabulary and feature widths matching a generator config.
  void adopt_vocab(const data::GeneratorConfig& gen);
};

}  // namespace seqrank::model
