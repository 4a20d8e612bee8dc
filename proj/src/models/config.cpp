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

#include "seqrank/models/config.hpp"

#include <stdexcept>

namespace seqrank::model {

Variant parse_variant(std::string_view name) {
  if (name == "dnn" || name == "DNN") return Variant::kDnn;
  if (name == "din-s" || name == "DIN-S" || name == "dins") return Variant::kDinS;
  if (name == "rnn" || name == "RNN") return Variant::kRnn;
  if (name == "s3ddpg" || name == "S3DDPG") return Variant::kS3ddpg;
  throw std::invalid_argument("unknown model variant '" + std::string(name) + "' (dnn, din-s, rnn, s3ddpg)");
}

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kDnn: return "DNN";
    case Variant::kDinS: return "DIN-S";
    case Variant::kRnn: return "RNN";
    case Variant::kS3ddpg: return "S3DDPG";
  }
  return "?";
}

bool is_recurrent(Variant v) { return v == Variant::kRnn || v == Variant::kS3ddpg; }
bool uses_attention(Variant v) { return v != Variant::kDnn; }
bool has_critic(Variant v) { return v == Variant::kS3ddpg; }

std::vector<std::size_t> ModelConfig::encoder_dims() const {
  std::vector<std::size_t> dims{encoder_input_width()};
  dims.insert(dims.end(), encoder_hidden.begin(), encoder_hidden.end());
  dims.push_back(state_dim);
  return dims;
}

void ModelConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("ModelConfig: " + m); };
  if (embed_dim == 0 || state_dim == 0) fail("embed_dim and state_dim must be >= 1");
  auto check_mlp = [&](const char* name, const std::vector<std::size_t>& dims, std::size_t in) {
    if (dims.size() < 2) fail(std::string(name) + " needs at least two widths");
    if (dims.front() != in)
      fail(std::string(name) + " input width " + std::to_string(dims.front()) + " must be " + std::to_string(in));
    if (dims.back() != 1) fail(std::string(name) + " must end in width 1");
    for (auto w : dims)
      if (w == 0) fail(std::string(name) + " has a zero width");
  };
  check_mlp("scorer_dims", scorer_dims, 4 * embed_dim);
  check_mlp("actor_dims", actor_dims, state_dim);
  check_mlp("critic_dims", critic_dims, 2 * state_dim);
  for (auto w : encoder_hidden)
    if (w == 0) fail("encoder_hidden has a zero width");
  if (!(embed_init > 0.0)) fail("embed_init must be > 0");
}

ModelConfig ModelConfig::from_kv(const data::KvConfig& cfg, std::string_view prefix) {
  const std::string p(prefix);
  cfg.require_known(p, {"variant", "embed_dim", "state_dim", "dense_width", "query_dense_width", "item_vocab",
                        "category_vocab", "shop_vocab", "brand_vocab", "query_vocab", "encoder_hidden", "scorer_dims",
                        "actor_dims", "critic_dims", "activation", "embed_init"});
  ModelConfig m;
  if (cfg.has(p + "variant")) m.variant = parse_variant(cfg.get_string(p + "variant", ""));
  m.embed_dim = cfg.get_size(p + "embed_dim", m.embed_dim);
  m.state_dim = cfg.get_size(p + "state_dim", m.state_dim);
  m.dense_width = cfg.get_size(p + "dense_width", m.dense_width);
  m.query_dense_width = cfg.get_size(p + "query_dense_width", m.query_dense_width);
  m.item_vocab = cfg.get_size(p + "item_vocab", m.item_vocab);
  m.category_vocab = cfg.get_size(p + "category_vocab", m.category_vocab);
  m.shop_vocab = cfg.get_size(p + "shop_vocab", m.shop_vocab);
  m.brand_vocab = cfg.get_size(p + "brand_vocab", m.brand_vocab);
  m.query_vocab = cfg.get_size(p + "query_vocab", m.query_vocab);
  // Head widths default to the ones implied by embed_dim / state_dim.
  m.scorer_dims = {4 * m.embed_dim, 16, 1};
  m.actor_dims = {m.state_dim, 32, 16, 1};
  m.critic_dims = {2 * m.state_dim, 64, 32, 1};
  m.encoder_hidden = cfg.get_sizes(p + "encoder_hidden", m.encoder_hidden);
  m.scorer_dims = cfg.get_sizes(p + "scorer_dims", m.scorer_dims);
  m.actor_dims = cfg.get_sizes(p + "actor_dims", m.actor_dims);
  m.critic_dims = cfg.get_sizes(p + "critic_dims", m.critic_dims);
  if (cfg.has(p + "activation")) m.activation = num::parse_activation(cfg.get_string(p + "activation", ""));
  m.embed_init = cfg.get_double(p + "embed_init", m.embed_init);
  m.validate();
  return m;
}

void ModelConfig::to_kv(data::KvConfig& cfg, std::string_view prefix) const {
  const std::string p(prefix);
  cfg.set(p + "variant", std::string(variant_name(variant)));
  cfg.set(p + "embed_dim", std::to_string(embed_dim));
  cfg.set(p + "state_dim", std::to_string(state_dim));
  cfg.set(p + "dense_width", std::to_string(dense_width));
  cfg.set(p + "query_dense_width", std::to_string(query_dense_width));
  cfg.set(p + "item_vocab", std::to_string(item_vocab));
  cfg.set(p + "category_vocab", std::to_string(category_vocab));
  cfg.set(p + "shop_vocab", std::to_string(shop_vocab));
  cfg.set(p + "brand_vocab", std::to_string(brand_vocab));
  cfg.set(p + "query_vocab", std::to_string(query_vocab));
  cfg.set(p + "encoder_hidden", data::format_size_list(encoder_hidden));
  cfg.set(p + "scorer_dims", data::format_size_list(scorer_dims));
  cfg.set(p + "actor_dims", data::format_size_list(actor_dims));
  cfg.set(p + "critic_dims", data::format_size_list(critic_dims));
  cfg.set(p + "activation", std::string(num::activation_name(activation)));
  cfg.set(p + "embed_init", data::format_double(embed_init));
}

void ModelConfig::adopt_vocab(const data::GeneratorConfig& gen) {
  dense_width = gen.dense_width;
  query_dense_width = gen.query_dense_width;
  item_vocab = gen.catalog_items;
  category_vocab = gen.categories;
  shop_vocab = gen.shops;
  brand_vocab = gen.brands;
  query_vocab = gen.query_vocab();
}

}  // namespace seqrank::model
