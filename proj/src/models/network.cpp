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

#include "seqrank/models/network.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "seqrank/numcore/layers.hpp"

namespace seqrank::model {

namespace {

using num::Activation;
using num::ParamStore;
using num::Tape;
using num::Tensor2;

std::int64_t vocab_row(std::uint32_t id, std::size_t vocab) {
  return id >= 1 && id <= vocab ? static_cast<std::int64_t>(id) : 0;
}

struct ExpectedBlock {
  std::string name;
  std::size_t rows, cols;
};

std::vector<ExpectedBlock> mlp_blocks(const std::string& prefix, const std::vector<std::size_t>& dims) {
  std::vector<ExpectedBlock> out;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const std::string layer = prefix + ".l" + std::to_string(k);
    out.push_back({layer + ".w", dims[k], dims[k + 1]});
    out.push_back({layer + ".b", 1, dims[k + 1]});
  }
  return out;
}

std::vector<ExpectedBlock> expected_blocks(const ModelConfig& c) {
  const std::size_t e = c.embed_dim, d = c.state_dim;
  std::vector<ExpectedBlock> out = {
      {"emb.item", c.item_vocab + 1, e},         {"emb.category", c.category_vocab + 1, e},
      {"emb.shop", c.shop_vocab + 1, e},         {"emb.brand", c.brand_vocab + 1, e},
      {"emb.query", c.query_vocab + 1, e},
  };
  auto append = [&](std::vector<ExpectedBlock> more) { out.insert(out.end(), more.begin(), more.end()); };
  if (uses_attention(c.variant)) append(mlp_blocks("scorer", c.scorer_dims));
  append(mlp_blocks("enc", c.encoder_dims()));
  if (is_recurrent(c.variant)) {
    for (const char* g : {"z", "r", "n"}) {
      out.push_back({std::string("gru.w") + g, d, d});
      out.push_back({std::string("gru.u") + g, d, d});
      out.push_back({std::string("gru.b") + g, 1, d});
    }
  }
  append(mlp_blocks("actor", c.actor_dims));
  if (has_critic(c.variant)) {
    append(mlp_blocks("critic", c.critic_dims));
    append(mlp_blocks("target", c.critic_dims));
  }
  return out;
}

/// Omega = GRU(X, Hin[item_state]); Hout[g] = mean of Omega over groups[g],
/// else Hin[g].
template <typename T>
std::pair<NodeId, NodeId> kernel_step(Tape<T>& tape, const ModelRef<T>& m, NodeId x, NodeId h_in,
                                      std::vector<std::int64_t> item_state,
                                      std::vector<std::vector<std::size_t>> groups) {
  const NodeId h_items = tape.gather_rows(h_in, std::move(item_state));
  const NodeId omega = num::gru(tape, x, h_items, m.store, "gru");
  const NodeId h_out = tape.group_mean_rows(omega, h_in, std::move(groups));
  return {omega, h_out};
}

}  // namespace

template <typename T>
num::ParamStore<T> init_params(const ModelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  num::Rng rng(seed);
  ParamStore<T> s;
  const std::size_t e = cfg.embed_dim;
  auto table = [&](const char* name, std::size_t vocab) {
    Tensor2<T> t(vocab + 1, e);
    for (auto& v : t.data()) v = static_cast<T>(rng.uniform(-cfg.embed_init, cfg.embed_init));
    s.add(name, std::move(t));
  };
  table("emb.item", cfg.item_vocab);
  table("emb.category", cfg.category_vocab);
  table("emb.shop", cfg.shop_vocab);
  table("emb.brand", cfg.brand_vocab);
  table("emb.query", cfg.query_vocab);
  if (uses_attention(cfg.variant)) num::add_mlp_params(s, "scorer", cfg.scorer_dims, rng);
  num::add_mlp_params(s, "enc", cfg.encoder_dims(), rng);
  if (is_recurrent(cfg.variant)) num::add_gru_params(s, "gru", cfg.state_dim, cfg.state_dim, rng);
  num::add_mlp_params(s, "actor", cfg.actor_dims, rng);
  if (has_critic(cfg.variant)) {
    num::add_mlp_params(s, "critic", cfg.critic_dims, rng);
    for (std::size_t k = 0; k + 1 < cfg.critic_dims.size(); ++k) {
      for (const char* part : {".w", ".b"}) {
        const std::string suffix = ".l" + std::to_string(k) + part;
        s.add("target" + suffix, s.value("critic" + suffix), false);
      }
    }
  }
  return s;
}

template <typename T>
void check_params(const ModelConfig& cfg, const num::ParamStore<T>& store) {
  const auto expected = expected_blocks(cfg);
  const std::string who = "model " + std::string(variant_name(cfg.variant)) + ": ";
  for (const auto& b : expected) {
    if (!store.contains(b.name)) throw std::invalid_argument(who + "missing parameter block '" + b.name + "'");
    const auto& v = store.value(b.name);
    if (v.rows() != b.rows || v.cols() != b.cols)
      throw std::invalid_argument(who + "block '" + b.name + "' is " + v.shape_string() + ", expected " +
                                  std::to_string(b.rows) + "x" + std::to_string(b.cols));
  }
  if (store.size() != expected.size())
    throw std::invalid_argument(who + "parameter store has " + std::to_string(store.size()) + " blocks, expected " +
                                std::to_string(expected.size()));
}

template <typename T>
void sync_target(num::ParamStore<T>& store) {
  for (std::size_t i = 0; i < store.size(); ++i) {
    const std::string& name = store.block(i).name;
    if (name.rfind("critic.", 0) != 0) continue;
    store.value("target." + name.substr(7)) = store.value(i);
  }
}

template <typename T>
NodeId id_keys(Tape<T>& tape, const ModelRef<T>& m, std::span<const data::IdQuad> ids) {
  const auto& c = m.cfg;
  std::vector<std::int64_t> item, cat, shop, brand;
  for (const auto& q : ids) {
    item.push_back(vocab_row(q.item, c.item_vocab));
    cat.push_back(vocab_row(q.category, c.category_vocab));
    shop.push_back(vocab_row(q.shop, c.shop_vocab));
    brand.push_back(vocab_row(q.brand, c.brand_vocab));
  }
  NodeId k = tape.gather_rows(tape.param("emb.item"), std::move(item));
  k = tape.add(k, tape.gather_rows(tape.param("emb.category"), std::move(cat)));
  k = tape.add(k, tape.gather_rows(tape.param("emb.shop"), std::move(shop)));
  return tape.add(k, tape.gather_rows(tape.param("emb.brand"), std::move(brand)));
}

template <typename T>
NodeId zero_attention_pool(Tape<T>& tape, const ModelRef<T>& m, NodeId keys, NodeId context) {
  const std::size_t n = tape.value(context).rows();
  const std::size_t e = m.cfg.embed_dim;
  if (tape.value(context).cols() != e)
    throw std::invalid_argument("zero_attention_pool: context width " + std::to_string(tape.value(context).cols()) +
                                " != " + std::to_string(e));
  if (keys == kNoNode || tape.value(keys).rows() == 0) return tape.zeros(n, e);
  if (tape.value(keys).cols() != e)
    throw std::invalid_argument("zero_attention_pool: key width " + std::to_string(tape.value(keys).cols()) +
                                " != " + std::to_string(e));
  const std::size_t len = tape.value(keys).rows();
  const NodeId features = tape.pair_features(keys, context);
  const NodeId raw = num::mlp(tape, features, m.store, "scorer", m.cfg.activation);
  const NodeId weights = tape.zero_softmax_rows(tape.reshape(raw, n, len));
  return tape.matmul(weights, keys);
}

template <typename T>
NodeId encode_items(Tape<T>& tape, const ModelRef<T>& m, const data::UserHistory& user,
                    std::span<const ItemRef> rows) {
  const auto& c = m.cfg;
  const std::size_t n = rows.size();
  std::vector<data::IdQuad> ids;
  std::vector<std::int64_t> qid, qcat;
  Tensor2<T> dense(n, c.dense_width), qdense(n, c.query_dense_width);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& s = user.sessions.at(rows[r].session);
    const auto& it = s.items.at(rows[r].item);
    if (it.dense.size() != c.dense_width)
      throw std::invalid_argument("encode: item has " + std::to_string(it.dense.size()) + " dense features, model expects " +
                                  std::to_string(c.dense_width));
    if (s.query_dense.size() != c.query_dense_width)
      throw std::invalid_argument("encode: session has " + std::to_string(s.query_dense.size()) +
                                  " query features, model expects " + std::to_string(c.query_dense_width));
    ids.push_back(it.ids);
    qid.push_back(vocab_row(s.query_id, c.query_vocab));
    qcat.push_back(vocab_row(s.query_category, c.category_vocab));
    for (std::size_t f = 0; f < c.dense_width; ++f) dense(r, f) = static_cast<T>(it.dense[f]);
    for (std::size_t f = 0; f < c.query_dense_width; ++f) qdense(r, f) = static_cast<T>(s.query_dense[f]);
  }
  std::vector<std::int64_t> item, cat, shop, brand;
  for (const auto& q : ids) {
    item.push_back(vocab_row(q.item, c.item_vocab));
    cat.push_back(vocab_row(q.category, c.category_vocab));
    shop.push_back(vocab_row(q.shop, c.shop_vocab));
    brand.push_back(vocab_row(q.brand, c.brand_vocab));
  }
  const NodeId ei = tape.gather_rows(tape.param("emb.item"), std::move(item));
  const NodeId ec = tape.gather_rows(tape.param("emb.category"), std::move(cat));
  const NodeId es = tape.gather_rows(tape.param("emb.shop"), std::move(shop));
  const NodeId eb = tape.gather_rows(tape.param("emb.brand"), std::move(brand));
  const NodeId key = tape.add(tape.add(tape.add(ei, ec), es), eb);
  const NodeId query = tape.add(tape.gather_rows(tape.param("emb.query"), std::move(qid)),
                                tape.gather_rows(tape.param("emb.category"), std::move(qcat)));

  const NodeId history = user.longterm.empty() ? kNoNode : id_keys(tape, m, std::span(user.longterm));
  NodeId pooled;
  if (uses_attention(c.variant)) {
    pooled = zero_attention_pool(tape, m, history, tape.add(query, key));
  } else if (history == kNoNode) {
    pooled = tape.zeros(n, c.embed_dim);
  } else {
    const NodeId ones = tape.constant(Tensor2<T>(1, user.longterm.size(), T{1}));
    pooled = tape.gather_rows(tape.matmul(ones, history), std::vector<std::int64_t>(n, 0));
  }
  const NodeId parts[] = {ei, ec, es, eb, tape.constant(std::move(dense)), query, tape.constant(std::move(qdense)),
                          pooled};
  return num::mlp(tape, tape.concat_cols(parts), m.store, "enc", c.activation);
}

template <typename T>
num::Tensor2<T> zero_attention_pool_values(const ModelRef<T>& m, const num::Tensor2<T>& keys,
                                           const num::Tensor2<T>& context) {
  Tape<T> tape(m.store);
  const NodeId k = keys.rows() == 0 ? kNoNode : tape.constant(keys);
  return tape.value(zero_attention_pool(tape, m, k, tape.constant(context)));
}

template <typename T>
num::Tensor2<T> encode_session(const ModelRef<T>& m, const data::UserHistory& user, std::size_t session) {
  Tape<T> tape(m.store);
  std::vector<ItemRef> rows;
  for (std::size_t i = 0; i < user.sessions.at(session).items.size(); ++i) rows.push_back({session, i});
  return tape.value(encode_items(tape, m, user, std::span<const ItemRef>(rows)));
}

template <typename T>
KernelResult<T> rnn_kernel(const ModelRef<T>& m, const num::Tensor2<T>& encodings, const num::Tensor2<T>& state,
                           std::span<const std::uint8_t> labels) {
  if (labels.size() != encodings.rows())
    throw std::invalid_argument("rnn_kernel: " + std::to_string(labels.size()) + " labels for " +
                                std::to_string(encodings.rows()) + " items");
  if (state.rows() != 1) throw std::invalid_argument("rnn_kernel: state must be a single row");
  Tape<T> tape(m.store);
  std::vector<std::size_t> purchased;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i]) purchased.push_back(i);
  const NodeId h = tape.constant(state);
  if (encodings.rows() == 0) return {Tensor2<T>(0, state.cols()), state};
  auto [omega, h_out] = kernel_step(tape, m, tape.constant(encodings), h,
                                    std::vector<std::int64_t>(encodings.rows(), 0), {purchased});
  return {tape.value(omega), tape.value(h_out)};
}

template <typename T>
std::vector<std::vector<StepOutput>> sequential_map(Tape<T>& tape, const ModelRef<T>& m, NodeId enc,
                                                    const std::vector<std::vector<StepInput>>& steps) {
  const std::size_t d = m.cfg.state_dim;
  std::vector<std::vector<StepOutput>> out(steps.size());
  for (std::size_t u = 0; u < steps.size(); ++u) {
    NodeId h = tape.zeros(1, d);
    for (const auto& step : steps[u]) {
      StepOutput o;
      if (!step.rows.empty()) {
        std::vector<std::int64_t> rows(step.rows.begin(), step.rows.end());
        const NodeId x = tape.gather_rows(enc, std::move(rows));
        auto [omega, h_out] =
            kernel_step(tape, m, x, h, std::vector<std::int64_t>(step.rows.size(), 0), {step.purchased});
        o.omega = omega;
        o.count = step.rows.size();
        h = h_out;
      }
      o.state = h;
      out[u].push_back(o);
    }
  }
  return out;
}

std::vector<std::vector<bool>> start_indicators(const pack::PackingPlan& plan) {
  std::vector<std::vector<bool>> s(plan.packed_user_count(), std::vector<bool>(plan.capacity(), false));
  for (std::size_t r = 0; r < s.size(); ++r)
    for (std::size_t c = 0; c < plan.capacity(); ++c) s[r][c] = plan.start(r, c);
  return s;
}

template <typename T>
pack::PackedGrid<StepOutput> boundary_aware_sequence_map(Tape<T>& tape, const ModelRef<T>& m, NodeId enc,
                                                         const pack::PackedGrid<StepInput>& steps,
                                                         const std::vector<std::vector<bool>>& starts) {
  const std::size_t d = m.cfg.state_dim;
  if (starts.size() != steps.rows)
    throw std::invalid_argument("boundary_aware_sequence_map: start indicators cover " + std::to_string(starts.size()) +
                                " rows, layout has " + std::to_string(steps.rows));
  for (const auto& row : starts)
    if (row.size() != steps.cols) throw std::invalid_argument("boundary_aware_sequence_map: ragged start indicators");

  pack::PackedGrid<StepOutput> out;
  out.rows = steps.rows;
  out.cols = steps.cols;
  out.cells.resize(steps.rows * steps.cols);

  const NodeId h0 = tape.zeros(1, d);
  NodeId h_prev = kNoNode;
  std::vector<std::int64_t> prev_pos(steps.rows, -1);
  for (std::size_t c = 0; c < steps.cols; ++c) {
    std::vector<std::size_t> live;
    for (std::size_t r = 0; r < steps.rows; ++r)
      if (steps.at(r, c)) live.push_back(r);
    if (live.empty()) {
      std::fill(prev_pos.begin(), prev_pos.end(), -1);
      continue;
    }
    std::vector<std::int64_t> incoming;
    for (std::size_t r : live) {
      if (starts[r][c]) {
        incoming.push_back(-1);
      } else if (prev_pos[r] < 0) {
        throw std::invalid_argument("boundary_aware_sequence_map: slot (" + std::to_string(r) + "," + std::to_string(c) +
                                    ") continues a run but has no predecessor");
      } else {
        incoming.push_back(prev_pos[r]);
      }
    }
    const NodeId h_in = tape.gather_rows(h_prev == kNoNode ? h0 : h_prev, std::move(incoming));

    std::vector<std::int64_t> x_rows, item_state;
    std::vector<std::vector<std::size_t>> groups(live.size());
    std::vector<std::size_t> offsets(live.size());
    for (std::size_t k = 0; k < live.size(); ++k) {
      const StepInput& s = *steps.at(live[k], c);
      offsets[k] = x_rows.size();
      for (std::size_t p : s.purchased) groups[k].push_back(offsets[k] + p);
      for (std::size_t row : s.rows) {
        x_rows.push_back(static_cast<std::int64_t>(row));
        item_state.push_back(static_cast<std::int64_t>(k));
      }
    }
    NodeId omega = kNoNode, h_out = h_in;
    if (!x_rows.empty()) {
      const NodeId x = tape.gather_rows(enc, std::move(x_rows));
      std::tie(omega, h_out) = kernel_step(tape, m, x, h_in, std::move(item_state), std::move(groups));
    }
    std::fill(prev_pos.begin(), prev_pos.end(), -1);
    for (std::size_t k = 0; k < live.size(); ++k) {
      const StepInput& s = *steps.at(live[k], c);
      StepOutput o;
      o.count = s.rows.size();
      o.omega = o.count ? omega : kNoNode;
      o.offset = offsets[k];
      o.state = h_out;
      o.state_row = k;
      out.at(live[k], c) = o;
      prev_pos[live[k]] = static_cast<std::int64_t>(k);
    }
    h_prev = h_out;
  }
  return out;
}

template <typename T>
T actor_logit(const ModelRef<T>& m, const num::Tensor2<T>& omega_a, const num::Tensor2<T>& omega_b) {
  Tape<T> tape(m.store);
  const NodeId pa = num::mlp(tape, tape.constant(omega_a), m.store, "actor", m.cfg.activation);
  const NodeId pb = num::mlp(tape, tape.constant(omega_b), m.store, "actor", m.cfg.activation);
  return tape.value(tape.sub(pa, pb))(0, 0);
}

template <typename T>
T critic_q(const ModelRef<T>& m, const num::Tensor2<T>& omega_a, const num::Tensor2<T>& omega_b, bool use_target) {
  Tape<T> tape(m.store);
  const NodeId parts[] = {tape.constant(omega_a), tape.constant(omega_b)};
  return tape.value(num::mlp(tape, tape.concat_cols(parts), m.store, use_target ? "target" : "critic",
                             m.cfg.activation))(0, 0);
}

template <typename T>
num::Tensor2<T> actor_scores(const ModelRef<T>& m, const num::Tensor2<T>& omega) {
  return num::mlp_forward(omega, m.store, "actor", m.cfg.activation);
}

TrajectoryRequest TrajectoryRequest::for_batch(const data::SessionBatch& batch) {
  TrajectoryRequest r;
  for (const auto& u : batch.users) {
    r.pairs.emplace_back(u.sessions.size());
    r.score.emplace_back(u.sessions.size(), false);
  }
  return r;
}

template <typename T>
Trajectory forward_variant(Tape<T>& tape, const ModelRef<T>& m, const data::SessionBatch& batch,
                           const TrajectoryRequest& request, const ForwardOptions& options) {
  check_params(m.cfg, m.store);
  const std::size_t n_users = batch.users.size();
  if (request.pairs.size() != n_users || request.score.size() != n_users)
    throw std::invalid_argument("forward_variant: request does not match the batch");
  const bool recurrent = is_recurrent(m.cfg.variant);

  Trajectory tr;
  tr.item_rows.resize(n_users);
  // Items to compute per session, ascending.
  std::vector<std::vector<std::vector<std::size_t>>> wanted(n_users);
  std::vector<NodeId> encodings;
  std::size_t enc_rows = 0;
  std::vector<std::vector<std::vector<std::size_t>>> enc_row(n_users);
  for (std::size_t u = 0; u < n_users; ++u) {
    const auto& user = batch.users[u];
    const std::size_t T_u = user.sessions.size();
    if (request.pairs[u].size() != T_u || request.score[u].size() != T_u)
      throw std::invalid_argument("forward_variant: request for user " + std::to_string(u) + " has the wrong length");
    std::vector<ItemRef> refs;
    wanted[u].resize(T_u);
    enc_row[u].resize(T_u);
    tr.item_rows[u].resize(T_u);
    for (std::size_t t = 0; t < T_u; ++t) {
      const auto& s = user.sessions[t];
      std::set<std::size_t> items;
      if (request.score[u][t]) {
        for (std::size_t i = 0; i < s.items.size(); ++i) items.insert(i);
      } else {
        if (const auto& p = request.pairs[u][t]) {
          if (p->a >= s.items.size() || p->b >= s.items.size())
            throw std::invalid_argument("forward_variant: pair outside session (" + std::to_string(u) + "," +
                                        std::to_string(t) + ")");
          items.insert(p->a);
          items.insert(p->b);
        }
        if (recurrent)
          for (std::size_t i : s.purchase_set()) items.insert(i);
      }
      wanted[u][t].assign(items.begin(), items.end());
      tr.item_rows[u][t].assign(s.items.size(), -1);
      for (std::size_t i : wanted[u][t]) {
        enc_row[u][t].push_back(enc_rows + refs.size());
        refs.push_back({t, i});
      }
    }
    if (!refs.empty()) {
      encodings.push_back(encode_items(tape, m, user, std::span<const ItemRef>(refs)));
      enc_rows += refs.size();
    }
  }
  if (encodings.empty()) return tr;
  const NodeId enc = encodings.size() == 1 ? encodings[0] : tape.concat_rows(encodings);

  if (!recurrent) {
    tr.omega = enc;
    for (std::size_t u = 0; u < n_users; ++u)
      for (std::size_t t = 0; t < wanted[u].size(); ++t)
        for (std::size_t k = 0; k < wanted[u][t].size(); ++k)
          tr.item_rows[u][t][wanted[u][t][k]] = static_cast<std::int64_t>(enc_row[u][t][k]);
  } else {
    std::vector<std::vector<StepInput>> steps(n_users);
    for (std::size_t u = 0; u < n_users; ++u) {
      const auto& user = batch.users[u];
      for (std::size_t t = 0; t < wanted[u].size(); ++t) {
        StepInput in;
        in.rows = enc_row[u][t];
        for (std::size_t k = 0; k < wanted[u][t].size(); ++k)
          if (user.sessions[t].items[wanted[u][t][k]].purchased) in.purchased.push_back(k);
        steps[u].push_back(std::move(in));
      }
    }
    if (options.packed) {
      const auto lengths = batch.lengths();
      const auto plan = pack::greedy_knapsack(lengths);
      const auto grid = pack::pack_values(steps, plan);
      tr.steps = pack::unpack(boundary_aware_sequence_map(tape, m, enc, grid, start_indicators(plan)), plan);
      tr.packed_rows = plan.packed_user_count();
    } else {
      tr.steps = sequential_map(tape, m, enc, steps);
      tr.packed_rows = n_users;
    }
    std::vector<NodeId> omegas;
    for (const auto& us : tr.steps)
      for (const auto& o : us)
        if (o.omega != kNoNode) omegas.push_back(o.omega);
    std::sort(omegas.begin(), omegas.end());
    omegas.erase(std::unique(omegas.begin(), omegas.end()), omegas.end());
    std::map<NodeId, std::size_t> base;
    std::size_t acc = 0;
    for (NodeId id : omegas) {
      base[id] = acc;
      acc += tape.value(id).rows();
    }
    tr.omega = omegas.size() == 1 ? omegas[0] : tape.concat_rows(omegas);
    for (std::size_t u = 0; u < n_users; ++u)
      for (std::size_t t = 0; t < wanted[u].size(); ++t) {
        const StepOutput& o = tr.steps[u][t];
        for (std::size_t k = 0; k < wanted[u][t].size(); ++k)
          tr.item_rows[u][t][wanted[u][t][k]] = static_cast<std::int64_t>(base.at(o.omega) + o.offset + k);
      }
  }

  bool any_score = false;
  for (const auto& us : request.score) any_score = any_score || std::find(us.begin(), us.end(), true) != us.end();
  if (any_score) tr.scores = num::mlp(tape, tr.omega, m.store, "actor", m.cfg.activation);

  std::vector<std::int64_t> a_rows, b_rows;
  tr.user_pairs.assign(n_users, 0);
  for (std::size_t u = 0; u < n_users; ++u)
    for (std::size_t t = 0; t < request.pairs[u].size(); ++t) {
      const auto& p = request.pairs[u][t];
      if (!p) continue;
      const auto& items = batch.users[u].sessions[t].items;
      const double la = items[p->a].purchased ? 1.0 : 0.0;
      const double lb = items[p->b].purchased ? 1.0 : 0.0;
      if (la + lb == 0.0)
        throw std::invalid_argument("forward_variant: pair at (" + std::to_string(u) + "," + std::to_string(t) +
                                    ") has two unpurchased items; its label is undefined");
      tr.lambda.push_back(la / (la + lb));
      tr.pair_steps.push_back({u, t});
      ++tr.user_pairs[u];
      a_rows.push_back(tr.item_rows[u][t][p->a]);
      b_rows.push_back(tr.item_rows[u][t][p->b]);
    }
  if (a_rows.empty()) return tr;
  const NodeId wa = tape.gather_rows(tr.omega, a_rows);
  const NodeId wb = tape.gather_rows(tr.omega, b_rows);
  const NodeId pa = num::mlp(tape, wa, m.store, "actor", m.cfg.activation);
  const NodeId pb = num::mlp(tape, wb, m.store, "actor", m.cfg.activation);
  tr.eta = tape.sub(pa, pb);
  if (has_critic(m.cfg.variant)) {
    const NodeId live[] = {wa, wb};
    tr.q = num::mlp(tape, tape.concat_cols(live), m.store, "critic", m.cfg.activation);
    const NodeId frozen[] = {tape.detach(wa), tape.detach(wb)};
    tr.q_target = num::mlp(tape, tape.concat_cols(frozen), m.store, "target", m.cfg.activation);
  }
  return tr;
}

#define SEQRANK_INSTANTIATE_NETWORK(T)                                                                        \
  template num::ParamStore<T> init_params<T>(const ModelConfig&, std::uint64_t);                              \
  template void check_params<T>(const ModelConfig&, const num::ParamStore<T>&);                               \
  template void sync_target<T>(num::ParamStore<T>&);                                                          \
  template NodeId id_keys<T>(Tape<T>&, const ModelRef<T>&, std::span<const data::IdQuad>);                    \
  template NodeId zero_attention_pool<T>(Tape<T>&, const ModelRef<T>&, NodeId, NodeId);                       \
  template NodeId encode_items<T>(Tape<T>&, const ModelRef<T>&, const data::UserHistory&,                     \
                                  std::span<const ItemRef>);                                                 \
  template num::Tensor2<T> zero_attention_pool_values<T>(const ModelRef<T>&, const num::Tensor2<T>&,          \
                                                         const num::Tensor2<T>&);                             \
  template num::Tensor2<T> encode_session<T>(const ModelRef<T>&, const data::UserHistory&, std::size_t);      \
  template KernelResult<T> rnn_kernel<T>(const ModelRef<T>&, const num::Tensor2<T>&, const num::Tensor2<T>&, \
                                         std::span<const std::uint8_t>);                                     \
  template std::vector<std::vector<StepOutput>> sequential_map<T>(Tape<T>&, const ModelRef<T>&, NodeId,       \
                                                                  const std::vector<std::vector<StepInput>>&); \
  template pack::PackedGrid<StepOutput> boundary_aware_sequence_map<T>(                                      \
      Tape<T>&, const ModelRef<T>&, NodeId, const pack::PackedGrid<StepInput>&,                               \
      const std::vector<std::vector<bool>>&);                                                                 \
  template T actor_logit<T>(const ModelRef<T>&, const num::Tensor2<T>&, const num::Tensor2<T>&);              \
  template T critic_q<T>(const ModelRef<T>&, const num::Tensor2<T>&, const num::Tensor2<T>&, bool);           \
  template num::Tensor2<T> actor_scores<T>(const ModelRef<T>&, const num::Tensor2<T>&);                       \
  template Trajectory forward_variant<T>(Tape<T>&, const ModelRef<T>&, const data::SessionBatch&,             \
                                         const TrajectoryRequest&, const ForwardOptions&);

SEQRANK_INSTANTIATE_NETWORK(float)
SEQRANK_INSTANTIATE_NETWORK(double)

}  // namespace seqrank::model
