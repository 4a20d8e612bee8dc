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

#include "seqrank/training/trainer.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "seqrank/datamodel/batching.hpp"
#include "seqrank/models/network.hpp"
#include "seqrank/packing/pairwise.hpp"

namespace seqrank::train {

namespace {

const std::vector<std::string> kKnownKeys = {
    "gamma",       "mu",          "allow_degenerate_mu", "optimizer",   "learning_rate",  "batch_users",
    "patience",    "max_epochs",  "packed",              "data_seed",   "sample_seed",    "init_seed",
    "target_sync_every", "warm_start", "eval_day",       "warmup_days", "seed"};

std::string key(std::string_view prefix, const char* name) { return std::string(prefix) + name; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << v;
  return os.str();
}

}  // namespace

void TrainConfig::validate() const {
  objective.validate();
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw std::invalid_argument("learning_rate must be positive");
  if (batch_users == 0) throw std::invalid_argument("batch_users must be positive");
  if (max_epochs == 0) throw std::invalid_argument("max_epochs must be positive");
  if (target_sync_every == 0) throw std::invalid_argument("target_sync_every must be positive");
  if (warmup_days < 0) throw std::invalid_argument("warmup_days must be non-negative");
}

void TrainConfig::reseed(std::uint64_t seed) {
  data_seed = seed * 3 + 1;
  sample_seed = seed * 3 + 2;
  init_seed = seed * 3 + 3;
}

metrics::EvalOptions TrainConfig::eval_options() const {
  metrics::EvalOptions e;
  e.eval_day = eval_day;
  e.warmup_days = warmup_days;
  e.packed = packed;
  e.batch_users = std::max<std::size_t>(batch_users, 64);
  return e;
}

TrainConfig TrainConfig::from_kv(const data::KvConfig& cfg, std::string_view prefix) {
  cfg.require_known(prefix, kKnownKeys);
  TrainConfig t;
  if (cfg.has(key(prefix, "seed"))) t.reseed(cfg.get_u64(key(prefix, "seed"), 0));
  t.objective.gamma = cfg.get_double(key(prefix, "gamma"), t.objective.gamma);
  t.objective.mu = cfg.get_double(key(prefix, "mu"), t.objective.mu);
  t.objective.allow_degenerate_mu = cfg.get_bool(key(prefix, "allow_degenerate_mu"), false);
  t.optimizer = num::parse_optimizer(cfg.get_string(key(prefix, "optimizer"), num::optimizer_name(t.optimizer)));
  t.learning_rate = cfg.get_double(key(prefix, "learning_rate"), t.learning_rate);
  t.batch_users = cfg.get_size(key(prefix, "batch_users"), t.batch_users);
  t.patience = cfg.get_size(key(prefix, "patience"), t.patience);
  t.max_epochs = cfg.get_size(key(prefix, "max_epochs"), t.max_epochs);
  t.packed = cfg.get_bool(key(prefix, "packed"), t.packed);
  t.data_seed = cfg.get_u64(key(prefix, "data_seed"), t.data_seed);
  t.sample_seed = cfg.get_u64(key(prefix, "sample_seed"), t.sample_seed);
  t.init_seed = cfg.get_u64(key(prefix, "init_seed"), t.init_seed);
  t.target_sync_every = cfg.get_size(key(prefix, "target_sync_every"), t.target_sync_every);
  t.warm_start = cfg.get_bool(key(prefix, "warm_start"), t.warm_start);
  t.eval_day = static_cast<int>(cfg.get_int(key(prefix, "eval_day"), t.eval_day));
  t.warmup_days = static_cast<int>(cfg.get_int(key(prefix, "warmup_days"), t.warmup_days));
  t.validate();
  return t;
}

void TrainConfig::to_kv(data::KvConfig& cfg, std::string_view prefix) const {
  cfg.set(key(prefix, "gamma"), data::format_double(objective.gamma));
  cfg.set(key(prefix, "mu"), data::format_double(objective.mu));
  cfg.set(key(prefix, "allow_degenerate_mu"), objective.allow_degenerate_mu ? "true" : "false");
  cfg.set(key(prefix, "optimizer"), std::string(num::optimizer_name(optimizer)));
  cfg.set(key(prefix, "learning_rate"), data::format_double(learning_rate));
  cfg.set(key(prefix, "batch_users"), std::to_string(batch_users));
  cfg.set(key(prefix, "patience"), std::to_string(patience));
  cfg.set(key(prefix, "max_epochs"), std::to_string(max_epochs));
  cfg.set(key(prefix, "packed"), packed ? "true" : "false");
  cfg.set(key(prefix, "data_seed"), std::to_string(data_seed));
  cfg.set(key(prefix, "sample_seed"), std::to_string(sample_seed));
  cfg.set(key(prefix, "init_seed"), std::to_string(init_seed));
  cfg.set(key(prefix, "target_sync_every"), std::to_string(target_sync_every));
  cfg.set(key(prefix, "warm_start"), warm_start ? "true" : "false");
  cfg.set(key(prefix, "eval_day"), std::to_string(eval_day));
  cfg.set(key(prefix, "warmup_days"), std::to_string(warmup_days));
}

std::string EpochLog::to_line() const {
  std::ostringstream os;
  os << "epoch=" << epoch << " loss=" << fmt(stats.loss) << " pairs=" << stats.pairs << " batches=" << stats.batches
     << " packed_rows=" << stats.packed_rows << " val_session_auc=" << fmt(validation.session_auc)
     << " val_ndcg=" << fmt(validation.ndcg) << " improved=" << (improved ? 1 : 0);
  return os.str();
}

RunState start_run(const model::ModelConfig& cfg, const TrainConfig& tc) {
  tc.validate();
  RunState run;
  run.params = model::init_params<float>(cfg, tc.init_seed);
  run.optimizer.kind = tc.optimizer;
  run.optimizer.learning_rate = tc.learning_rate;
  run.data_rng = num::Rng(tc.data_seed);
  run.sample_rng = num::Rng(tc.sample_seed);
  return run;
}

EpochStats train_epoch(const model::ModelConfig& cfg, RunState& run, const std::vector<data::UserHistory>& train,
                       const TrainConfig& tc, std::size_t epoch) {
  std::vector<data::UserHistory> users;
  for (const auto& u : train) {
    data::UserHistory kept{u.user_id, {}, u.longterm};
    for (const auto& s : u.sessions)
      if (s.training_eligible()) kept.sessions.push_back(s);
    if (!kept.sessions.empty()) users.push_back(std::move(kept));
  }
  if (users.empty()) throw std::invalid_argument("train: no training-eligible sessions");
  run.data_rng.shuffle(users);

  const bool critic = model::has_critic(cfg.variant);
  const model::ModelRef<float> m{cfg, run.params};
  EpochStats stats;
  double loss_total = 0.0;
  std::size_t batch_index = 0;
  for (const auto& batch : data::make_batches(users, tc.batch_users)) {
    ++batch_index;
    auto request = model::TrajectoryRequest::for_batch(batch);
    std::size_t pairs = 0;
    for (std::size_t u = 0; u < batch.users.size(); ++u)
      for (std::size_t t = 0; t < batch.users[u].sessions.size(); ++t) {
        request.pairs[u][t] = pack::pairwise_sample(batch.users[u].sessions[t].labels(), run.sample_rng);
        ++pairs;
      }
    const std::string where = "epoch " + std::to_string(epoch) + ", batch " + std::to_string(batch_index);
    double value = 0.0;
    std::size_t rows = 0;
    // Non-finite values surface as domain_error from the ops or the optimizer.
    try {
      num::Tape<float> tape(run.params, true);
      const auto tr = model::forward_variant(tape, m, batch, request, {.packed = tc.packed});
      rows = tr.packed_rows;
      num::NodeId objective;
      if (critic) {
        const auto nodes = loss::combined_objective(tape, tr, tc.objective);
        objective = tape.scale(nodes.loss, 1.0f / static_cast<float>(pairs));
      } else {
        objective = loss::supervised_objective(tape, tr);
      }
      value = tape.value(objective)(0, 0);
      if (!std::isfinite(value)) throw std::domain_error("loss is not finite");
      tape.backward(objective);
      num::optimizer_step(run.params, run.optimizer);
    } catch (const std::domain_error& e) {
      throw std::runtime_error("training diverged at " + where + ": " + e.what());
    }
    ++run.steps;
    if (critic && run.steps % tc.target_sync_every == 0) model::sync_target(run.params);
    loss_total += value * static_cast<double>(pairs);
    stats.pairs += pairs;
    stats.packed_rows += rows;
    ++stats.batches;
  }
  stats.loss = loss_total / static_cast<double>(stats.pairs);
  return stats;
}

model::Checkpoint TrainResult::checkpoint(const TrainConfig& tc) const {
  model::Checkpoint c;
  model.to_kv(c.config);
  tc.to_kv(c.config);
  c.config.set("result.best_epoch", std::to_string(best_epoch));
  c.config.set("result.best_session_auc", data::format_double(best_auc));
  c.config.set("result.initial_session_auc", data::format_double(initial_auc));
  c.params = best;
  return c;
}

std::size_t copy_matching_blocks(num::ParamStore<float>& dst, const num::ParamStore<float>& src) {
  std::size_t copied = 0;
  for (auto& b : dst.blocks()) {
    if (!src.contains(b.name)) continue;
    const auto& v = src.value(b.name);
    if (v.rows() != b.value.rows() || v.cols() != b.value.cols()) continue;
    b.value = v;
    ++copied;
  }
  return copied;
}

TrainResult train(const model::ModelConfig& cfg, const std::vector<data::UserHistory>& train,
                  const std::vector<data::UserHistory>& validation, const TrainConfig& tc, std::ostream* log,
                  const num::ParamStore<float>* init) {
  cfg.validate();
  RunState run = start_run(cfg, tc);
  if (init) {
    copy_matching_blocks(run.params, *init);
    if (model::has_critic(cfg.variant)) model::sync_target(run.params);
  }
  const auto eval_opts = tc.eval_options();
  auto evaluate = [&] { return metrics::evaluate_protocol({cfg, run.params}, validation, eval_opts); };

  TrainResult result;
  result.model = cfg;
  result.initial_auc = evaluate().session_auc;
  result.best_auc = -std::numeric_limits<double>::infinity();
  if (log) *log << "epoch=0 val_session_auc=" << fmt(result.initial_auc) << "\n";
  std::size_t stale = 0;
  for (std::size_t epoch = 1; epoch <= tc.max_epochs; ++epoch) {
    EpochLog entry;
    entry.epoch = epoch;
    entry.stats = train_epoch(cfg, run, train, tc, epoch);
    entry.validation = evaluate();
    entry.improved = entry.validation.session_auc > result.best_auc;
    if (entry.improved) {
      result.best_auc = entry.validation.session_auc;
      result.best_epoch = epoch;
      result.best_report = entry.validation;
      result.best = run.params;
      stale = 0;
    } else {
      ++stale;
    }
    if (log) *log << entry.to_line() << std::endl;
    result.epochs.push_back(std::move(entry));
    if (stale >= tc.patience) break;
  }
  return result;
}

DataSplit split_by_day(const std::vector<data::UserHistory>& log, int eval_day) {
  DataSplit s;
  s.eval_day = eval_day < 0 ? data::last_day(log) : eval_day;
  s.train = data::training_view(log, s.eval_day);
  s.validation = data::day_window(log, std::numeric_limits<int>::min(), s.eval_day);
  if (s.train.empty()) throw std::invalid_argument("split: no training-eligible sessions before day " +
                                                   std::to_string(s.eval_day));
  return s;
}

}  // namespace seqrank::train
