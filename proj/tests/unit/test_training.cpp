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

#include <limits>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "seqrank/models/checkpoint.hpp"
#include "seqrank/training/experiments.hpp"
#include "seqrank/training/trainer.hpp"

using namespace seqrank;
using namespace seqrank::train;
using model::Variant;

namespace {

struct Setup {
  data::GeneratorConfig gen;
  DataSplit split;
  model::ModelConfig cfg;
  TrainConfig tc;
};

Setup setup(Variant v, std::uint64_t seed = 4) {
  Setup s;
  s.gen = testing::tiny_generator(seed, 16, 6);
  s.gen.days = 5;
  s.gen.eligible_fraction = 0.8;
  s.split = split_by_day(data::generate_log(s.gen));
  s.cfg = testing::tiny_model(v, s.gen);
  s.tc.batch_users = 5;
  s.tc.max_epochs = 3;
  s.tc.patience = 1;
  s.tc.warmup_days = 4;
  return s;
}

std::size_t eligible(const std::vector<data::UserHistory>& users) {
  std::size_t n = 0;
  for (const auto& u : users)
    for (const auto& s : u.sessions) n += s.training_eligible();
  return n;
}

}  // namespace

TEST_CASE("TrainConfig keys round-trip and validate") {
  TrainConfig t;
  t.objective.mu = 0.25;
  t.batch_users = 7;
  t.optimizer = num::OptimizerKind::kAdam;
  t.reseed(9);
  data::KvConfig kv;
  t.to_kv(kv);
  const auto back = TrainConfig::from_kv(kv);
  CHECK(back.objective.mu == 0.25);
  CHECK(back.batch_users == 7);
  CHECK(back.optimizer == num::OptimizerKind::kAdam);
  CHECK(back.init_seed == t.init_seed);
  CHECK(back.data_seed != back.sample_seed);
  kv.set("train.mu", "1");
  CHECK_THROWS_WITH(TrainConfig::from_kv(kv), doctest::Contains("degenerates"));
  kv.set("train.allow_degenerate_mu", "true");
  CHECK_NOTHROW(TrainConfig::from_kv(kv));
  kv.set("train.bogus", "1");
  CHECK_THROWS_AS(TrainConfig::from_kv(kv), std::invalid_argument);
}

TEST_CASE("an epoch draws one pair per eligible session") {
  for (auto v : {Variant::kDnn, Variant::kS3ddpg}) {
    auto s = setup(v);
    auto run = start_run(s.cfg, s.tc);
    const auto stats = train_epoch(s.cfg, run, s.split.train, s.tc);
    CHECK(stats.pairs == eligible(s.split.train));
    CHECK(stats.batches == (s.split.train.size() + 4) / 5);
    CHECK(std::isfinite(stats.loss));
  }
}

TEST_CASE("patience zero runs exactly one epoch") {
  auto s = setup(Variant::kRnn);
  s.tc.patience = 0;
  s.tc.max_epochs = 10;
  const auto r = train::train(s.cfg, s.split.train, s.split.validation, s.tc);
  CHECK(r.epochs.size() == 1);
  CHECK(r.best_epoch == 1);
}

TEST_CASE("the best checkpoint is never beaten by a later epoch") {
  auto s = setup(Variant::kRnn);
  s.tc.max_epochs = 6;
  s.tc.patience = 2;
  std::ostringstream log;
  const auto r = train::train(s.cfg, s.split.train, s.split.validation, s.tc, &log);
  for (const auto& e : r.epochs) CHECK(e.validation.session_auc <= r.best_auc);
  CHECK(r.epochs[r.best_epoch - 1].validation.session_auc == r.best_auc);
  CHECK(log.str().find("epoch=1 loss=") != std::string::npos);
  const auto again = metrics::evaluate_protocol(model::ModelRef<float>{s.cfg, r.best}, s.split.validation, s.tc.eval_options());
  CHECK(again.session_auc == r.best_auc);
}

TEST_CASE("training is deterministic") {
  for (auto v : {Variant::kDinS, Variant::kS3ddpg}) {
    auto s = setup(v);
    const auto a = train::train(s.cfg, s.split.train, s.split.validation, s.tc);
    const auto b = train::train(s.cfg, s.split.train, s.split.validation, s.tc);
    CHECK(model::encode_checkpoint(a.checkpoint(s.tc)) == model::encode_checkpoint(b.checkpoint(s.tc)));
  }
}

TEST_CASE("a packed epoch matches the per-user epoch") {
  for (auto v : {Variant::kRnn, Variant::kS3ddpg}) {
    for (std::uint64_t seed : {4u, 5u}) {
      auto s = setup(v, seed);
      s.tc.init_seed = seed;
      const auto c = compare_packed_epoch(s.cfg, s.split.train, s.tc);
      CAPTURE(c.worst_block);
      CHECK(c.max_param_diff <= 1e-6);
      CHECK(c.packed.pairs == c.unpacked.pairs);
      CHECK(c.packed.packed_rows <= c.unpacked.packed_rows);
    }
  }
}

TEST_CASE("divergence names its coordinates") {
  auto s = setup(Variant::kRnn);
  s.tc.learning_rate = 1e38;
  s.tc.max_epochs = 2;
  CHECK_THROWS_WITH(train::train(s.cfg, s.split.train, s.split.validation, s.tc), doctest::Contains("epoch"));
}

TEST_CASE("sweep_mu rows and the degeneracy guard") {
  auto s = setup(Variant::kS3ddpg);
  s.tc.max_epochs = 1;
  const auto rows = sweep_mu({0.0, 0.5, 0.99}, s.cfg, s.split, s.tc);
  CHECK(rows.size() == 3);
  CHECK(rows[2].mu == 0.99);
  const auto one = sweep_mu({0.2}, s.cfg, s.split, s.tc);
  CHECK(one.size() == 1);
  CHECK(sweep_table(rows).find("mu\tsession_auc\tndcg") == 0);
  CHECK_THROWS_WITH(sweep_mu({0.5, 1.0}, s.cfg, s.split, s.tc), doctest::Contains("degenerates"));
  CHECK_THROWS_AS(sweep_mu({}, s.cfg, s.split, s.tc), std::invalid_argument);
}

TEST_CASE("ladder trains the four variants") {
  auto s = setup(Variant::kRnn);
  s.tc.max_epochs = 1;
  s.tc.warm_start = true;
  const auto rows = ladder(s.cfg, s.split, s.tc);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].variant == Variant::kDnn);
  CHECK(rows[3].variant == Variant::kS3ddpg);
  CHECK(rows[3].warm_started);
  CHECK_FALSE(rows[2].warm_started);
  const auto again = ladder(s.cfg, s.split, s.tc);
  CHECK(ladder_table(rows) == ladder_table(again));
}

TEST_CASE("copy_matching_blocks copies shared blocks only") {
  auto s = setup(Variant::kRnn);
  const auto rnn = model::init_params<float>(s.cfg, 1);
  auto cfg3 = s.cfg;
  cfg3.variant = Variant::kS3ddpg;
  auto s3 = model::init_params<float>(cfg3, 2);
  const std::size_t n = copy_matching_blocks(s3, rnn);
  CHECK(n == rnn.size());
  for (const auto& b : rnn.blocks()) CHECK(s3.value(b.name) == b.value);
}

TEST_CASE("split_by_day keeps the final day out of training") {
  auto s = setup(Variant::kRnn);
  for (const auto& u : s.split.train)
    for (const auto& x : u.sessions) {
      CHECK(x.day() < s.split.eval_day);
      CHECK(x.training_eligible());
    }
}
