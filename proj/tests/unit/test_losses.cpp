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

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "objective_checks.hpp"
#include "seqrank/losses/losses.hpp"
#include "seqrank/numcore/rng.hpp"

using namespace seqrank;
using namespace seqrank::loss;

namespace {

// -log sigmoid(x) in extended precision.
long double softplus_neg(long double x) { return std::log1p(std::exp(-x)); }

std::vector<double> rollup(const std::vector<double>& r, double gamma) {
  std::vector<double> q(r.size());
  double next = 0.0;
  for (std::size_t t = r.size(); t-- > 0;) next = q[t] = r[t] + gamma * next;
  return q;
}

}  // namespace

TEST_CASE("pairwise_logloss examples") {
  CHECK(pairwise_logloss(0.0, 1.0) == doctest::Approx(0.693147).epsilon(1e-6));
  CHECK(pairwise_logloss(40.0, 1.0) < 1e-15);
  CHECK(pairwise_logloss(-1.0, 1.0) == doctest::Approx(static_cast<double>(softplus_neg(-1.0L))).epsilon(1e-14));
  CHECK(pairwise_logloss(-1.0, 1.0) == doctest::Approx(1.313262).epsilon(1e-6));
  CHECK(pairwise_logloss(-800.0, 1.0) == doctest::Approx(800.0));
  CHECK(std::isfinite(pairwise_logloss(800.0, 0.0)));
  CHECK_THROWS_AS(pairwise_logloss(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_WITH(pairwise_logloss(NAN, 1.0), doctest::Contains("non-finite"));
}

TEST_CASE("pairwise_logloss saturates monotonically") {
  double prev1 = INFINITY, prev0 = -INFINITY;
  for (double eta = -30; eta <= 30; eta += 0.25) {
    const double l1 = pairwise_logloss(eta, 1.0), l0 = pairwise_logloss(eta, 0.0);
    CHECK(l1 < prev1);
    CHECK(l0 > prev0);
    CHECK(l1 >= 0.0);
    prev1 = l1;
    prev0 = l0;
  }
}

TEST_CASE("pair labels") {
  CHECK(pair_label(true, false) == 1.0);
  CHECK(pair_label(false, true) == 0.0);
  CHECK(pair_label(true, true) == 0.5);
  CHECK_THROWS_AS(pair_label(false, false), std::invalid_argument);
}

TEST_CASE("reward examples and identity") {
  CHECK(reward(0.0, 1.0) == doctest::Approx(-0.693147).epsilon(1e-6));
  CHECK(reward(-1.0, 0.0) == doctest::Approx(static_cast<double>(-softplus_neg(1.0L))).epsilon(1e-14));
  CHECK(reward(-1.0, 0.0) == doctest::Approx(-0.313262).epsilon(1e-6));
  num::Rng rng(5);
  for (int i = 0; i < 20000; ++i) {
    const double eta = rng.uniform(-50, 50), lambda = rng.bernoulli(0.5) ? 1.0 : 0.0;
    const double r = reward(eta, lambda), l = pairwise_logloss(eta, lambda);
    CHECK(r + l == 0.0);
    const double neg = -l;
    CHECK(std::memcmp(&r, &neg, sizeof r) == 0);
  }
}

TEST_CASE("td_loss examples") {
  CHECK(td_loss({{-3.0}}, {{1.0}}, 0.8, {{7.0}}) == 0.0);
  const std::vector<std::vector<double>> q = {{-1.06, -0.7}}, r = {{-0.5, -0.7}};
  CHECK(td_loss(q, r, 0.8, q) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(td_loss(q, r, 0.8, q)) < 1e-24);
  // gamma = 0 leaves the squared residuals before the last step.
  CHECK(td_loss({{1.0, 2.0, 5.0}}, {{0.5, 0.0, 0.0}}, 0.0, {{9.0, 9.0, 9.0}}) == doctest::Approx(0.25 + 4.0));
  CHECK_THROWS_AS(td_loss({{1.0}}, {{1.0, 2.0}}, 0.8, {{1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(td_loss({{1.0}}, {}, 0.8, {{1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(td_loss({{1.0}}, {{1.0}}, 1.0, {{1.0}}), std::invalid_argument);
}

TEST_CASE("Bellman-zero over random reward sequences") {
  num::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<double>> q, r;
    for (std::size_t u = 0, users = 1 + rng.index(3); u < users; ++u) {
      std::vector<double> rewards(1 + rng.index(20));
      for (auto& x : rewards) x = -rng.uniform(0, 3);
      q.push_back(rollup(rewards, 0.8));
      r.push_back(rewards);
    }
    CHECK(td_loss(q, r, 0.8, q) <= 1e-12);
  }
}

TEST_CASE("pg_loss and combine") {
  CHECK(pg_loss({{0.0, 0.0}, {0.0}}) == 0.0);
  CHECK(pg_loss({{-1.0, -2.0}}) == 3.0);
  CHECK(combine(2.0, 4.0, {.mu = 0.5}) == 3.0);
  CHECK(combine(2.0, 4.0, {.mu = 0.0}) == 4.0);
  CHECK(combine(2.0, 4.0, {.mu = 0.99}) == doctest::Approx(0.99 * 2 + 0.01 * 4));
  CHECK_THROWS_WITH(combine(2.0, 4.0, {.mu = 1.0}), doctest::Contains("degenerates"));
  CHECK(combine(2.0, 4.0, {.mu = 1.0, .allow_degenerate_mu = true}) == 2.0);
  CHECK_THROWS_AS(ObjectiveConfig{.mu = -0.1}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(ObjectiveConfig{.gamma = 1.0}.validate(), std::invalid_argument);
}

TEST_CASE("graph objectives replay the scalar definitions") {
  for (auto v : {model::Variant::kRnn, model::Variant::kS3ddpg}) {
    auto gen = testing::tiny_generator(31, 3, 4);
    const auto log = data::training_view(data::generate_log(gen), 1 << 30);
    const auto cfg = testing::tiny_model(v, gen);
    auto params = model::init_params<double>(cfg, 8);
    const auto batch = testing::batch_of(log);
    num::Rng rng(2);
    auto req = model::TrajectoryRequest::for_batch(batch);
    req.pairs = testing::sample_pairs(batch, rng);
    num::Tape<double> tape(params, false);
    const model::ModelRef<double> m{cfg, params};
    const auto tr = model::forward_variant(tape, m, batch, req);
    const auto& eta = tape.value(tr.eta);

    double mean = 0;
    std::vector<double> rewards;
    for (std::size_t k = 0; k < tr.lambda.size(); ++k) {
      mean += pairwise_logloss(eta(k, 0), tr.lambda[k]);
      rewards.push_back(reward(eta(k, 0), tr.lambda[k]));
    }
    mean /= static_cast<double>(tr.lambda.size());
    CHECK(tape.value(supervised_objective(tape, tr))(0, 0) == doctest::Approx(mean).epsilon(1e-12));
    if (v != model::Variant::kS3ddpg) continue;

    std::vector<std::vector<double>> q, qt, r;
    std::size_t row = 0;
    for (std::size_t n : tr.user_pairs) {
      q.emplace_back();
      qt.emplace_back();
      r.emplace_back();
      for (std::size_t k = 0; k < n; ++k, ++row) {
        q.back().push_back(tape.value(tr.q)(row, 0));
        qt.back().push_back(tape.value(tr.q_target)(row, 0));
        r.back().push_back(rewards[row]);
      }
    }
    const ObjectiveConfig oc{.gamma = 0.8, .mu = 0.3};
    const auto nodes = combined_objective(tape, tr, oc);
    CHECK(tape.value(nodes.td)(0, 0) == doctest::Approx(td_loss(q, r, 0.8, qt)).epsilon(1e-12));
    CHECK(tape.value(nodes.pg)(0, 0) == doctest::Approx(pg_loss(q)).epsilon(1e-12));
    CHECK(tape.value(nodes.loss)(0, 0) ==
          doctest::Approx(combine(pg_loss(q), td_loss(q, r, 0.8, qt), oc)).epsilon(1e-12));
  }
}

TEST_CASE("objective gradients match central differences") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (auto v : {model::Variant::kDnn, model::Variant::kDinS, model::Variant::kRnn, model::Variant::kS3ddpg}) {
      CAPTURE(seed);
      CAPTURE(model::variant_name(v));
      CHECK(testing::objective_grad_error(v, seed) < 1e-4);
    }
  }
  CHECK(testing::objective_grad_error(model::Variant::kS3ddpg, 9, 0.0) < 1e-4);
  CHECK(testing::objective_grad_error(model::Variant::kS3ddpg, 9, 0.99) < 1e-4);
}
