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
#include <stdexcept>

#include "doctest.h"
#include "seqrank/numcore/grad_check.hpp"
#include "seqrank/numcore/layers.hpp"
#include "seqrank/numcore/math.hpp"
#include "seqrank/numcore/optimizer.hpp"
#include "seqrank/numcore/rng.hpp"
#include "seqrank/numcore/tape.hpp"

using namespace seqrank::num;

TEST_CASE("sigmoid values and stability") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(std::abs(sigmoid(40.0) - 1.0) < 1e-15);
  // 1/(1+e) from a 30-digit evaluation.
  CHECK(std::abs(sigmoid(-1.0) - 0.268941421369995120748840758178) < 1e-15);
  for (double x = -500.0; x <= 500.0; x += 0.5) {
    CHECK(std::isfinite(sigmoid(x)));
    CHECK(std::isfinite(log_sigmoid(x)));
    CHECK(std::isfinite(sigmoid(static_cast<float>(x))));
  }
  CHECK(log_sigmoid(-500.0) == doctest::Approx(-500.0));
  CHECK_THROWS_AS(sigmoid(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(sigmoid(INFINITY), std::domain_error);
}

TEST_CASE("mlp_forward worked examples") {
  SUBCASE("zero weights give zero output") {
    ParamStore<double> s;
    s.add("m.l0.w", Tensor2<double>(3, 4));
    s.add("m.l0.b", Tensor2<double>(1, 4));
    s.add("m.l1.w", Tensor2<double>(4, 2));
    s.add("m.l1.b", Tensor2<double>(1, 2));
    auto out = mlp_forward(Tensor2<double>::from_rows({{1, -2, 3}, {4, 5, 6}}), s, "m", Activation::kTanh);
    CHECK(out == Tensor2<double>(2, 2));
  }
  SUBCASE("identity layer") {
    ParamStore<double> s;
    s.add("m.l0.w", Tensor2<double>::from_rows({{1, 0}, {0, 1}}));
    s.add("m.l0.b", Tensor2<double>(1, 2));
    auto out = mlp_forward(Tensor2<double>::from_rows({{1, 2}}), s, "m", Activation::kRelu);
    CHECK(out == Tensor2<double>::from_rows({{1, 2}}));
  }
  SUBCASE("single affine layer") {
    ParamStore<double> s;
    s.add("m.l0.w", Tensor2<double>::from_rows({{1}, {1}}));
    s.add("m.l0.b", Tensor2<double>::from_rows({{0.5}}));
    auto out = mlp_forward(Tensor2<double>::from_rows({{1, 2}}), s, "m", Activation::kTanh);
    CHECK(out(0, 0) == 3.5);
  }
  SUBCASE("fan-in mismatch names the layer") {
    ParamStore<double> s;
    s.add("m.l0.w", Tensor2<double>(2, 3));
    s.add("m.l0.b", Tensor2<double>(1, 3));
    s.add("m.l1.w", Tensor2<double>(4, 1));
    s.add("m.l1.b", Tensor2<double>(1, 1));
    try {
      mlp_forward(Tensor2<double>(1, 2), s, "m", Activation::kTanh);
      FAIL("expected a shape error");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("layer 1") != std::string::npos);
    }
  }
}

TEST_CASE("gru_cell examples") {
  Rng rng(3);
  SUBCASE("zero params halve the state") {
    ParamStore<double> s;
    add_gru_params(s, "g", 3, 2, rng);
    for (auto& b : s.blocks()) b.value.fill(0.0);
    auto out = gru_cell(Tensor2<double>::from_rows({{1, 2, 3}}), Tensor2<double>::from_rows({{0.4, -0.8}}), s, "g");
    CHECK(out == Tensor2<double>::from_rows({{0.2, -0.4}}));
    auto zero = gru_cell(Tensor2<double>(1, 3), Tensor2<double>(1, 2), s, "g");
    CHECK(zero == Tensor2<double>(1, 2));
  }
  SUBCASE("random params stay finite and bounded") {
    ParamStore<float> s;
    add_gru_params(s, "g", 5, 4, rng);
    Tensor2<float> x(3, 5), h(3, 4);
    for (auto& v : x.data()) v = static_cast<float>(rng.uniform(-2, 2));
    for (auto& v : h.data()) v = static_cast<float>(rng.uniform(-0.9, 0.9));
    auto out = gru_cell(x, h, s, "g");
    CHECK(out.rows() == 3);
    CHECK(out.cols() == 4);
    for (float v : out.data()) {
      CHECK(std::isfinite(v));
      CHECK(std::abs(v) < 1.0f);
    }
  }
  SUBCASE("shape mismatch") {
    ParamStore<double> s;
    add_gru_params(s, "g", 3, 2, rng);
    CHECK_THROWS_AS(gru_cell(Tensor2<double>(1, 4), Tensor2<double>(1, 2), s, "g"), std::invalid_argument);
    CHECK_THROWS_AS(gru_cell(Tensor2<double>(1, 3), Tensor2<double>(1, 3), s, "g"), std::invalid_argument);
  }
}

TEST_CASE("grad_check examples") {
  SUBCASE("quadratic") {
    ParamStore<double> s;
    s.add("w", Tensor2<double>::from_rows({{1, 2}}));
    Objective f = [](ParamStore<double>& p, bool grad) {
      Tape<double> t(p, grad);
      NodeId w = t.param("w");
      NodeId loss = t.sum(t.mul(w, w));
      if (grad) t.backward(loss);
      return t.value(loss)(0, 0);
    };
    s.zero_grad();
    f(s, true);
    CHECK(s.grad("w") == Tensor2<double>::from_rows({{2, 4}}));
    CHECK(grad_check(f, s, 1e-5) < 1e-7);
  }
  SUBCASE("sigmoid of a small random net") {
    Rng rng(11);
    ParamStore<double> s;
    add_mlp_params(s, "net", {4, 6, 3, 1}, rng);
    Tensor2<double> x(5, 4);
    for (auto& v : x.data()) v = rng.uniform(-1, 1);
    Objective f = [&](ParamStore<double>& p, bool grad) {
      Tape<double> t(p, grad);
      NodeId out = t.activate(mlp(t, t.constant(x), p, "net", Activation::kTanh), Activation::kSigmoid);
      NodeId loss = t.sum(out);
      if (grad) t.backward(loss);
      return t.value(loss)(0, 0);
    };
    CHECK(grad_check(f, s, 1e-5) < 1e-4);
  }
  SUBCASE("epsilon precondition") {
    ParamStore<double> s;
    s.add("w", Tensor2<double>(1, 1));
    Objective f = [](ParamStore<double>&, bool) { return 0.0; };
    CHECK_THROWS_AS(grad_check(f, s, 0.0), std::invalid_argument);
  }
  SUBCASE("non-deterministic objective") {
    ParamStore<double> s;
    s.add("w", Tensor2<double>(1, 1));
    int calls = 0;
    Objective f = [&](ParamStore<double>&, bool) { return static_cast<double>(++calls); };
    CHECK_THROWS_AS(grad_check(f, s, 1e-5), std::runtime_error);
  }
}

TEST_CASE("tape ops gradient check") {
  // Exercises every op with a backward rule against finite differences.
  Rng rng(5);
  ParamStore<double> s;
  auto rnd = [&](std::size_t r, std::size_t c) {
    Tensor2<double> t(r, c);
    for (auto& v : t.data()) v = rng.uniform(-1, 1);
    return t;
  };
  s.add("keys", rnd(3, 2));
  s.add("ctx", rnd(2, 2));
  s.add("w", rnd(8, 1));
  s.add("a", rnd(4, 2));
  s.add("bias", rnd(1, 2));
  s.add("fb", rnd(3, 2));
  Objective f = [&](ParamStore<double>& p, bool grad) {
    Tape<double> t(p, grad);
    NodeId pf = t.pair_features(t.param("keys"), t.param("ctx"));
    NodeId sc = t.reshape(t.matmul(pf, t.param("w")), 2, 3);
    NodeId wts = t.zero_softmax_rows(sc);
    NodeId pooled = t.matmul(wts, t.param("keys"));                  // 2x2
    NodeId a = t.add_row(t.param("a"), t.param("bias"));             // 4x2
    NodeId g = t.gather_rows(a, {3, -1, 0, 3});                      // 4x2
    NodeId gm = t.group_mean_rows(g, t.param("fb"), {{0, 2}, {}, {1, 3}});  // 3x2
    std::vector<NodeId> rows = {pooled, gm};
    NodeId stacked = t.concat_rows(rows);                            // 5x2
    std::vector<NodeId> cols = {stacked, t.activate(stacked, Activation::kTanh)};
    NodeId wide = t.concat_cols(cols);                               // 5x4
    NodeId left = t.gather_rows(wide, {0, 1, 2, 3, 4});
    NodeId mixed = t.sub(t.mul(left, wide), t.affine(wide, 0.5, 0.1));
    NodeId col = t.matmul(mixed, t.constant(Tensor2<double>::from_rows({{1}, {-1}, {0.5}, {2}})));
    NodeId ll = t.logloss(col, {1, 0, 0.5, 1, 0});
    NodeId loss = t.add(t.sum(ll), t.sum(t.activate(col, Activation::kSigmoid)));
    if (grad) t.backward(loss);
    return t.value(loss)(0, 0);
  };
  CHECK(grad_check(f, s, 1e-6) < 1e-6);
}

TEST_CASE("zero softmax weights") {
  ParamStore<double> s;
  Tape<double> t(s);
  auto w = t.value(t.zero_softmax_rows(t.constant(Tensor2<double>::from_rows({{0}, {-40}}))));
  CHECK(w(0, 0) == 0.5);
  CHECK(w(1, 0) < 1e-17);
}

TEST_CASE("optimizer_step") {
  SUBCASE("sgd single step") {
    ParamStore<double> s;
    s.add("w", Tensor2<double>::from_rows({{1}}));
    s.grad(0)(0, 0) = 2;
    OptimizerState<double> opt;
    opt.learning_rate = 0.1;
    optimizer_step(s, opt);
    CHECK(s.value(0)(0, 0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(s.grad(0)(0, 0) == 0.0);
  }
  SUBCASE("zero gradient leaves parameters") {
    ParamStore<float> s;
    s.add("w", Tensor2<float>::from_rows({{1, -3}}));
    OptimizerState<float> opt;
    optimizer_step(s, opt);
    CHECK(s.value(0) == Tensor2<float>::from_rows({{1, -3}}));
  }
  SUBCASE("two steps on a quadratic") {
    ParamStore<double> s;
    s.add("w", Tensor2<double>::from_rows({{1}}));
    OptimizerState<double> opt;
    opt.learning_rate = 0.1;
    for (double expected : {0.8, 0.64}) {
      Tape<double> t(s, true);
      NodeId w = t.param("w");
      t.backward(t.sum(t.mul(w, w)));
      optimizer_step(s, opt);
      CHECK(s.value(0)(0, 0) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
  SUBCASE("non-finite gradient names the block") {
    ParamStore<double> s;
    s.add("good", Tensor2<double>(1, 1));
    s.add("bad", Tensor2<double>(1, 1));
    s.grad(1)(0, 0) = std::nan("");
    OptimizerState<double> opt;
    try {
      optimizer_step(s, opt);
      FAIL("expected an error");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("bad") != std::string::npos);
    }
  }
  SUBCASE("adam moves against the gradient") {
    ParamStore<double> s;
    s.add("w", Tensor2<double>::from_rows({{1, -1}}));
    s.grad(0) = Tensor2<double>::from_rows({{3, -3}});
    OptimizerState<double> opt;
    opt.kind = OptimizerKind::kAdam;
    opt.learning_rate = 0.01;
    optimizer_step(s, opt);
    CHECK(s.value(0)(0, 0) == doctest::Approx(0.99));
    CHECK(s.value(0)(0, 1) == doctest::Approx(-0.99));
  }
  SUBCASE("non-trainable blocks are not moved") {
    ParamStore<double> s;
    s.add("frozen", Tensor2<double>::from_rows({{1}}), false);
    s.grad(0)(0, 0) = 5;
    OptimizerState<double> opt;
    optimizer_step(s, opt);
    CHECK(s.value(0)(0, 0) == 1.0);
  }
}

TEST_CASE("determinism of a short SGD run") {
  auto run = [] {
    Rng rng(42);
    ParamStore<float> s;
    add_mlp_params(s, "m", {3, 5, 1}, rng);
    OptimizerState<float> opt;
    Tensor2<float> x(4, 3);
    for (auto& v : x.data()) v = static_cast<float>(rng.uniform(-1, 1));
    for (int k = 0; k < 5; ++k) {
      Tape<float> t(s, true);
      t.backward(t.sum(mlp(t, t.constant(x), s, "m", Activation::kTanh)));
      optimizer_step(s, opt);
    }
    return s;
  };
  CHECK(run().same_values(run()));
}

TEST_CASE("rng helpers") {
  Rng a(1), b(1);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng r(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.index(7) < 7);
  }
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
}
