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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "fixtures.hpp"
#include "forward_checks.hpp"
#include "objective_checks.hpp"
#include "seqrank/datamodel/generator.hpp"
#include "seqrank/datamodel/kv_config.hpp"
#include "seqrank/losses/losses.hpp"
#include "seqrank/metrics/ranking.hpp"
#include "seqrank/models/checkpoint.hpp"
#include "seqrank/packing/knapsack.hpp"
#include "seqrank/packing/pack_batch.hpp"
#include "seqrank/serving/replay.hpp"
#include "seqrank/training/experiments.hpp"
#include "seqrank/training/trainer.hpp"

namespace fs = std::filesystem;
using namespace seqrank;
using model::Variant;

namespace {

const fs::path kSource = SEQRANK_SOURCE_DIR;
const fs::path kWork = fs::path(SEQRANK_BINARY_DIR) / "acceptance_artifacts";

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

struct Bench {
  data::KvConfig kv;
  data::GeneratorConfig gen;
  model::ModelConfig model;
  train::TrainConfig train;
};

Bench load_bench(const fs::path& path) {
  Bench b;
  b.kv = data::KvConfig::load(path.string());
  b.gen = data::GeneratorConfig::from_kv(b.kv);
  b.model = model::ModelConfig::from_kv(b.kv);
  b.model.adopt_vocab(b.gen);
  b.train = train::TrainConfig::from_kv(b.kv);
  return b;
}

// A checkpoint written by this suite together with the generator it serves.
struct ProducedCheckpoint {
  fs::path path;
  data::GeneratorConfig gen;
};
std::vector<ProducedCheckpoint> g_checkpoints;

void keep_checkpoint(const std::string& name, const model::Checkpoint& c, const data::GeneratorConfig& gen) {
  const auto path = kWork / name;
  model::save_checkpoint(path.string(), c);
  g_checkpoints.push_back({path, gen});
}

// Criterion 8 runs first so its checkpoints exist for criterion 7.
struct LadderResult {
  train::TrainResult dnn, rnn;
  double seconds = 0;
};
LadderResult g_ladder;

Outcome gradient_oracle() {
  double worst = 0;
  std::size_t checks = 0;
  const Variant supervised[] = {Variant::kDnn, Variant::kDinS, Variant::kRnn};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    worst = std::max(worst, testing::objective_grad_error(supervised[seed % 3], 1000 + seed));
    worst = std::max(worst, testing::objective_grad_error(Variant::kS3ddpg, 2000 + seed));
    checks += 2;
  }
  return {worst < 1e-4, fmt("max relative error %.3g over %zu objective checks (limit 1e-4)", worst, checks)};
}

Outcome packing_correctness() {
  num::Rng rng(2024);
  std::size_t failures = 0, sacks_total = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.index(200);
    std::vector<std::size_t> l(n);
    const std::size_t top = 1 + rng.index(100);
    for (auto& x : l) x = 1 + rng.index(top);
    const auto plan = pack::greedy_knapsack(l);
    const std::size_t total = std::accumulate(l.begin(), l.end(), std::size_t{0});
    const std::size_t cap = plan.capacity();
    bool ok = cap == *std::max_element(l.begin(), l.end());
    ok = ok && plan.packed_user_count() >= (total + cap - 1) / cap && plan.packed_user_count() <= n;
    ok = ok && plan.start_count() == n;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t u = 0; u < n && ok; ++u)
      for (std::size_t t = 0; t < l[u] && ok; ++t) {
        const auto s = plan.map(u, t);
        ok = s.row < plan.packed_user_count() && s.col < cap && plan.inverse(s.row, s.col) == pack::Step{u, t} &&
             plan.start(s.row, s.col) == (t == 0);
        seen.insert({s.row, s.col});
      }
    ok = ok && seen.size() == total;
    for (std::size_t r = 0; r < plan.packed_user_count() && ok; ++r) {
      ok = plan.row_length(r) <= cap;
      for (std::size_t c = 0; c < cap && ok; ++c) {
        const auto st = plan.inverse(r, c);
        if (st) ok = plan.map(st->user, st->session) == pack::Slot{r, c};
      }
    }
    failures += !ok;
    sacks_total += plan.packed_user_count();
  }
  return {failures == 0, fmt("%zu of 1000 multisets violated an identity or bound (%zu sacks built)", failures,
                             sacks_total)};
}

Outcome packed_equivalence() {
  num::Rng rng(99);
  double forward_gap = 0;
  const Variant variants[] = {Variant::kRnn, Variant::kS3ddpg};
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = testing::make_world(variants[trial % 2], 5000 + trial, 2 + rng.index(7), 2 + rng.index(7));
    forward_gap = std::max(forward_gap, testing::packed_gap(w, 6000 + trial));
  }
  double epoch_gap = 0;
  std::string worst_block;
  for (auto v : variants) {
    auto gen = testing::tiny_generator(44, 24, 8);
    gen.days = 4;
    const auto split = train::split_by_day(data::generate_log(gen));
    train::TrainConfig tc;
    tc.batch_users = 8;
    const auto c = train::compare_packed_epoch(testing::tiny_model(v, gen), split.train, tc);
    if (c.max_param_diff >= epoch_gap) {
      epoch_gap = c.max_param_diff;
      worst_block = c.worst_block;
    }
  }
  return {forward_gap <= 1e-6 && epoch_gap <= 1e-6,
          fmt("forward max |diff| %.3g over 100 pairs; one-epoch parameter max |diff| %.3g (block %s); limit 1e-6",
              forward_gap, epoch_gap, worst_block.c_str())};
}

Outcome bellman_zero() {
  // The oracle builds q backwards from the weakened Bellman recursion.
  num::Rng rng(4);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> r(1 + rng.index(20)), q(r.size());
    for (auto& x : r) x = -rng.uniform(0, 5);
    double next = 0;
    for (std::size_t t = r.size(); t-- > 0;) next = q[t] = r[t] + 0.8 * next;
    worst = std::max(worst, loss::td_loss({q}, {r}, 0.8, {q}));
  }
  return {worst <= 1e-12, fmt("max td_loss %.3g over 100 sequences, gamma 0.8 (limit 1e-12)", worst)};
}

Outcome reward_identity() {
  num::Rng rng(5);
  std::size_t mismatches = 0;
  for (int i = 0; i < 100000; ++i) {
    const double eta = rng.uniform(-60, 60);
    const double lambda = rng.bernoulli(0.5) ? 1.0 : 0.0;
    const double r = loss::reward(eta, lambda), neg = -loss::pairwise_logloss(eta, lambda);
    mismatches += std::memcmp(&r, &neg, sizeof r) != 0;
  }
  return {mismatches == 0, fmt("%zu bitwise mismatches in 100000 draws", mismatches)};
}

Outcome metric_oracles() {
  num::Rng rng(6);
  std::size_t brute_fail = 0, roc_fail = 0, roc_checked = 0, literal_agree = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.index(12);
    std::vector<double> p(n);
    std::vector<std::uint8_t> t(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = rng.uniform();  // continuous draws: no ties
      t[i] = rng.bernoulli(0.4);
    }
    long conc = 0, disc = 0, pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
      pos += t[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        if (t[i] == t[j]) continue;
        const bool pos_first = t[i] > t[j];
        ((p[i] > p[j]) == pos_first ? conc : disc) += 1;
      }
    }
    const double brute = static_cast<double>(conc - disc) / (n * (n - 1) / 2.0);
    brute_fail += metrics::auc_sign(p, t) != brute;
    if (pos == 0 || pos == static_cast<long>(n)) continue;
    ++roc_checked;
    const long pq = pos * (static_cast<long>(n) - pos);
    const double roc_pairs = static_cast<double>(conc) / static_cast<double>(pq);
    const double from_sign = static_cast<double>(metrics::sign_concordance(p, t) + pq) / (2.0 * pq);
    roc_fail += metrics::roc_auc(p, t) != roc_pairs || from_sign != roc_pairs;
    literal_agree += std::abs((metrics::auc_sign(p, t) + 1) / 2 - roc_pairs) < 1e-12;
  }
  using S = std::vector<double>;
  using L = std::vector<std::uint8_t>;
  const double nd_low = metrics::ndcg(S{1, 2, 3}, L{1, 0, 0});
  const double nd_top = metrics::ndcg(S{3, 2, 1}, L{1, 0, 0});
  const double nd_all = metrics::ndcg(S{1, 2, 3}, L{1, 1, 1});
  const bool examples = std::abs(nd_low - 0.5) <= 1e-12 && nd_top == 1.0 && nd_all == 1.0 &&
                        metrics::auc_sign(S{0.9, 0.1}, L{1, 0}) == 1.0 &&
                        metrics::auc_sign(S{0.5, 0.5}, L{1, 0}) == 0.0 &&
                        metrics::auc_sign(S{3, 2, 1}, L{1, 0, 1}) == 0.0;
  return {brute_fail == 0 && roc_fail == 0 && examples,
          fmt("brute-force mismatches %zu/1000; ROC = (S+PQ)/2PQ mismatches %zu/%zu; ndcg([1,2,3],[1,0,0]) = %.15f; "
              "verbatim (auc_sign+1)/2 equals ROC on %zu/%zu (only n = 2 is guaranteed)",
              brute_fail, roc_fail, roc_checked, nd_low, literal_agree, roc_checked)};
}

Outcome serving_parity() {
  // Models from this suite: the benchmark RNN, a tiny S3DDPG and RNN trained
  // through the library, and one trained through the command line.
  const auto tiny = load_bench(kSource / "tests/data/tiny.cfg");
  {
    auto cfg = tiny.model;
    for (auto v : {Variant::kS3ddpg, Variant::kRnn}) {
      cfg.variant = v;
      auto tc = tiny.train;
      const auto split = train::split_by_day(data::generate_log(tiny.gen));
      const auto r = train::train(cfg, split.train, split.validation, tc);
      keep_checkpoint(std::string("tiny_") + (v == Variant::kRnn ? "rnn" : "s3ddpg") + ".ckpt", r.checkpoint(tc),
                      tiny.gen);
    }
    const auto path = kWork / "tiny_cli_s3ddpg.ckpt";
    std::ostringstream out, err;
    const int code = cli::run({"seqrank", "train", "--config", (kSource / "tests/data/tiny.cfg").string(),
                               "--variant", "S3DDPG", "--seed", "8", "--out", path.string()},
                              out, err);
    if (code != 0) return {false, "command-line training failed: " + err.str()};
    auto gen = tiny.gen;
    gen.seed = 8;
    g_checkpoints.push_back({path, gen});
  }
  double worst = 0;
  std::size_t audited = 0, scores = 0, purchase_free = 0;
  for (const auto& pc : g_checkpoints) {
    const auto ckpt = model::load_checkpoint(pc.path.string());
    data::KvConfig mk;
    for (const auto& [k, v] : ckpt.config.entries())
      if (k.rfind("model.", 0) == 0) mk.set(k, v);
    const auto cfg = model::ModelConfig::from_kv(mk);
    if (!model::is_recurrent(cfg.variant)) continue;
    // Same catalog, fresh users, and sessions without purchases mixed in.
    auto gen = pc.gen;
    gen.users = std::min<std::size_t>(gen.users, 150);
    gen.eligible_fraction = 0.6;
    const auto log = data::generate_log(gen);
    for (const auto& u : log)
      for (const auto& s : u.sessions) purchase_free += !s.has_purchase();
    serve::ServingState state;
    try {
      const auto r = serve::serve_replay(cfg, ckpt.params, log, state, true, 1e-6);
      worst = std::max(worst, r.audit.max_abs_diff);
      scores += r.audit.scores_compared;
      ++audited;
    } catch (const std::exception& e) {
      return {false, pc.path.filename().string() + ": " + e.what()};
    }
  }
  return {audited >= 4 && purchase_free > 0,
          fmt("%zu recurrent checkpoints audited, %zu scores, max |diff| %.3g (limit 1e-6), %zu purchase-free sessions",
              audited, scores, worst, purchase_free)};
}

void run_ladder() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto bench = load_bench(kSource / "configs/bench.cfg");
  const auto split = train::split_by_day(data::generate_log(bench.gen), bench.train.eval_day);
  auto cfg = bench.model;
  cfg.variant = Variant::kDnn;
  g_ladder.dnn = train::train(cfg, split.train, split.validation, bench.train);
  keep_checkpoint("bench_dnn.ckpt", g_ladder.dnn.checkpoint(bench.train), bench.gen);
  cfg.variant = Variant::kRnn;
  g_ladder.rnn = train::train(cfg, split.train, split.validation, bench.train);
  keep_checkpoint("bench_rnn.ckpt", g_ladder.rnn.checkpoint(bench.train), bench.gen);
  g_ladder.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome frozen_ladder() {
  const double rnn = g_ladder.rnn.best_auc, dnn = g_ladder.dnn.best_auc, init = g_ladder.rnn.initial_auc;
  return {rnn - dnn >= 0.01 && rnn >= init + 0.05,
          fmt("RNN %.4f vs DNN %.4f (gap %.4f, need >= 0.01); RNN initial %.4f (gain %.4f, need >= 0.05); epochs "
              "%zu/%zu; trained in %.1f s",
              rnn, dnn, rnn - dnn, init, rnn - init, g_ladder.rnn.epochs.size(), g_ladder.dnn.epochs.size(),
              g_ladder.seconds)};
}

Outcome packing_efficiency() {
  const auto skewed = load_bench(kSource / "configs/skewed.cfg");
  const auto log = data::generate_log(skewed.gen);
  const auto s = pack::log_packing_stats(log, skewed.train.batch_users);
  std::size_t longest = 0;
  for (const auto& u : log) longest = std::max(longest, u.sessions.size());
  const double mean = static_cast<double>(s.sessions) / static_cast<double>(s.users);
  return {s.compression() >= 5.0 && s.padded_after() < s.padded_before(),
          fmt("compression %.2f (need >= 5); padded fraction %.3f -> %.3f; sessions per user max %zu / mean %.2f "
              "(configured 113 / 13.42)",
              s.compression(), s.padded_before(), s.padded_after(), longest, mean)};
}

Outcome mu_guard() {
  const std::string cfg = (kSource / "tests/data/tiny.cfg").string();
  std::ostringstream out, err, out1, err1;
  const int ok = cli::run({"seqrank", "sweep-mu", "--config", cfg, "--values", "0,0.5,0.99", "--max-epochs", "1"},
                          out, err);
  std::size_t rows = 0;
  for (char c : out.str()) rows += c == '\n';
  const int bad = cli::run({"seqrank", "sweep-mu", "--config", cfg, "--values", "1", "--max-epochs", "1"}, out1, err1);
  const bool refused = bad != 0 && err1.str().find("degenerates") != std::string::npos;
  return {ok == 0 && rows == 4 && refused,
          fmt("mu in {0, 0.5, 0.99}: exit %d with %zu rows; mu = 1: exit %d%s", ok, rows ? rows - 1 : 0, bad,
              refused ? " (degeneracy error)" : "")};
}

}  // namespace

int main() {
  fs::create_directories(kWork);
  std::vector<Criterion> criteria = {
      {1, "gradient oracle", 60, gradient_oracle},
      {2, "packing correctness", 10, packing_correctness},
      {3, "packed/unpacked equivalence", 120, packed_equivalence},
      {4, "Bellman-zero", 1, bellman_zero},
      {5, "reward/loss identity", 1, reward_identity},
      {6, "metric oracles", 5, metric_oracles},
      {7, "serving parity", 60, serving_parity},
      {8, "frozen benchmark ladder", 900, frozen_ladder},
      {9, "packing efficiency", 10, packing_efficiency},
      {10, "mu degeneracy guard", 1, mu_guard},
  };
  run_ladder();
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.id == 8) seconds = g_ladder.seconds;
    const bool in_time = seconds < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("criterion %2d %s  %s: %s [%.2f s, budget %.0f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.name.c_str(),
                o.detail.c_str(), seconds, c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
