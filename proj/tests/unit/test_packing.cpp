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

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "seqrank/packing/knapsack.hpp"
#include "seqrank/packing/pack_batch.hpp"
#include "seqrank/packing/pairwise.hpp"

using namespace seqrank;
using namespace seqrank::pack;

namespace {

// Direct transcription of the greedy procedure with a brute-force first-fit
// scan, used to cross-check the plan's index maps.
std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> reference_map(
    const std::vector<std::size_t>& lengths) {
  const std::size_t cap = *std::max_element(lengths.begin(), lengths.end());
  std::vector<bool> used(lengths.size(), false);
  std::vector<std::size_t> sack_fill;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> m;
  for (std::size_t round = 0; round < lengths.size(); ++round) {
    std::size_t pick = lengths.size();
    for (std::size_t u = 0; u < lengths.size(); ++u)
      if (!used[u] && (pick == lengths.size() || lengths[u] > lengths[pick])) pick = u;
    used[pick] = true;
    std::size_t sack = sack_fill.size();
    for (std::size_t k = 0; k < sack_fill.size(); ++k)
      if (sack_fill[k] + lengths[pick] <= cap) {
        sack = k;
        break;
      }
    if (sack == sack_fill.size()) sack_fill.push_back(0);
    for (std::size_t l = 0; l < lengths[pick]; ++l) m[{pick, l}] = {sack, sack_fill[sack] + l};
    sack_fill[sack] += lengths[pick];
  }
  return m;
}

data::SessionBatch batch_with_lengths(const std::vector<std::size_t>& lengths) {
  data::SessionBatch b;
  for (std::size_t u = 0; u < lengths.size(); ++u) {
    data::UserHistory h;
    h.user_id = u + 1;
    for (std::size_t t = 0; t < lengths[u]; ++t) {
      data::QuerySession s;
      s.session_id = 100 * (u + 1) + t;
      s.timestamp = static_cast<std::int64_t>(t);
      data::ItemInteraction a, c;
      a.purchased = a.clicked = true;
      s.items = {a, c};
      h.sessions.push_back(s);
    }
    b.users.push_back(h);
  }
  return b;
}

}  // namespace

TEST_CASE("pairwise_sample worked examples") {
  num::Rng rng(5);
  const std::vector<std::uint8_t> two{1, 0};
  for (int i = 0; i < 50; ++i) CHECK(pairwise_sample(two, rng) == PairSample{0, 1});

  const std::vector<std::uint8_t> mid{0, 1, 0};
  std::size_t b_first = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto p = pairwise_sample(mid, rng);
    REQUIRE(p.a == 1);
    REQUIRE((p.b == 0 || p.b == 2));
    b_first += p.b == 0;
  }
  const double frac = static_cast<double>(b_first) / draws;
  CHECK(frac >= 0.49);
  CHECK(frac <= 0.51);

  const std::vector<std::uint8_t> both{1, 1};
  std::size_t forward = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto p = pairwise_sample(both, rng);
    REQUIRE(p.a != p.b);
    forward += p.a == 0;
  }
  CHECK(forward > 4700);
  CHECK(forward < 5300);

  const std::vector<std::uint8_t> one{1}, bad{0, 2};
  CHECK_THROWS_AS(pairwise_sample(one, rng), std::invalid_argument);
  CHECK_THROWS_AS(pairwise_sample(bad, rng), std::invalid_argument);
}

TEST_CASE("pairwise_sample is uniform over the admissible set") {
  num::Rng rng(9);
  const std::vector<std::uint8_t> labels{1, 0, 1, 0, 0};
  std::map<std::pair<std::size_t, std::size_t>, int> counts;
  for (int i = 0; i < 60000; ++i) {
    const auto p = pairwise_sample(labels, rng);
    REQUIRE(labels[p.a] == 1);
    REQUIRE(labels[p.b] == 0);
    ++counts[{p.a, p.b}];
  }
  CHECK(counts.size() == 6);
  for (const auto& [k, c] : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("greedy_knapsack worked examples") {
  SUBCASE("[3,3,3] never merges") {
    const std::vector<std::size_t> l{3, 3, 3};
    const auto plan = greedy_knapsack(l);
    CHECK(plan.packed_user_count() == 3);
    for (std::size_t r = 0; r < 3; ++r) {
      std::size_t ones = 0;
      for (std::size_t c = 0; c < 3; ++c) ones += plan.start(r, c);
      CHECK(ones == 1);
    }
    CHECK(packing_stats(plan, l).compression() == 1.0);
  }
  SUBCASE("[4,2,1]") {
    const std::vector<std::size_t> l{4, 2, 1};
    const auto plan = greedy_knapsack(l);
    REQUIRE(plan.packed_user_count() == 2);
    CHECK(plan.capacity() == 4);
    for (std::size_t t = 0; t < 2; ++t) CHECK(plan.map(1, t) == Slot{1, t});
    CHECK(plan.map(2, 0) == Slot{1, 2});
    CHECK(plan.start(1, 0));
    CHECK(!plan.start(1, 1));
    CHECK(plan.start(1, 2));
    CHECK(!plan.start(1, 3));
    CHECK(!plan.occupied(1, 3));
    CHECK(plan.inverse(1, 2) == Step{2, 0});
    const auto st = packing_stats(plan, l);
    CHECK(st.compression() == 1.5);
    CHECK(st.padded_after() == doctest::Approx(1.0 - 7.0 / 8.0));
    CHECK(st.padded_before() == doctest::Approx(1.0 - 7.0 / 12.0));
  }
  SUBCASE("[2,1,1]") {
    const std::vector<std::size_t> l{2, 1, 1};
    const auto plan = greedy_knapsack(l);
    CHECK(plan.packed_user_count() == 2);
    CHECK(plan.row_length(0) == 2);
    CHECK(plan.row_length(1) == 2);
  }
  CHECK_THROWS_AS(greedy_knapsack(std::vector<std::size_t>{}), std::invalid_argument);
  CHECK_THROWS_AS(greedy_knapsack(std::vector<std::size_t>{2, 0}), std::invalid_argument);
}

TEST_CASE("greedy_knapsack properties on random lengths") {
  num::Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(200);
    std::vector<std::size_t> l(n);
    for (auto& x : l) x = 1 + rng.index(rng.bernoulli(0.5) ? 100 : 10);
    const auto plan = greedy_knapsack(l);
    const std::size_t total = std::accumulate(l.begin(), l.end(), std::size_t{0});
    const std::size_t cap = plan.capacity();
    CHECK(plan.packed_user_count() >= (total + cap - 1) / cap);
    CHECK(plan.packed_user_count() <= n);
    CHECK(plan.start_count() == n);
    const auto ref = reference_map(l);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t t = 0; t < l[u]; ++t) {
        const Slot s = plan.map(u, t);
        REQUIRE(ref.at({u, t}) == std::make_pair(s.row, s.col));
        REQUIRE(plan.inverse(s.row, s.col) == Step{u, t});
        REQUIRE(plan.start(s.row, s.col) == (t == 0));
        seen.insert({s.row, s.col});
      }
    CHECK(seen.size() == total);
    for (std::size_t r = 0; r < plan.packed_user_count(); ++r) {
      CHECK(plan.row_length(r) <= cap);
      CHECK(plan.start(r, 0));
      for (std::size_t c = 0; c < cap; ++c) {
        const auto st = plan.inverse(r, c);
        if (st) CHECK(plan.map(st->user, st->session) == Slot{r, c});
      }
    }
  }
}

TEST_CASE("pack_batch and unpack") {
  SUBCASE("identity for one user") {
    const auto b = batch_with_lengths({3});
    const auto lengths = b.lengths();
    const auto plan = greedy_knapsack(lengths);
    const auto pb = pack_batch(b, plan);
    for (std::size_t t = 0; t < 3; ++t) CHECK(*pb.sessions.at(0, t) == b.session(0, t));
  }
  SUBCASE("[4,2,1] layout") {
    const auto b = batch_with_lengths({4, 2, 1});
    const auto lengths = b.lengths();
    const auto plan = greedy_knapsack(lengths);
    const auto pb = pack_batch(b, plan);
    CHECK(*pb.sessions.at(1, 0) == b.session(1, 0));
    CHECK(*pb.sessions.at(1, 1) == b.session(1, 1));
    CHECK(*pb.sessions.at(1, 2) == b.session(2, 0));
    CHECK(pb.masked(1, 3));
    CHECK(pb.occupied() == 7);

    std::vector<std::vector<int>> labels{{1, 2, 3, 4}, {5, 6}, {7}};
    const auto grid = pack_values(labels, plan);
    CHECK(*grid.at(1, 2) == 7);
    CHECK(unpack(grid, plan) == labels);

    auto broken = grid;
    broken.at(1, 2).reset();
    CHECK_THROWS_AS(unpack(broken, plan), std::logic_error);
  }
  SUBCASE("length mismatch") {
    const auto b = batch_with_lengths({2, 2});
    const std::vector<std::size_t> other{2, 1};
    const auto plan = greedy_knapsack(other);
    CHECK_THROWS_AS(pack_batch(b, plan), std::invalid_argument);
  }
  SUBCASE("identity plan round trip") {
    const std::vector<std::size_t> l{3, 1, 2};
    const auto plan = identity_plan(l);
    std::vector<std::vector<int>> v{{1, 2, 3}, {4}, {5, 6}};
    CHECK(unpack(pack_values(v, plan), plan) == v);
    CHECK(packing_stats(plan, l).padded_after() == packing_stats(plan, l).padded_before());
  }
}

TEST_CASE("packing stats aggregate across batches") {
  const std::vector<std::size_t> a{4, 2, 1}, b{3, 3, 3};
  auto s = packing_stats(greedy_knapsack(a), a);
  s += packing_stats(greedy_knapsack(b), b);
  CHECK(s.users == 6);
  CHECK(s.packed_rows == 5);
  CHECK(s.compression() == doctest::Approx(1.2));
  CHECK(s.padded_after() == doctest::Approx(1.0 - 16.0 / 17.0));
}
