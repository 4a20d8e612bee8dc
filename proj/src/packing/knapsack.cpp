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

#include "seqrank/packing/knapsack.hpp"

#include <algorithm>
#include <numeric>

namespace seqrank::pack {

PackingPlan::PackingPlan(std::vector<std::size_t> lengths, std::vector<std::size_t> user_row,
                         std::vector<std::size_t> user_offset, std::size_t row_count, std::size_t capacity)
    : lengths_(std::move(lengths)),
      user_row_(std::move(user_row)),
      user_offset_(std::move(user_offset)),
      row_users_(row_count),
      row_count_(row_count),
      capacity_(capacity),
      inverse_(row_count * capacity, -1),
      starts_(row_count * capacity, 0) {
  if (user_row_.size() != lengths_.size() || user_offset_.size() != lengths_.size())
    throw std::invalid_argument("PackingPlan: per-user arrays disagree in length");
  std::vector<std::pair<std::size_t, std::size_t>> order;  // (offset, user) per row
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> runs(row_count);
  for (std::size_t u = 0; u < lengths_.size(); ++u) {
    const std::size_t r = user_row_[u], off = user_offset_[u], len = lengths_[u];
    if (r >= row_count || len == 0 || off + len > capacity)
      throw std::invalid_argument("PackingPlan: user " + std::to_string(u) + " does not fit its row");
    for (std::size_t t = 0; t < len; ++t) {
      long& cell = inverse_[r * capacity + off + t];
      if (cell >= 0) throw std::invalid_argument("PackingPlan: overlapping runs in row " + std::to_string(r));
      cell = static_cast<long>(u * capacity + t);
    }
    starts_[r * capacity + off] = 1;
    runs[r].emplace_back(off, u);
  }
  for (std::size_t r = 0; r < row_count; ++r) {
    std::sort(runs[r].begin(), runs[r].end());
    for (const auto& [off, u] : runs[r]) row_users_[r].push_back(u);
  }
}

Slot PackingPlan::map(std::size_t user, std::size_t session) const {
  if (user >= lengths_.size() || session >= lengths_[user])
    throw std::out_of_range("PackingPlan::map: (" + std::to_string(user) + "," + std::to_string(session) +
                            ") outside the plan");
  return {user_row_[user], user_offset_[user] + session};
}

std::optional<Step> PackingPlan::inverse(std::size_t row, std::size_t col) const {
  if (row >= row_count_ || col >= capacity_) throw std::out_of_range("PackingPlan::inverse: slot outside the grid");
  const long v = inverse_[row * capacity_ + col];
  if (v < 0) return std::nullopt;
  const auto uv = static_cast<std::size_t>(v);
  return Step{uv / capacity_, uv % capacity_};
}

std::size_t PackingPlan::row_length(std::size_t row) const {
  std::size_t n = 0;
  for (std::size_t u : row_users_.at(row)) n += lengths_[u];
  return n;
}

std::size_t PackingPlan::start_count() const {
  return static_cast<std::size_t>(std::count(starts_.begin(), starts_.end(), 1));
}

PackingPlan greedy_knapsack(std::span<const std::size_t> lengths) {
  if (lengths.empty()) throw std::invalid_argument("greedy_knapsack: no users");
  for (std::size_t u = 0; u < lengths.size(); ++u)
    if (lengths[u] == 0) throw std::invalid_argument("greedy_knapsack: user " + std::to_string(u) + " has no sessions");
  const std::size_t capacity = *std::max_element(lengths.begin(), lengths.end());

  std::vector<std::size_t> order(lengths.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return lengths[x] > lengths[y]; });

  std::vector<std::size_t> fill;  // occupied length per sack
  std::vector<std::size_t> row(lengths.size()), offset(lengths.size());
  for (std::size_t u : order) {
    std::size_t k = 0;
    while (k < fill.size() && fill[k] + lengths[u] > capacity) ++k;
    if (k == fill.size()) fill.push_back(0);
    row[u] = k;
    offset[u] = fill[k];
    fill[k] += lengths[u];
  }
  return PackingPlan(std::vector<std::size_t>(lengths.begin(), lengths.end()), std::move(row), std::move(offset),
                     fill.size(), capacity);
}

PackingPlan identity_plan(std::span<const std::size_t> lengths) {
  if (lengths.empty()) throw std::invalid_argument("identity_plan: no users");
  const std::size_t capacity = *std::max_element(lengths.begin(), lengths.end());
  std::vector<std::size_t> row(lengths.size()), offset(lengths.size(), 0);
  std::iota(row.begin(), row.end(), 0);
  return PackingPlan(std::vector<std::size_t>(lengths.begin(), lengths.end()), std::move(row), std::move(offset),
                     lengths.size(), capacity);
}

PackingStats& PackingStats::operator+=(const PackingStats& o) {
  users += o.users;
  packed_rows += o.packed_rows;
  sessions += o.sessions;
  naive_slots += o.naive_slots;
  packed_slots += o.packed_slots;
  return *this;
}

PackingStats packing_stats(const PackingPlan& plan, std::span<const std::size_t> lengths) {
  if (lengths.size() != plan.user_count()) throw std::invalid_argument("packing_stats: lengths do not match the plan");
  PackingStats s;
  s.users = lengths.size();
  s.packed_rows = plan.packed_user_count();
  s.sessions = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
  s.naive_slots = s.users * plan.capacity();
  s.packed_slots = s.packed_rows * plan.capacity();
  return s;
}

}  // namespace seqrank::pack
