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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqrank::pack {

/// A position in the packed layout: packed row u', slot t' (both 0-based).
struct Slot {
  std::size_t row = 0;
  std::size_t col = 0;
  bool operator==(const Slot&) const = default;
};

/// A position in the original layout: user u, session t (both 0-based).
struct Step {
  std::size_t user = 0;
  std::size_t session = 0;
  bool operator==(const Step&) const = default;
};

/// Index map from (u, t) to packed (u', t') and back, plus start indicators.
/// Each original user occupies one contiguous run of its row.
class PackingPlan {
 public:
  PackingPlan() = default;
  PackingPlan(std::vector<std::size_t> lengths, std::vector<std::size_t> user_row,
              std::vector<std::size_t> user_offset, std::size_t row_count, std::size_t capacity);

  std::size_t user_count() const { return lengths_.size(); }
  std::size_t packed_user_count() const { return row_count_; }
  std::size_t capacity() const { return capacity_; }
  std::span<const std::size_t> lengths() const { return lengths_; }

  Slot map(std::size_t user, std::size_t session) const;
  std::optional<Step> inverse(std::size_t row, std::size_t col) const;
  bool start(std::size_t row, std::size_t col) const { return starts_.at(row * capacity_ + col) != 0; }
  bool occupied(std::size_t row, std::size_t col) const { return inverse_.at(row * capacity_ + col) >= 0; }
  std::size_t row_length(std::size_t row) const;
  /// Users placed in a row, in run order.
  const std::vector<std::size_t>& row_users(std::size_t row) const { return row_users_.at(row); }
  std::size_t start_count() const;

 private:
  std::vector<std::size_t> lengths_, user_row_, user_offset_;
  std::vector<std::vector<std::size_t>> row_users_;
  std::size_t row_count_ = 0, capacity_ = 0;
  std::vector<long> inverse_;  // flat row-major, encodes user * capacity + session, -1 when empty
  std::vector<unsigned char> starts_;
};

/// Longest user first (ties by index), each into the first sack that still
/// has room for all of its sessions, else a new sack. Capacity T' = max length.
PackingPlan greedy_knapsack(std::span<const std::size_t> lengths);

/// The naive layout: one row per user.
PackingPlan identity_plan(std::span<const std::size_t> lengths);

/// Values laid out over the packed (u', t') grid; empty cells are padding.
template <typename T>
struct PackedGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::optional<T>> cells;

  const std::optional<T>& at(std::size_t r, std::size_t c) const { return cells.at(r * cols + c); }
  std::optional<T>& at(std::size_t r, std::size_t c) { return cells.at(r * cols + c); }
  std::size_t filled() const {
    std::size_t n = 0;
    for (const auto& c : cells) n += c.has_value();
    return n;
  }
};

/// Places per-user sequences on the grid: out(m(u,t)) = in[u][t].
template <typename T>
PackedGrid<T> pack_values(const std::vector<std::vector<T>>& per_user, const PackingPlan& plan) {
  if (per_user.size() != plan.user_count())
    throw std::invalid_argument("pack: plan covers " + std::to_string(plan.user_count()) + " users, got " +
                                std::to_string(per_user.size()));
  PackedGrid<T> g;
  g.rows = plan.packed_user_count();
  g.cols = plan.capacity();
  g.cells.resize(g.rows * g.cols);
  for (std::size_t u = 0; u < per_user.size(); ++u) {
    if (per_user[u].size() != plan.lengths()[u])
      throw std::invalid_argument("pack: user " + std::to_string(u) + " has " + std::to_string(per_user[u].size()) +
                                  " sessions, plan expects " + std::to_string(plan.lengths()[u]));
    for (std::size_t t = 0; t < per_user[u].size(); ++t) {
      const Slot s = plan.map(u, t);
      g.at(s.row, s.col) = per_user[u][t];
    }
  }
  return g;
}

/// Inverse of pack_values: in[u][t] = grid(m(u,t)). Reading a padding cell
/// means the grid does not belong to this plan.
template <typename T>
std::vector<std::vector<T>> unpack(const PackedGrid<T>& grid, const PackingPlan& plan) {
  if (grid.rows != plan.packed_user_count() || grid.cols != plan.capacity())
    throw std::invalid_argument("unpack: grid shape does not match the plan");
  std::vector<std::vector<T>> out(plan.user_count());
  for (std::size_t u = 0; u < plan.user_count(); ++u) {
    out[u].reserve(plan.lengths()[u]);
    for (std::size_t t = 0; t < plan.lengths()[u]; ++t) {
      const Slot s = plan.map(u, t);
      const auto& cell = grid.at(s.row, s.col);
      if (!cell)
        throw std::logic_error("unpack: (" + std::to_string(u) + "," + std::to_string(t) + ") maps to masked slot (" +
                               std::to_string(s.row) + "," + std::to_string(s.col) + ")");
      out[u].push_back(*cell);
    }
  }
  return out;
}

struct PackingStats {
  std::size_t users = 0;
  std::size_t packed_rows = 0;
  std::size_t sessions = 0;
  std::size_t naive_slots = 0;   // users x T'
  std::size_t packed_slots = 0;  // rows x T'
  double compression() const { return packed_rows == 0 ? 1.0 : static_cast<double>(users) / packed_rows; }
  double padded_before() const { return naive_slots == 0 ? 0.0 : 1.0 - static_cast<double>(sessions) / naive_slots; }
  double padded_after() const { return packed_slots == 0 ? 0.0 : 1.0 - static_cast<double>(sessions) / packed_slots; }
  PackingStats& operator+=(const PackingStats& o);
};

PackingStats packing_stats(const PackingPlan& plan, std::span<const std::size_t> lengths);

}  // namespace seqrank::pack
