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
#include <cstdint>
#include <vector>

namespace seqrank::data {

inline constexpr std::int64_t kSecondsPerDay = 86400;

struct IdQuad {
  std::uint32_t item = 0;
  std::uint32_t category = 0;
  std::uint32_t shop = 0;
  std::uint32_t brand = 0;
  bool operator==(const IdQuad&) const = default;
};

struct ItemInteraction {
  IdQuad ids;
  std::vector<float> dense;
  bool clicked = false;
  bool purchased = false;  // the label; generator guarantees purchased => clicked
  bool operator==(const ItemInteraction&) const = default;
};

struct QuerySession {
  std::uint64_t session_id = 0;
  std::int64_t timestamp = 0;  // seconds since the start of the log
  std::uint32_t query_id = 0;
  std::uint32_t query_category = 0;
  std::vector<float> query_dense;
  std::vector<ItemInteraction> items;

  int day() const { return static_cast<int>(timestamp / kSecondsPerDay); }
  std::vector<std::size_t> purchase_set() const;
  std::vector<std::uint8_t> labels() const;
  bool has_purchase() const;
  /// At least one purchase and at least two items.
  bool training_eligible() const;
  bool operator==(const QuerySession&) const = default;
};

struct UserHistory {
  std::uint64_t user_id = 0;
  std::vector<QuerySession> sessions;  // strictly increasing timestamps
  std::vector<IdQuad> longterm;        // pre-log behavior sequence, at most L_max long
  bool operator==(const UserHistory&) const = default;
};

std::size_t total_sessions(const std::vector<UserHistory>& histories);

/// Sessions with day < end_day that are training-eligible; users left with no
/// sessions are dropped. Purchase-free sessions never reach training.
std::vector<UserHistory> training_view(const std::vector<UserHistory>& histories, int end_day);

/// Keeps sessions with day <= last_day (and day >= first_day).
std::vector<UserHistory> day_window(const std::vector<UserHistory>& histories, int first_day, int last_day);

int last_day(const std::vector<UserHistory>& histories);

}  // namespace seqrank::data
