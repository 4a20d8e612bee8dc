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

#include "seqrank/datamodel/types.hpp"

#include <algorithm>

namespace seqrank::data {

std::vector<std::size_t> QuerySession::purchase_set() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i].purchased) out.push_back(i);
  return out;
}

std::vector<std::uint8_t> QuerySession::labels() const {
  std::vector<std::uint8_t> out(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) out[i] = items[i].purchased ? 1 : 0;
  return out;
}

bool QuerySession::has_purchase() const {
  return std::any_of(items.begin(), items.end(), [](const ItemInteraction& it) { return it.purchased; });
}

bool QuerySession::training_eligible() const { return items.size() >= 2 && has_purchase(); }

std::size_t total_sessions(const std::vector<UserHistory>& histories) {
  std::size_t n = 0;
  for (const auto& h : histories) n += h.sessions.size();
  return n;
}

std::vector<UserHistory> training_view(const std::vector<UserHistory>& histories, int end_day) {
  std::vector<UserHistory> out;
  for (const auto& h : histories) {
    UserHistory u;
    u.user_id = h.user_id;
    u.longterm = h.longterm;
    for (const auto& s : h.sessions)
      if (s.day() < end_day && s.training_eligible()) u.sessions.push_back(s);
    if (!u.sessions.empty()) out.push_back(std::move(u));
  }
  return out;
}

std::vector<UserHistory> day_window(const std::vector<UserHistory>& histories, int first_day, int last_day) {
  std::vector<UserHistory> out;
  out.reserve(histories.size());
  for (const auto& h : histories) {
    UserHistory u;
    u.user_id = h.user_id;
    u.longterm = h.longterm;
    for (const auto& s : h.sessions)
      if (s.day() >= first_day && s.day() <= last_day) u.sessions.push_back(s);
    out.push_back(std::move(u));
  }
  return out;
}

int last_day(const std::vector<UserHistory>& histories) {
  int d = -1;
  for (const auto& h : histories)
    for (const auto& s : h.sessions) d = std::max(d, s.day());
  return d;
}

}  // namespace seqrank::data
