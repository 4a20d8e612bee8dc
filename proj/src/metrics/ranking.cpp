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

#include "seqrank/metrics/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace seqrank::metrics {

namespace {

int sign(double x) { return (x > 0) - (x < 0); }

void check_lengths(std::span<const double> p, std::span<const std::uint8_t> t, const char* who) {
  if (p.size() != t.size())
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(p.size()) + " scores for " +
                                std::to_string(t.size()) + " labels");
  for (auto l : t)
    if (l > 1) throw std::invalid_argument(std::string(who) + ": labels must be binary");
}

}  // namespace

std::int64_t sign_concordance(std::span<const double> p, std::span<const std::uint8_t> t) {
  check_lengths(p, t, "auc_sign");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) s += sign(p[i] - p[j]) * (int(t[i]) - int(t[j]));
  return s;
}

double auc_sign(std::span<const double> p, std::span<const std::uint8_t> t) {
  if (p.size() < 2) throw std::invalid_argument("auc_sign: needs at least 2 items");
  const double pairs = static_cast<double>(p.size()) * static_cast<double>(p.size() - 1) / 2.0;
  return static_cast<double>(sign_concordance(p, t)) / pairs;
}

double roc_auc(std::span<const double> p, std::span<const std::uint8_t> t) {
  check_lengths(p, t, "roc_auc");
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  double rank_sum = 0.0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && p[order[j]] == p[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k)
      if (t[order[k]]) rank_sum += avg;
    i = j;
  }
  for (auto l : t) pos += l;
  const std::size_t neg = t.size() - pos;
  if (pos == 0 || neg == 0) throw std::invalid_argument("roc_auc: needs both positive and negative labels");
  const double np = static_cast<double>(pos), nn = static_cast<double>(neg);
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

double ndcg(std::span<const double> p, std::span<const std::uint8_t> t) {
  check_lengths(p, t, "ndcg");
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  double dcg = 0.0, ideal = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double discount = std::log2(static_cast<double>(i) + 2.0);
    dcg += (std::exp2(static_cast<double>(t[order[i]])) - 1.0) / discount;
    positives += t[i];
  }
  if (positives == 0) throw std::invalid_argument("ndcg: needs at least one positive label");
  for (std::size_t i = 0; i < positives; ++i) ideal += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  return dcg / ideal;
}

bool auc_defined(std::span<const std::uint8_t> t) {
  if (t.size() < 2) return false;
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  return *lo != *hi;
}

bool ndcg_defined(std::span<const std::uint8_t> t) {
  return std::any_of(t.begin(), t.end(), [](std::uint8_t l) { return l != 0; });
}

SessionAuc session_auc(const std::vector<ScoredSession>& sessions) {
  SessionAuc out;
  double total = 0.0;
  for (const auto& s : sessions) {
    if (!auc_defined(s.labels)) {
      ++out.skipped;
      continue;
    }
    total += auc_sign(s.scores, s.labels);
    ++out.evaluated;
  }
  if (out.evaluated == 0) throw std::invalid_argument("session_auc: no session has both labels and two items");
  out.mean = total / static_cast<double>(out.evaluated);
  return out;
}

}  // namespace seqrank::metrics
