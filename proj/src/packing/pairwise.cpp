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

#include "seqrank/packing/pairwise.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace seqrank::pack {

PairSample pairwise_sample(std::span<const std::uint8_t> labels, num::Rng& rng) {
  const std::size_t n = labels.size();
  if (n < 2) throw std::invalid_argument("pairwise_sample: need at least 2 items, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (labels[i] > 1) throw std::invalid_argument("pairwise_sample: label " + std::to_string(i) + " is not binary");

  const auto [lo, hi] = std::minmax_element(labels.begin(), labels.end());
  if (*lo == *hi) {
    const std::size_t a = rng.index(n);
    std::size_t b = rng.index(n - 1);
    if (b >= a) ++b;
    return {a, b};
  }
  std::vector<std::size_t> top, bottom;
  for (std::size_t i = 0; i < n; ++i) (labels[i] == *hi ? top : bottom).push_back(i);
  const std::size_t a = top[rng.index(top.size())];
  const std::size_t b = bottom[rng.index(bottom.size())];
  return {a, b};
}

}  // namespace seqrank::pack
