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
#include <span>

#include "seqrank/numcore/rng.hpp"

namespace seqrank::pack {

/// A sampled training pair, 0-based item indices within the session.
/// label(a) is the session's max label and label(b) its min label.
struct PairSample {
  std::size_t a = 0;
  std::size_t b = 0;
  bool operator==(const PairSample&) const = default;
};

/// Uniform draw from {(a,b) : label a = max, label b = min, a != b}. When all
/// labels agree this is every ordered pair of distinct items.
PairSample pairwise_sample(std::span<const std::uint8_t> labels, num::Rng& rng);

}  // namespace seqrank::pack
