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

#include <cmath>
#include <stdexcept>

namespace seqrank::num {

template <typename T>
void require_finite(T x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite input");
}

/// Logistic function. The branch on sign keeps exp() from overflowing.
template <typename T>
T sigmoid(T x) {
  require_finite(x, "sigmoid");
  if (x >= T{0}) return T{1} / (T{1} + std::exp(-x));
  const T e = std::exp(x);
  return e / (T{1} + e);
}

/// log(sigmoid(x)) as one primitive: -softplus(-x).
template <typename T>
T log_sigmoid(T x) {
  require_finite(x, "log_sigmoid");
  if (x >= T{0}) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

}  // namespace seqrank::num
