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
#include <string_view>
#include <vector>

#include "seqrank/numcore/param_store.hpp"

namespace seqrank::num {

enum class OptimizerKind { kSgd, kAdam };

OptimizerKind parse_optimizer(std::string_view name);
std::string_view optimizer_name(OptimizerKind kind);

/// First-order update rule. SGD keeps no state; Adam keeps per-block first
/// and second moments, allocated on the first step.
template <typename T>
struct OptimizerState {
  OptimizerKind kind = OptimizerKind::kSgd;
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t steps = 0;
  std::vector<Tensor2<T>> first_moment;
  std::vector<Tensor2<T>> second_moment;
};

/// Moves every trainable block against its gradient, then zeroes all
/// gradients. A non-finite gradient entry throws std::domain_error naming
/// the block, and leaves the parameters untouched.
template <typename T>
void optimizer_step(ParamStore<T>& params, OptimizerState<T>& opt);

}  // namespace seqrank::num
