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

#include <functional>
#include <string>

#include "seqrank/numcore/param_store.hpp"

namespace seqrank::num {

/// Evaluates a scalar loss at the store's current values. When
/// `accumulate_grad` is set it must also add d(loss)/d(param) into the
/// store's gradient buffers (typically via Tape::backward).
using Objective = std::function<double(ParamStore<double>&, bool accumulate_grad)>;

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::string worst_block;
  std::size_t worst_entry = 0;
  std::size_t entries_checked = 0;
};

/// Central-difference check of every trainable entry. The per-entry error is
/// |analytic - numeric| / max(1, |analytic|, |numeric|).
/// Throws std::invalid_argument for epsilon outside [1e-7, 1e-3] and
/// std::runtime_error if two evaluations at the same point disagree.
GradCheckReport grad_check_report(const Objective& loss_fn, ParamStore<double>& params, double epsilon);

double grad_check(const Objective& loss_fn, ParamStore<double>& params, double epsilon);

}  // namespace seqrank::num
