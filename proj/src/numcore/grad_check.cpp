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

#include "seqrank/numcore/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace seqrank::num {

GradCheckReport grad_check_report(const Objective& loss_fn, ParamStore<double>& params, double epsilon) {
  if (!(epsilon >= 1e-7 && epsilon <= 1e-3))
    throw std::invalid_argument("grad_check: epsilon must lie in [1e-7, 1e-3]");

  params.zero_grad();
  const double base = loss_fn(params, true);
  std::vector<Tensor2<double>> analytic;
  for (const auto& b : params.blocks()) analytic.push_back(b.grad);
  params.zero_grad();
  const double again = loss_fn(params, false);
  if (base != again) throw std::runtime_error("grad_check: objective is not deterministic");

  GradCheckReport report;
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto& block = params.block(k);
    if (!block.trainable) continue;
    for (std::size_t i = 0; i < block.value.size(); ++i) {
      const double saved = block.value[i];
      block.value[i] = saved + epsilon;
      const double up = loss_fn(params, false);
      block.value[i] = saved - epsilon;
      const double down = loss_fn(params, false);
      block.value[i] = saved;
      const double numeric = (up - down) / (2.0 * epsilon);
      const double a = analytic[k][i];
      const double err = std::abs(a - numeric) / std::max({1.0, std::abs(a), std::abs(numeric)});
      ++report.entries_checked;
      if (err > report.max_relative_error || !std::isfinite(err)) {
        report.max_relative_error = std::isfinite(err) ? err : INFINITY;
        report.worst_block = block.name;
        report.worst_entry = i;
      }
    }
  }
  params.zero_grad();
  return report;
}

double grad_check(const Objective& loss_fn, ParamStore<double>& params, double epsilon) {
  return grad_check_report(loss_fn, params, epsilon).max_relative_error;
}

}  // namespace seqrank::num
