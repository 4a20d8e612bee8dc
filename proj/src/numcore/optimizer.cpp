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

#include "seqrank/numcore/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seqrank::num {

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adam") return OptimizerKind::kAdam;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

std::string_view optimizer_name(OptimizerKind kind) {
  return kind == OptimizerKind::kAdam ? "adam" : "sgd";
}

template <typename T>
void optimizer_step(ParamStore<T>& params, OptimizerState<T>& opt) {
  if (!(opt.learning_rate > 0.0)) throw std::invalid_argument("optimizer_step: learning rate must be > 0");
  for (const auto& b : params.blocks()) {
    if (b.trainable && !b.grad.all_finite())
      throw std::domain_error("optimizer_step: non-finite gradient in block '" + b.name + "'");
  }
  const T lr = static_cast<T>(opt.learning_rate);
  if (opt.kind == OptimizerKind::kSgd) {
    for (auto& b : params.blocks()) {
      if (!b.trainable) continue;
      for (std::size_t i = 0; i < b.value.size(); ++i) b.value[i] -= lr * b.grad[i];
    }
  } else {
    if (opt.first_moment.size() != params.size()) {
      opt.first_moment.clear();
      opt.second_moment.clear();
      for (const auto& b : params.blocks()) {
        opt.first_moment.emplace_back(b.value.rows(), b.value.cols());
        opt.second_moment.emplace_back(b.value.rows(), b.value.cols());
      }
    }
    ++opt.steps;
    const double c1 = 1.0 - std::pow(opt.beta1, static_cast<double>(opt.steps));
    const double c2 = 1.0 - std::pow(opt.beta2, static_cast<double>(opt.steps));
    const T b1 = static_cast<T>(opt.beta1), b2 = static_cast<T>(opt.beta2);
    for (std::size_t k = 0; k < params.size(); ++k) {
      auto& b = params.block(k);
      if (!b.trainable) continue;
      auto& m = opt.first_moment[k];
      auto& v = opt.second_moment[k];
      for (std::size_t i = 0; i < b.value.size(); ++i) {
        const T g = b.grad[i];
        m[i] = b1 * m[i] + (T{1} - b1) * g;
        v[i] = b2 * v[i] + (T{1} - b2) * g * g;
        const T mhat = m[i] / static_cast<T>(c1);
        const T vhat = v[i] / static_cast<T>(c2);
        b.value[i] -= lr * mhat / (std::sqrt(vhat) + static_cast<T>(opt.epsilon));
      }
    }
  }
  params.zero_grad();
}

template void optimizer_step<float>(ParamStore<float>&, OptimizerState<float>&);
template void optimizer_step<double>(ParamStore<double>&, OptimizerState<double>&);

}  // namespace seqrank::num
