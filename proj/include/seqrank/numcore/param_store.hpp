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
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqrank/numcore/tensor.hpp"

namespace seqrank::num {

template <typename T>
struct ParamBlock {
  std::string name;
  Tensor2<T> value;
  Tensor2<T> grad;
  // Blocks that are copied rather than learned (the target critic).
  bool trainable = true;
};

/// Named parameter blocks, each with a gradient accumulator of identical
/// shape. Block order is insertion order and is part of the checkpoint.
template <typename T>
class ParamStore {
 public:
  std::size_t add(std::string name, Tensor2<T> value, bool trainable = true) {
    if (index_.count(name) != 0) throw std::invalid_argument("ParamStore: duplicate block " + name);
    const std::size_t id = blocks_.size();
    Tensor2<T> grad(value.rows(), value.cols());
    index_.emplace(name, id);
    blocks_.push_back({std::move(name), std::move(value), std::move(grad), trainable});
    return id;
  }

  bool contains(std::string_view name) const { return index_.find(std::string(name)) != index_.end(); }

  std::size_t index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw std::out_of_range("ParamStore: no block named " + std::string(name));
    return it->second;
  }

  std::size_t size() const { return blocks_.size(); }
  ParamBlock<T>& block(std::size_t i) { return blocks_.at(i); }
  const ParamBlock<T>& block(std::size_t i) const { return blocks_.at(i); }
  Tensor2<T>& value(std::size_t i) { return blocks_.at(i).value; }
  const Tensor2<T>& value(std::size_t i) const { return blocks_.at(i).value; }
  Tensor2<T>& grad(std::size_t i) { return blocks_.at(i).grad; }
  const Tensor2<T>& grad(std::size_t i) const { return blocks_.at(i).grad; }
  Tensor2<T>& value(std::string_view name) { return value(index(name)); }
  const Tensor2<T>& value(std::string_view name) const { return value(index(name)); }
  Tensor2<T>& grad(std::string_view name) { return grad(index(name)); }
  const Tensor2<T>& grad(std::string_view name) const { return grad(index(name)); }

  std::vector<ParamBlock<T>>& blocks() { return blocks_; }
  const std::vector<ParamBlock<T>>& blocks() const { return blocks_; }

  void zero_grad() {
    for (auto& b : blocks_) b.grad.fill(T{0});
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.value.size();
    return n;
  }

  template <typename U>
  ParamStore<U> cast() const {
    ParamStore<U> out;
    for (const auto& b : blocks_) out.add(b.name, b.value.template cast<U>(), b.trainable);
    return out;
  }

  /// Values and names only; gradients are transient.
  bool same_values(const ParamStore& o) const {
    if (blocks_.size() != o.blocks_.size()) return false;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (blocks_[i].name != o.blocks_[i].name || !(blocks_[i].value == o.blocks_[i].value)) return false;
    }
    return true;
  }

 private:
  std::vector<ParamBlock<T>> blocks_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace seqrank::num
