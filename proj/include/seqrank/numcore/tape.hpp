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
#include <string_view>
#include <vector>

#include "seqrank/numcore/param_store.hpp"
#include "seqrank/numcore/tensor.hpp"

namespace seqrank::num {

enum class Activation { kIdentity, kTanh, kRelu, kSigmoid };

Activation parse_activation(std::string_view name);
std::string_view activation_name(Activation a);

using NodeId = std::uint32_t;

/// Reverse-mode gradient tape over Tensor2 values.
///
/// Every op appends a node holding its forward value. backward() walks the
/// nodes in reverse creation order and accumulates adjoints; adjoints of
/// parameter leaves land directly in the bound ParamStore's gradient
/// buffers. A tape built with record=false evaluates the same ops (hence the
/// same values, bit for bit) but refuses backward().
///
/// All ops are row-independent unless stated otherwise: row r of the output
/// depends only on row r of the row-aligned inputs, with a fixed summation
/// order, so stacking rows from several sequences never changes any value.
template <typename T>
class Tape {
 public:
  explicit Tape(const ParamStore<T>& params);
  Tape(ParamStore<T>& params, bool record);

  bool recording() const { return grads_ != nullptr; }

  NodeId constant(Tensor2<T> value);
  NodeId zeros(std::size_t rows, std::size_t cols);
  /// Leaf bound to a parameter block. Repeated calls return the same node.
  NodeId param(std::size_t block);
  NodeId param(std::string_view name);
  /// Same values as `a`, no gradient flows through.
  NodeId detach(NodeId a);

  NodeId matmul(NodeId a, NodeId b);
  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  NodeId mul(NodeId a, NodeId b);
  /// a (n x m) + bias (1 x m) broadcast over rows.
  NodeId add_row(NodeId a, NodeId bias);
  NodeId scale(NodeId a, T factor);
  /// factor * a + shift, elementwise.
  NodeId affine(NodeId a, T factor, T shift);
  NodeId activate(NodeId a, Activation act);

  NodeId concat_cols(std::span<const NodeId> parts);
  NodeId concat_rows(std::span<const NodeId> parts);
  /// Output row k = a row rows[k]; rows[k] < 0 yields a zero row.
  NodeId gather_rows(NodeId a, std::vector<std::int64_t> rows);
  /// Output row g = mean of a's rows listed in groups[g] (ascending sum), or
  /// fallback row g when the group is empty. fallback is (groups x cols).
  NodeId group_mean_rows(NodeId a, NodeId fallback, std::vector<std::vector<std::size_t>> groups);
  /// 1 x 1 sum of every entry in row-major order. Not row-independent.
  NodeId sum(NodeId a);
  NodeId reshape(NodeId a, std::size_t rows, std::size_t cols);
  /// keys (L x e), context (n x e) -> (n*L x 4e); row i*L+j is
  /// [k_j, c_i, k_j - c_i, k_j * c_i].
  NodeId pair_features(NodeId keys, NodeId context);
  /// Row-wise softmax over [scores..., 0]; returns the weights of the real
  /// entries only (the appended zero unit absorbs the remaining mass).
  NodeId zero_softmax_rows(NodeId scores);
  /// Per-row sigmoid cross entropy -l*log s(x) - (1-l)*log s(-x), for an
  /// (n x 1) logit column and n labels in [0, 1].
  NodeId logloss(NodeId logits, std::vector<T> labels);

  const Tensor2<T>& value(NodeId id) const;
  std::size_t node_count() const { return nodes_.size(); }

  /// Seeds d(root)/d(root) = 1 for a 1 x 1 root and propagates.
  void backward(NodeId root);

 private:
  enum class Op : std::uint8_t {
    kConstant, kParam, kMatmul, kAdd, kSub, kMul, kAddRow, kAffine, kActivate,
    kConcatCols, kConcatRows, kGather, kGroupMean, kSum, kReshape,
    kPairFeatures, kZeroSoftmax, kLogloss
  };

  struct Node {
    Op op = Op::kConstant;
    bool needs_grad = false;
    Activation act = Activation::kIdentity;
    std::size_t block = 0;
    T s0{0};
    T s1{0};
    std::vector<NodeId> in;
    Tensor2<T> value;
    Tensor2<T> grad;
    std::vector<std::int64_t> index;
    std::vector<std::vector<std::size_t>> groups;
    std::vector<T> labels;
  };

  NodeId push(Node n);
  bool any_needs_grad(std::initializer_list<NodeId> ids) const;
  bool needs(NodeId id) const { return nodes_[id].needs_grad; }
  Tensor2<T>& grad_of(NodeId id);
  void backprop_node(NodeId id);

  const ParamStore<T>* params_;
  ParamStore<T>* grads_;
  std::vector<Node> nodes_;
  std::vector<std::int64_t> param_nodes_;
};

extern template class Tape<float>;
extern template class Tape<double>;

}  // namespace seqrank::num
