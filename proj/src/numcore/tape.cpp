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

#include "seqrank/numcore/tape.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "seqrank/numcore/math.hpp"

namespace seqrank::num {

Activation parse_activation(std::string_view name) {
  if (name == "identity") return Activation::kIdentity;
  if (name == "tanh") return Activation::kTanh;
  if (name == "relu") return Activation::kRelu;
  if (name == "sigmoid") return Activation::kSigmoid;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::kIdentity: return "identity";
    case Activation::kTanh: return "tanh";
    case Activation::kRelu: return "relu";
    case Activation::kSigmoid: return "sigmoid";
  }
  return "identity";
}

namespace {

[[noreturn]] void shape_error(const char* op, const std::string& detail) {
  throw std::invalid_argument(std::string("Tape::") + op + ": " + detail);
}

template <typename T>
void require_same(const char* op, const Tensor2<T>& a, const Tensor2<T>& b) {
  if (!a.same_shape(b)) shape_error(op, a.shape_string() + " vs " + b.shape_string());
}

template <typename T>
T apply_activation(Activation act, T x) {
  switch (act) {
    case Activation::kIdentity: return x;
    case Activation::kTanh: return std::tanh(x);
    case Activation::kRelu: return x > T{0} ? x : T{0};
    case Activation::kSigmoid: return sigmoid(x);
  }
  return x;
}

// Derivative expressed through the activation's output y.
template <typename T>
T activation_slope(Activation act, T y) {
  switch (act) {
    case Activation::kIdentity: return T{1};
    case Activation::kTanh: return T{1} - y * y;
    case Activation::kRelu: return y > T{0} ? T{1} : T{0};
    case Activation::kSigmoid: return y * (T{1} - y);
  }
  return T{1};
}

}  // namespace

template <typename T>
Tape<T>::Tape(const ParamStore<T>& params)
    : params_(&params), grads_(nullptr), param_nodes_(params.size(), -1) {}

template <typename T>
Tape<T>::Tape(ParamStore<T>& params, bool record)
    : params_(&params), grads_(record ? &params : nullptr), param_nodes_(params.size(), -1) {}

template <typename T>
NodeId Tape<T>::push(Node n) {
  if (!recording()) n.needs_grad = false;
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

template <typename T>
bool Tape<T>::any_needs_grad(std::initializer_list<NodeId> ids) const {
  for (NodeId id : ids)
    if (nodes_[id].needs_grad) return true;
  return false;
}

template <typename T>
const Tensor2<T>& Tape<T>::value(NodeId id) const {
  const Node& n = nodes_.at(id);
  if (n.op == Op::kParam) return params_->value(n.block);
  return n.value;
}

template <typename T>
Tensor2<T>& Tape<T>::grad_of(NodeId id) {
  Node& n = nodes_[id];
  if (n.op == Op::kParam) return grads_->grad(n.block);
  if (n.grad.empty() && !n.value.empty()) n.grad = Tensor2<T>(n.value.rows(), n.value.cols());
  return n.grad;
}

template <typename T>
NodeId Tape<T>::constant(Tensor2<T> value) {
  Node n;
  n.op = Op::kConstant;
  n.value = std::move(value);
  return push(std::move(n));
}

template <typename T>
NodeId Tape<T>::zeros(std::size_t rows, std::size_t cols) {
  return constant(Tensor2<T>(rows, cols));
}

template <typename T>
NodeId Tape<T>::param(std::size_t block) {
  if (block >= param_nodes_.size()) shape_error("param", "block index out of range");
  if (param_nodes_[block] >= 0) return static_cast<NodeId>(param_nodes_[block]);
  Node n;
  n.op = Op::kParam;
  n.block = block;
  n.needs_grad = params_->block(block).trainable;
  const NodeId id = push(std::move(n));
  param_nodes_[block] = id;
  return id;
}

template <typename T>
NodeId Tape<T>::param(std::string_view name) {
  return param(params_->index(name));
}

template <typename T>
NodeId Tape<T>::detach(NodeId a) {
  return constant(value(a));
}

template <typename T>
NodeId Tape<T>::matmul(NodeId a, NodeId b) {
  const Tensor2<T>& A = value(a);
  const Tensor2<T>& B = value(b);
  if (A.cols() != B.rows()) shape_error("matmul", A.shape_string() + " * " + B.shape_string());
  const std::size_t n = A.rows(), k = A.cols(), m = B.cols();
  Tensor2<T> C(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    T* c = &C(i, 0);
    for (std::size_t p = 0; p < k; ++p) {
      const T aip = A(i, p);
      const T* brow = &B(p, 0);
      for (std::size_t j = 0; j < m; ++j) c[j] += aip * brow[j];
    }
  }
  Node node;
  node.op = Op::kMatmul;
  node.in = {a, b};
  node.needs_grad = any_needs_grad({a, b});
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::add(NodeId a, NodeId b) {
  const Tensor2<T>& A = value(a);
  const Tensor2<T>& B = value(b);
  require_same("add", A, B);
  Tensor2<T> C = A;
  for (std::size_t i = 0; i < C.size(); ++i) C[i] += B[i];
  Node node;
  node.op = Op::kAdd;
  node.in = {a, b};
  node.needs_grad = any_needs_grad({a, b});
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::sub(NodeId a, NodeId b) {
  const Tensor2<T>& A = value(a);
  const Tensor2<T>& B = value(b);
  require_same("sub", A, B);
  Tensor2<T> C = A;
  for (std::size_t i = 0; i < C.size(); ++i) C[i] -= B[i];
  Node node;
  node.op = Op::kSub;
  node.in = {a, b};
  node.needs_grad = any_needs_grad({a, b});
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::mul(NodeId a, NodeId b) {
  const Tensor2<T>& A = value(a);
  const Tensor2<T>& B = value(b);
  require_same("mul", A, B);
  Tensor2<T> C = A;
  for (std::size_t i = 0; i < C.size(); ++i) C[i] *= B[i];
  Node node;
  node.op = Op::kMul;
  node.in = {a, b};
  node.needs_grad = any_needs_grad({a, b});
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::add_row(NodeId a, NodeId bias) {
  const Tensor2<T>& A = value(a);
  const Tensor2<T>& B = value(bias);
  if (B.rows() != 1 || B.cols() != A.cols())
    shape_error("add_row", A.shape_string() + " + " + B.shape_string());
  Tensor2<T> C = A;
  for (std::size_t i = 0; i < C.rows(); ++i)
    for (std::size_t j = 0; j < C.cols(); ++j) C(i, j) += B(0, j);
  Node node;
  node.op = Op::kAddRow;
  node.in = {a, bias};
  node.needs_grad = any_needs_grad({a, bias});
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::scale(NodeId a, T factor) {
  Tensor2<T> C = value(a);
  for (auto& v : C.data()) v *= factor;
  Node node;
  node.op = Op::kAffine;
  node.in = {a};
  node.s0 = factor;
  node.needs_grad = needs(a);
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::affine(NodeId a, T factor, T shift) {
  Tensor2<T> C = value(a);
  for (auto& v : C.data()) v = factor * v + shift;
  Node node;
  node.op = Op::kAffine;
  node.in = {a};
  node.s0 = factor;
  node.s1 = shift;
  node.needs_grad = needs(a);
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::activate(NodeId a, Activation act) {
  if (act == Activation::kIdentity) return a;
  Tensor2<T> C = value(a);
  for (auto& v : C.data()) v = apply_activation(act, v);
  Node node;
  node.op = Op::kActivate;
  node.in = {a};
  node.act = act;
  node.needs_grad = needs(a);
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::concat_cols(std::span<const NodeId> parts) {
  if (parts.empty()) shape_error("concat_cols", "no inputs");
  const std::size_t rows = value(parts[0]).rows();
  std::size_t cols = 0;
  bool grad = false;
  for (NodeId p : parts) {
    if (value(p).rows() != rows) shape_error("concat_cols", "row count mismatch");
    cols += value(p).cols();
    grad = grad || needs(p);
  }
  Tensor2<T> C(rows, cols);
  std::size_t off = 0;
  for (NodeId p : parts) {
    const Tensor2<T>& P = value(p);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < P.cols(); ++j) C(i, off + j) = P(i, j);
    off += P.cols();
  }
  Node node;
  node.op = Op::kConcatCols;
  node.in.assign(parts.begin(), parts.end());
  node.needs_grad = grad;
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::concat_rows(std::span<const NodeId> parts) {
  if (parts.empty()) shape_error("concat_rows", "no inputs");
  const std::size_t cols = value(parts[0]).cols();
  std::size_t rows = 0;
  bool grad = false;
  for (NodeId p : parts) {
    if (value(p).cols() != cols) shape_error("concat_rows", "column count mismatch");
    rows += value(p).rows();
    grad = grad || needs(p);
  }
  std::vector<T> data;
  data.reserve(rows * cols);
  for (NodeId p : parts) {
    auto d = value(p).data();
    data.insert(data.end(), d.begin(), d.end());
  }
  Node node;
  node.op = Op::kConcatRows;
  node.in.assign(parts.begin(), parts.end());
  node.needs_grad = grad;
  node.value = Tensor2<T>(rows, cols, std::move(data));
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::gather_rows(NodeId a, std::vector<std::int64_t> rows) {
  const Tensor2<T>& A = value(a);
  Tensor2<T> C(rows.size(), A.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] < 0) continue;
    if (static_cast<std::size_t>(rows[k]) >= A.rows())
      shape_error("gather_rows", "row " + std::to_string(rows[k]) + " out of " + A.shape_string());
    auto src = A.row(static_cast<std::size_t>(rows[k]));
    std::copy(src.begin(), src.end(), C.row(k).begin());
  }
  Node node;
  node.op = Op::kGather;
  node.in = {a};
  node.index = std::move(rows);
  node.needs_grad = needs(a);
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::group_mean_rows(NodeId a, NodeId fallback,
                                std::vector<std::vector<std::size_t>> groups) {
  const Tensor2<T>& A = value(a);
  const Tensor2<T>& F = value(fallback);
  if (F.rows() != groups.size() || F.cols() != A.cols())
    shape_error("group_mean_rows", "fallback " + F.shape_string() + " for " +
                                       std::to_string(groups.size()) + " groups of width " +
                                       std::to_string(A.cols()));
  Tensor2<T> C(groups.size(), A.cols());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto out = C.row(g);
    if (groups[g].empty()) {
      auto src = F.row(g);
      std::copy(src.begin(), src.end(), out.begin());
      continue;
    }
    for (std::size_t r : groups[g]) {
      if (r >= A.rows()) shape_error("group_mean_rows", "row index out of range");
      auto src = A.row(r);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += src[j];
    }
    const T n = static_cast<T>(groups[g].size());
    for (auto& v : out) v /= n;
  }
  Node node;
  node.op = Op::kGroupMean;
  node.in = {a, fallback};
  node.groups = std::move(groups);
  node.needs_grad = any_needs_grad({a, fallback});
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::sum(NodeId a) {
  T total{0};
  for (T v : value(a).data()) total += v;
  Node node;
  node.op = Op::kSum;
  node.in = {a};
  node.needs_grad = needs(a);
  node.value = Tensor2<T>(1, 1, total);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::reshape(NodeId a, std::size_t rows, std::size_t cols) {
  const Tensor2<T>& A = value(a);
  if (rows * cols != A.size()) shape_error("reshape", A.shape_string() + " -> " +
                                                      std::to_string(rows) + "x" + std::to_string(cols));
  auto d = A.data();
  Node node;
  node.op = Op::kReshape;
  node.in = {a};
  node.needs_grad = needs(a);
  node.value = Tensor2<T>(rows, cols, std::vector<T>(d.begin(), d.end()));
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::pair_features(NodeId keys, NodeId context) {
  const Tensor2<T>& K = value(keys);
  const Tensor2<T>& X = value(context);
  if (K.cols() != X.cols()) shape_error("pair_features", K.shape_string() + " vs " + X.shape_string());
  const std::size_t L = K.rows(), n = X.rows(), e = K.cols();
  Tensor2<T> C(n * L, 4 * e);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      T* out = &C(i * L + j, 0);
      for (std::size_t f = 0; f < e; ++f) {
        const T k = K(j, f), c = X(i, f);
        out[f] = k;
        out[e + f] = c;
        out[2 * e + f] = k - c;
        out[3 * e + f] = k * c;
      }
    }
  }
  Node node;
  node.op = Op::kPairFeatures;
  node.in = {keys, context};
  node.needs_grad = any_needs_grad({keys, context});
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::zero_softmax_rows(NodeId scores) {
  const Tensor2<T>& S = value(scores);
  Tensor2<T> W(S.rows(), S.cols());
  for (std::size_t i = 0; i < S.rows(); ++i) {
    T top{0};
    for (T s : S.row(i)) top = std::max(top, s);
    T denom = std::exp(-top);
    auto w = W.row(i);
    auto s = S.row(i);
    for (std::size_t j = 0; j < s.size(); ++j) {
      w[j] = std::exp(s[j] - top);
      denom += w[j];
    }
    for (auto& v : w) v /= denom;
  }
  Node node;
  node.op = Op::kZeroSoftmax;
  node.in = {scores};
  node.needs_grad = needs(scores);
  node.value = std::move(W);
  return push(std::move(node));
}

template <typename T>
NodeId Tape<T>::logloss(NodeId logits, std::vector<T> labels) {
  const Tensor2<T>& X = value(logits);
  if (X.cols() != 1 || X.rows() != labels.size())
    shape_error("logloss", X.shape_string() + " logits for " + std::to_string(labels.size()) + " labels");
  Tensor2<T> C(X.rows(), 1);
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const T l = labels[i];
    if (!(l >= T{0} && l <= T{1})) shape_error("logloss", "label outside [0, 1]");
    C(i, 0) = -l * log_sigmoid(X(i, 0)) - (T{1} - l) * log_sigmoid(-X(i, 0));
  }
  Node node;
  node.op = Op::kLogloss;
  node.in = {logits};
  node.labels = std::move(labels);
  node.needs_grad = needs(logits);
  node.value = std::move(C);
  return push(std::move(node));
}

template <typename T>
void Tape<T>::backward(NodeId root) {
  if (!recording()) throw std::logic_error("Tape::backward: tape was built with record=false");
  if (value(root).rows() != 1 || value(root).cols() != 1)
    throw std::invalid_argument("Tape::backward: root must be 1x1, got " + value(root).shape_string());
  if (!nodes_[root].needs_grad) return;
  grad_of(root)(0, 0) += T{1};
  for (std::int64_t id = root; id >= 0; --id) {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (!n.needs_grad || n.op == Op::kParam || n.op == Op::kConstant || n.grad.empty()) continue;
    backprop_node(static_cast<NodeId>(id));
  }
}

template <typename T>
void Tape<T>::backprop_node(NodeId id) {
  // Copy out what we need: grad_of() may grow other nodes' buffers but the
  // node vector itself is not resized during backward.
  Node& n = nodes_[id];
  const Tensor2<T>& G = n.grad;
  switch (n.op) {
    case Op::kConstant:
    case Op::kParam:
      break;
    case Op::kMatmul: {
      const NodeId a = n.in[0], b = n.in[1];
      const Tensor2<T>& A = value(a);
      const Tensor2<T>& B = value(b);
      const std::size_t rows = A.rows(), k = A.cols(), m = B.cols();
      if (needs(a)) {
        Tensor2<T>& dA = grad_of(a);
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t p = 0; p < k; ++p) {
            T acc{0};
            const T* g = &G(i, 0);
            const T* brow = &B(p, 0);
            for (std::size_t j = 0; j < m; ++j) acc += g[j] * brow[j];
            dA(i, p) += acc;
          }
      }
      if (needs(b)) {
        Tensor2<T>& dB = grad_of(b);
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t p = 0; p < k; ++p) {
            const T aip = A(i, p);
            if (aip == T{0}) continue;
            const T* g = &G(i, 0);
            T* drow = &dB(p, 0);
            for (std::size_t j = 0; j < m; ++j) drow[j] += aip * g[j];
          }
      }
      break;
    }
    case Op::kAdd:
    case Op::kSub: {
      const T sign = n.op == Op::kAdd ? T{1} : T{-1};
      if (needs(n.in[0])) {
        Tensor2<T>& d = grad_of(n.in[0]);
        for (std::size_t i = 0; i < G.size(); ++i) d[i] += G[i];
      }
      if (needs(n.in[1])) {
        Tensor2<T>& d = grad_of(n.in[1]);
        for (std::size_t i = 0; i < G.size(); ++i) d[i] += sign * G[i];
      }
      break;
    }
    case Op::kMul: {
      const NodeId a = n.in[0], b = n.in[1];
      if (needs(a)) {
        const Tensor2<T>& B = value(b);
        Tensor2<T>& d = grad_of(a);
        for (std::size_t i = 0; i < G.size(); ++i) d[i] += G[i] * B[i];
      }
      if (needs(b)) {
        const Tensor2<T>& A = value(a);
        Tensor2<T>& d = grad_of(b);
        for (std::size_t i = 0; i < G.size(); ++i) d[i] += G[i] * A[i];
      }
      break;
    }
    case Op::kAddRow: {
      if (needs(n.in[0])) {
        Tensor2<T>& d = grad_of(n.in[0]);
        for (std::size_t i = 0; i < G.size(); ++i) d[i] += G[i];
      }
      if (needs(n.in[1])) {
        Tensor2<T>& d = grad_of(n.in[1]);
        for (std::size_t i = 0; i < G.rows(); ++i)
          for (std::size_t j = 0; j < G.cols(); ++j) d(0, j) += G(i, j);
      }
      break;
    }
    case Op::kAffine: {
      Tensor2<T>& d = grad_of(n.in[0]);
      for (std::size_t i = 0; i < G.size(); ++i) d[i] += n.s0 * G[i];
      break;
    }
    case Op::kActivate: {
      Tensor2<T>& d = grad_of(n.in[0]);
      for (std::size_t i = 0; i < G.size(); ++i) d[i] += G[i] * activation_slope(n.act, n.value[i]);
      break;
    }
    case Op::kConcatCols: {
      std::size_t off = 0;
      for (NodeId p : n.in) {
        const std::size_t w = value(p).cols();
        if (needs(p)) {
          Tensor2<T>& d = grad_of(p);
          for (std::size_t i = 0; i < G.rows(); ++i)
            for (std::size_t j = 0; j < w; ++j) d(i, j) += G(i, off + j);
        }
        off += w;
      }
      break;
    }
    case Op::kConcatRows: {
      std::size_t off = 0;
      for (NodeId p : n.in) {
        const std::size_t count = value(p).size();
        if (needs(p)) {
          Tensor2<T>& d = grad_of(p);
          for (std::size_t i = 0; i < count; ++i) d[i] += G[off + i];
        }
        off += count;
      }
      break;
    }
    case Op::kGather: {
      Tensor2<T>& d = grad_of(n.in[0]);
      for (std::size_t k = 0; k < n.index.size(); ++k) {
        if (n.index[k] < 0) continue;
        auto dst = d.row(static_cast<std::size_t>(n.index[k]));
        auto src = G.row(k);
        for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
      }
      break;
    }
    case Op::kGroupMean: {
      const NodeId a = n.in[0], f = n.in[1];
      for (std::size_t g = 0; g < n.groups.size(); ++g) {
        auto src = G.row(g);
        if (n.groups[g].empty()) {
          if (!needs(f)) continue;
          auto dst = grad_of(f).row(g);
          for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
          continue;
        }
        if (!needs(a)) continue;
        const T inv = T{1} / static_cast<T>(n.groups[g].size());
        Tensor2<T>& d = grad_of(a);
        for (std::size_t r : n.groups[g]) {
          auto dst = d.row(r);
          for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j] * inv;
        }
      }
      break;
    }
    case Op::kSum: {
      Tensor2<T>& d = grad_of(n.in[0]);
      const T g = G(0, 0);
      for (auto& v : d.data()) v += g;
      break;
    }
    case Op::kReshape: {
      Tensor2<T>& d = grad_of(n.in[0]);
      for (std::size_t i = 0; i < G.size(); ++i) d[i] += G[i];
      break;
    }
    case Op::kPairFeatures: {
      const NodeId keys = n.in[0], ctx = n.in[1];
      const Tensor2<T>& K = value(keys);
      const Tensor2<T>& X = value(ctx);
      const std::size_t L = K.rows(), rows = X.rows(), e = K.cols();
      const bool dk = needs(keys), dx = needs(ctx);
      Tensor2<T>* dK = dk ? &grad_of(keys) : nullptr;
      Tensor2<T>* dX = dx ? &grad_of(ctx) : nullptr;
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < L; ++j) {
          const T* g = &G(i * L + j, 0);
          for (std::size_t f = 0; f < e; ++f) {
            const T k = K(j, f), c = X(i, f);
            if (dk) (*dK)(j, f) += g[f] + g[2 * e + f] + g[3 * e + f] * c;
            if (dx) (*dX)(i, f) += g[e + f] - g[2 * e + f] + g[3 * e + f] * k;
          }
        }
      break;
    }
    case Op::kZeroSoftmax: {
      Tensor2<T>& d = grad_of(n.in[0]);
      const Tensor2<T>& W = n.value;
      for (std::size_t i = 0; i < W.rows(); ++i) {
        auto w = W.row(i);
        auto g = G.row(i);
        T dot{0};
        for (std::size_t j = 0; j < w.size(); ++j) dot += w[j] * g[j];
        auto out = d.row(i);
        for (std::size_t j = 0; j < w.size(); ++j) out[j] += w[j] * (g[j] - dot);
      }
      break;
    }
    case Op::kLogloss: {
      Tensor2<T>& d = grad_of(n.in[0]);
      const Tensor2<T>& X = value(n.in[0]);
      for (std::size_t i = 0; i < X.rows(); ++i)
        d(i, 0) += G(i, 0) * (sigmoid(X(i, 0)) - n.labels[i]);
      break;
    }
  }
}

template class Tape<float>;
template class Tape<double>;

}  // namespace seqrank::num
