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

#include "seqrank/numcore/layers.hpp"

#include <cmath>
#include <stdexcept>

namespace seqrank::num {

template <typename T>
Tensor2<T> uniform_init(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in == 0 ? 1 : fan_in));
  Tensor2<T> w(fan_in, fan_out);
  for (auto& v : w.data()) v = static_cast<T>(rng.uniform(-bound, bound));
  return w;
}

template <typename T>
void add_mlp_params(ParamStore<T>& store, const std::string& prefix,
                    const std::vector<std::size_t>& dims, Rng& rng, bool trainable) {
  if (dims.size() < 2) throw std::invalid_argument("add_mlp_params: need at least input and output width");
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const std::string layer = prefix + ".l" + std::to_string(k);
    store.add(layer + ".w", uniform_init<T>(dims[k], dims[k + 1], rng), trainable);
    store.add(layer + ".b", Tensor2<T>(1, dims[k + 1]), trainable);
  }
}

template <typename T>
std::size_t mlp_depth(const ParamStore<T>& store, const std::string& prefix) {
  std::size_t k = 0;
  while (store.contains(prefix + ".l" + std::to_string(k) + ".w")) ++k;
  return k;
}

template <typename T>
NodeId mlp(Tape<T>& tape, NodeId input, const ParamStore<T>& store, const std::string& prefix,
           Activation hidden) {
  const std::size_t depth = mlp_depth(store, prefix);
  if (depth == 0) throw std::invalid_argument("mlp: no layers under '" + prefix + "'");
  NodeId x = input;
  for (std::size_t k = 0; k < depth; ++k) {
    const std::string layer = prefix + ".l" + std::to_string(k);
    const std::size_t w = store.index(layer + ".w");
    if (tape.value(x).cols() != store.value(w).rows()) {
      throw std::invalid_argument("mlp '" + prefix + "': layer " + std::to_string(k) + " expects fan-in " +
                                  std::to_string(store.value(w).rows()) + ", got " +
                                  std::to_string(tape.value(x).cols()));
    }
    x = tape.add_row(tape.matmul(x, tape.param(w)), tape.param(layer + ".b"));
    if (k + 1 < depth) x = tape.activate(x, hidden);
  }
  return x;
}

template <typename T>
Tensor2<T> mlp_forward(const Tensor2<T>& input, const ParamStore<T>& store,
                       const std::string& prefix, Activation hidden) {
  Tape<T> tape(store);
  return tape.value(mlp(tape, tape.constant(input), store, prefix, hidden));
}

template <typename T>
void add_gru_params(ParamStore<T>& store, const std::string& prefix, std::size_t input_width,
                    std::size_t state_width, Rng& rng) {
  for (const char* gate : {"z", "r", "n"}) {
    store.add(prefix + ".w" + gate, uniform_init<T>(input_width, state_width, rng));
    store.add(prefix + ".u" + gate, uniform_init<T>(state_width, state_width, rng));
    store.add(prefix + ".b" + gate, Tensor2<T>(1, state_width));
  }
}

template <typename T>
NodeId gru(Tape<T>& tape, NodeId input, NodeId state, const ParamStore<T>& store,
           const std::string& prefix) {
  const std::size_t wz = store.index(prefix + ".wz");
  const std::size_t uz = store.index(prefix + ".uz");
  const std::size_t d = store.value(uz).rows();
  if (tape.value(input).cols() != store.value(wz).rows())
    throw std::invalid_argument("gru: input width " + std::to_string(tape.value(input).cols()) +
                                " != " + std::to_string(store.value(wz).rows()));
  if (tape.value(state).cols() != d || tape.value(state).rows() != tape.value(input).rows())
    throw std::invalid_argument("gru: state " + tape.value(state).shape_string() + " for input " +
                                tape.value(input).shape_string());

  auto gate = [&](const char* g, NodeId h) {
    const std::string p = prefix + ".";
    NodeId a = tape.matmul(input, tape.param(p + "w" + g));
    NodeId b = tape.matmul(h, tape.param(p + "u" + g));
    return tape.add_row(tape.add(a, b), tape.param(p + "b" + g));
  };
  const NodeId z = tape.activate(gate("z", state), Activation::kSigmoid);
  const NodeId r = tape.activate(gate("r", state), Activation::kSigmoid);
  const NodeId n = tape.activate(gate("n", tape.mul(r, state)), Activation::kTanh);
  const NodeId keep = tape.mul(z, state);
  const NodeId fresh = tape.mul(tape.affine(z, T{-1}, T{1}), n);
  return tape.add(fresh, keep);
}

template <typename T>
Tensor2<T> gru_cell(const Tensor2<T>& input, const Tensor2<T>& state, const ParamStore<T>& store,
                    const std::string& prefix) {
  Tape<T> tape(store);
  return tape.value(gru(tape, tape.constant(input), tape.constant(state), store, prefix));
}

#define SEQRANK_INSTANTIATE_LAYERS(T)                                                              \
  template Tensor2<T> uniform_init<T>(std::size_t, std::size_t, Rng&);                             \
  template void add_mlp_params<T>(ParamStore<T>&, const std::string&,                              \
                                  const std::vector<std::size_t>&, Rng&, bool);                    \
  template std::size_t mlp_depth<T>(const ParamStore<T>&, const std::string&);                     \
  template NodeId mlp<T>(Tape<T>&, NodeId, const ParamStore<T>&, const std::string&, Activation);  \
  template Tensor2<T> mlp_forward<T>(const Tensor2<T>&, const ParamStore<T>&, const std::string&,  \
                                     Activation);                                                  \
  template void add_gru_params<T>(ParamStore<T>&, const std::string&, std::size_t, std::size_t,    \
                                  Rng&);                                                           \
  template NodeId gru<T>(Tape<T>&, NodeId, NodeId, const ParamStore<T>&, const std::string&);      \
  template Tensor2<T> gru_cell<T>(const Tensor2<T>&, const Tensor2<T>&, const ParamStore<T>&,      \
                                  const std::string&);

SEQRANK_INSTANTIATE_LAYERS(float)
SEQRANK_INSTANTIATE_LAYERS(double)

}  // namespace seqrank::num
