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

#include "seqrank/losses/losses.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "seqrank/numcore/math.hpp"

namespace seqrank::loss {

using num::NodeId;

double pair_label(bool purchased_a, bool purchased_b) {
  if (!purchased_a && !purchased_b) throw std::invalid_argument("pair label undefined: neither item was purchased");
  const double la = purchased_a ? 1.0 : 0.0, lb = purchased_b ? 1.0 : 0.0;
  return la / (la + lb);
}

double pairwise_logloss(double eta, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("pairwise_logloss: label outside [0, 1]");
  num::require_finite(eta, "pairwise_logloss");
  return -lambda * num::log_sigmoid(eta) - (1.0 - lambda) * num::log_sigmoid(-eta);
}

double reward(double eta, double lambda) { return -pairwise_logloss(eta, lambda); }

double td_loss(const std::vector<std::vector<double>>& q, const std::vector<std::vector<double>>& r, double gamma,
               const std::vector<std::vector<double>>& q_target) {
  if (q.size() != r.size() || q.size() != q_target.size())
    throw std::invalid_argument("td_loss: trajectories cover different user counts");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("td_loss: gamma must lie in [0, 1)");
  double total = 0.0;
  for (std::size_t u = 0; u < q.size(); ++u) {
    if (q[u].size() != r[u].size() || q[u].size() != q_target[u].size())
      throw std::invalid_argument("td_loss: user " + std::to_string(u) + " has mismatched trajectory lengths");
    for (std::size_t t = 0; t + 1 < q[u].size(); ++t) {
      const double d = q[u][t] - r[u][t] - gamma * q_target[u][t + 1];
      total += d * d;
    }
  }
  return total;
}

double pg_loss(const std::vector<std::vector<double>>& q) {
  double total = 0.0;
  for (const auto& user : q)
    for (double v : user) total += v;
  return -total;
}

void ObjectiveConfig::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1), got " + std::to_string(gamma));
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1), got " + std::to_string(mu));
  if (mu == 1.0 && !allow_degenerate_mu)
    throw std::invalid_argument(
        "mu = 1 drops the TD loss: the critic is then no longer tied to the reward and training degenerates "
        "(pass the override to run it anyway)");
}

double combine(double pg, double td, const ObjectiveConfig& cfg) {
  cfg.validate();
  return cfg.mu * pg + (1.0 - cfg.mu) * td;
}

template <typename T>
NodeId logloss_node(num::Tape<T>& tape, const model::Trajectory& tr) {
  if (tr.eta == model::kNoNode) throw std::invalid_argument("objective: trajectory has no pairs");
  std::vector<T> labels(tr.lambda.begin(), tr.lambda.end());
  return tape.logloss(tr.eta, std::move(labels));
}

template <typename T>
NodeId reward_node(num::Tape<T>& tape, const model::Trajectory& tr) {
  return tape.scale(logloss_node(tape, tr), T{-1});
}

template <typename T>
NodeId supervised_objective(num::Tape<T>& tape, const model::Trajectory& tr) {
  const NodeId l = logloss_node(tape, tr);
  return tape.scale(tape.sum(l), T{1} / static_cast<T>(tr.lambda.size()));
}

template <typename T>
NodeId td_loss_node(num::Tape<T>& tape, const model::Trajectory& tr, NodeId reward, double gamma) {
  if (tr.q == model::kNoNode || tr.q_target == model::kNoNode)
    throw std::invalid_argument("td_loss: trajectory carries no critic values");
  std::vector<std::int64_t> now, next;
  std::size_t row = 0;
  for (std::size_t n : tr.user_pairs) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      now.push_back(static_cast<std::int64_t>(row + k));
      next.push_back(static_cast<std::int64_t>(row + k + 1));
    }
    row += n;
  }
  if (now.empty()) return tape.zeros(1, 1);
  const NodeId q = tape.gather_rows(tr.q, now);
  const NodeId r = tape.gather_rows(reward, now);
  const NodeId succ = tape.scale(tape.gather_rows(tr.q_target, std::move(next)), static_cast<T>(gamma));
  const NodeId d = tape.sub(tape.sub(q, r), succ);
  return tape.sum(tape.mul(d, d));
}

template <typename T>
NodeId pg_loss_node(num::Tape<T>& tape, const model::Trajectory& tr) {
  if (tr.q == model::kNoNode) throw std::invalid_argument("pg_loss: trajectory carries no critic values");
  return tape.scale(tape.sum(tr.q), T{-1});
}

template <typename T>
CombinedNodes combined_objective(num::Tape<T>& tape, const model::Trajectory& tr, const ObjectiveConfig& cfg) {
  cfg.validate();
  CombinedNodes out;
  out.reward = reward_node(tape, tr);
  out.td = td_loss_node(tape, tr, out.reward, cfg.gamma);
  out.pg = pg_loss_node(tape, tr);
  out.loss = tape.add(tape.scale(out.pg, static_cast<T>(cfg.mu)), tape.scale(out.td, static_cast<T>(1.0 - cfg.mu)));
  return out;
}

#define SEQRANK_INSTANTIATE_LOSSES(T)                                                                    \
  template NodeId logloss_node<T>(num::Tape<T>&, const model::Trajectory&);                              \
  template NodeId reward_node<T>(num::Tape<T>&, const model::Trajectory&);                               \
  template NodeId supervised_objective<T>(num::Tape<T>&, const model::Trajectory&);                      \
  template NodeId td_loss_node<T>(num::Tape<T>&, const model::Trajectory&, NodeId, double);              \
  template NodeId pg_loss_node<T>(num::Tape<T>&, const model::Trajectory&);                              \
  template CombinedNodes combined_objective<T>(num::Tape<T>&, const model::Trajectory&, const ObjectiveConfig&);

SEQRANK_INSTANTIATE_LOSSES(float)
SEQRANK_INSTANTIATE_LOSSES(double)

}  // namespace seqrank::loss
