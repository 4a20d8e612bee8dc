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
#include <vector>

#include "seqrank/models/network.hpp"
#include "seqrank/numcore/tape.hpp"

namespace seqrank::loss {

/// Pair label lambda_a / (lambda_a + lambda_b). Both zero is undefined.
double pair_label(bool purchased_a, bool purchased_b);

/// -l log s(eta) - (1 - l) log s(-eta) through the stable log-sigmoid.
double pairwise_logloss(double eta, double lambda);
/// The negated loss from the same code path, so r + loss == 0 exactly.
double reward(double eta, double lambda);

/// sum_u sum_{t < T_u} (q_t - r_t - gamma * q~_{t+1})^2 over per-user
/// trajectories. The successor of the final step never enters the sum.
double td_loss(const std::vector<std::vector<double>>& q, const std::vector<std::vector<double>>& r, double gamma,
               const std::vector<std::vector<double>>& q_target);
/// -sum of all q, so that minimizing maximizes the cumulative value.
double pg_loss(const std::vector<std::vector<double>>& q);

struct ObjectiveConfig {
  double gamma = 0.8;
  double mu = 0.5;
  bool allow_degenerate_mu = false;
  void validate() const;
};

/// mu * pg + (1 - mu) * td; mu = 1 is refused unless explicitly allowed.
double combine(double pg, double td, const ObjectiveConfig& cfg);

/// Graph versions over a forward trajectory.
template <typename T>
num::NodeId logloss_node(num::Tape<T>& tape, const model::Trajectory& tr);
template <typename T>
num::NodeId reward_node(num::Tape<T>& tape, const model::Trajectory& tr);
/// Mean pairwise loss over all pairs of the batch.
template <typename T>
num::NodeId supervised_objective(num::Tape<T>& tape, const model::Trajectory& tr);

struct CombinedNodes {
  num::NodeId loss;
  num::NodeId pg;
  num::NodeId td;
  num::NodeId reward;
};
template <typename T>
num::NodeId td_loss_node(num::Tape<T>& tape, const model::Trajectory& tr, num::NodeId reward, double gamma);
template <typename T>
num::NodeId pg_loss_node(num::Tape<T>& tape, const model::Trajectory& tr);
template <typename T>
CombinedNodes combined_objective(num::Tape<T>& tape, const model::Trajectory& tr, const ObjectiveConfig& cfg);

}  // namespace seqrank::loss
