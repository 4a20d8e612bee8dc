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

#include "seqrank/training/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace seqrank::train {

namespace {

std::string row(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

}  // namespace

std::vector<SweepRow> sweep_mu(const std::vector<double>& values, const model::ModelConfig& cfg,
                               const DataSplit& data, const TrainConfig& tc, std::ostream* log) {
  if (values.empty()) throw std::invalid_argument("sweep_mu: no values");
  std::vector<TrainConfig> runs;
  for (double mu : values) {
    TrainConfig t = tc;
    t.objective.mu = mu;
    t.validate();
    runs.push_back(t);
  }
  model::ModelConfig s3 = cfg;
  s3.variant = model::Variant::kS3ddpg;
  std::vector<SweepRow> out;
  for (const auto& t : runs) {
    if (log) *log << "# mu=" << data::format_double(t.objective.mu) << "\n";
    const auto r = train(s3, data.train, data.validation, t, log);
    out.push_back({t.objective.mu, r.best_report.session_auc, r.best_report.ndcg, r.epochs.size()});
  }
  return out;
}

std::string sweep_table(const std::vector<SweepRow>& rows) {
  std::string out = "mu\tsession_auc\tndcg\tepochs\n";
  for (const auto& r : rows) out += row("%.4g\t%.6f\t%.6f\t%zu\n", r.mu, r.session_auc, r.ndcg, r.epochs);
  return out;
}

std::vector<LadderRow> ladder(const model::ModelConfig& base, const DataSplit& data, const TrainConfig& tc,
                              std::ostream* log) {
  std::vector<LadderRow> out;
  num::ParamStore<float> rnn_best;
  for (auto v : {model::Variant::kDnn, model::Variant::kDinS, model::Variant::kRnn, model::Variant::kS3ddpg}) {
    model::ModelConfig cfg = base;
    cfg.variant = v;
    const bool warm = v == model::Variant::kS3ddpg && tc.warm_start;
    if (log) *log << "# variant=" << model::variant_name(v) << (warm ? " warm_start=1" : "") << "\n";
    const auto r = train(cfg, data.train, data.validation, tc, log, warm ? &rnn_best : nullptr);
    if (v == model::Variant::kRnn) rnn_best = r.best;
    out.push_back({v, r.best_report.session_auc, r.best_report.ndcg, r.initial_auc, r.epochs.size(), warm});
  }
  return out;
}

std::string ladder_table(const std::vector<LadderRow>& rows) {
  std::string out = "model\tsession_auc\tndcg\tinitial_session_auc\tepochs\twarm_start\n";
  for (const auto& r : rows)
    out += row("%s\t%.6f\t%.6f\t%.6f\t%zu\t%d\n", std::string(model::variant_name(r.variant)).c_str(), r.session_auc,
               r.ndcg, r.initial_auc, r.epochs, r.warm_started ? 1 : 0);
  return out;
}

EpochComparison compare_packed_epoch(const model::ModelConfig& cfg, const std::vector<data::UserHistory>& train,
                                     const TrainConfig& tc) {
  TrainConfig packed = tc, unpacked = tc;
  packed.packed = true;
  unpacked.packed = false;
  RunState a = start_run(cfg, packed), b = start_run(cfg, unpacked);
  EpochComparison out;
  out.packed = train_epoch(cfg, a, train, packed);
  out.unpacked = train_epoch(cfg, b, train, unpacked);
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    const auto& x = a.params.value(i);
    const auto& y = b.params.value(i);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double d = std::abs(static_cast<double>(x.data()[k]) - static_cast<double>(y.data()[k]));
      if (d > out.max_param_diff || out.worst_block.empty()) {
        out.max_param_diff = std::max(out.max_param_diff, d);
        out.worst_block = a.params.block(i).name;
      }
    }
  }
  return out;
}

}  // namespace seqrank::train
