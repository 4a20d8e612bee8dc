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

#include "cli_app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "seqrank/datamodel/generator.hpp"
#include "seqrank/datamodel/kv_config.hpp"
#include "seqrank/datamodel/tsv.hpp"
#include "seqrank/metrics/evaluate.hpp"
#include "seqrank/models/checkpoint.hpp"
#include "seqrank/models/config.hpp"
#include "seqrank/packing/pack_batch.hpp"
#include "seqrank/serving/replay.hpp"
#include "seqrank/training/experiments.hpp"
#include "seqrank/training/trainer.hpp"

namespace seqrank::cli {

namespace {

// Keys a config may carry outside the gen/model/train sections.
const std::vector<std::string> kSweepKeys = {"values"};

struct Common {
  std::string config_path;
  std::string data_path;
  std::optional<std::uint64_t> seed;
};

struct Setup {
  data::KvConfig kv;
  data::GeneratorConfig gen;
  model::ModelConfig model;
  train::TrainConfig train;
};

Setup load_setup(const Common& c) {
  Setup s;
  if (!c.config_path.empty()) s.kv = data::KvConfig::load(c.config_path);
  for (const auto& [key, value] : s.kv.entries()) {
    const auto dot = key.find('.');
    const std::string section = dot == std::string::npos ? key : key.substr(0, dot);
    if (section != "gen" && section != "model" && section != "train" && section != "sweep")
      throw std::invalid_argument("config: unknown section in key '" + key + "'");
  }
  s.kv.require_known("sweep.", kSweepKeys);
  if (c.seed) {
    s.kv.set("gen.seed", std::to_string(*c.seed));
    s.kv.set("train.seed", std::to_string(*c.seed));
  }
  s.gen = data::GeneratorConfig::from_kv(s.kv);
  s.model = model::ModelConfig::from_kv(s.kv);
  s.model.adopt_vocab(s.gen);
  s.train = train::TrainConfig::from_kv(s.kv);
  return s;
}

std::vector<data::UserHistory> load_data(const Common& c, const data::GeneratorConfig& gen) {
  if (!c.data_path.empty()) return data::read_tsv(c.data_path);
  return data::generate_log(gen);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

// The checkpoint's own config pins the model and evaluation protocol.
struct LoadedModel {
  model::ModelConfig cfg;
  train::TrainConfig train;
  num::ParamStore<float> params;
};

LoadedModel load_model(const std::string& path) {
  auto ckpt = model::load_checkpoint(path);
  LoadedModel m;
  data::KvConfig model_kv, train_kv;
  for (const auto& [key, value] : ckpt.config.entries()) {
    if (key.rfind("model.", 0) == 0) model_kv.set(key, value);
    if (key.rfind("train.", 0) == 0) train_kv.set(key, value);
  }
  m.cfg = model::ModelConfig::from_kv(model_kv);
  m.train = train::TrainConfig::from_kv(train_kv);
  m.params = std::move(ckpt.params);
  model::check_params(m.cfg, m.params);
  return m;
}

void add_common(CLI::App* app, Common& c, bool config_required) {
  auto* opt = app->add_option("--config", c.config_path, "key = value config file")->check(CLI::ExistingFile);
  if (config_required) opt->required();
  app->add_option("--data", c.data_path, "TSV log; generated from the config when omitted")
      ->check(CLI::ExistingFile);
  app->add_option("--seed", c.seed, "overrides gen.seed and train.seed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential search ranking: data, packing, training, evaluation and serving replay", "seqrank"};
  app.require_subcommand(1);

  Common common;
  std::string out_path, checkpoint_path, log_path, state_path, variant_name, values_text;
  std::optional<std::size_t> max_epochs, batch_users;
  bool audit = false;

  auto* gen = app.add_subcommand("gen-data", "write a synthetic log as TSV");
  add_common(gen, common, true);
  gen->add_option("--out", out_path, "output TSV")->required();

  auto* stats = app.add_subcommand("pack-stats", "knapsack packing statistics over training batches");
  add_common(stats, common, true);
  stats->add_option("--batch-users", batch_users, "users per batch (default train.batch_users)");
  stats->add_option("--out", out_path, "report file (default stdout)");

  auto* tr = app.add_subcommand("train", "train one variant with early stopping");
  add_common(tr, common, true);
  tr->add_option("--variant", variant_name, "DNN, DIN-S, RNN or S3DDPG (default model.variant)");
  tr->add_option("--max-epochs", max_epochs, "overrides train.max_epochs");
  tr->add_option("--out", checkpoint_path, "best checkpoint")->required();
  tr->add_option("--log", log_path, "epoch log file (default stdout)");

  auto* ev = app.add_subcommand("eval", "final-day evaluation of a checkpoint");
  add_common(ev, common, false);
  ev->add_option("--checkpoint", checkpoint_path, "checkpoint file")->required()->check(CLI::ExistingFile);
  ev->add_option("--out", out_path, "report file (default stdout)");

  auto* sweep = app.add_subcommand("sweep-mu", "train S3DDPG for each PG/TD weight");
  add_common(sweep, common, true);
  sweep->add_option("--values", values_text, "comma-separated mu values (default sweep.values or 0.2,0.5,0.8)");
  sweep->add_option("--max-epochs", max_epochs, "overrides train.max_epochs");
  sweep->add_option("--out", out_path, "table file (default stdout)");
  sweep->add_option("--log", log_path, "epoch log file");

  auto* lad = app.add_subcommand("ladder", "train and compare DNN, DIN-S, RNN and S3DDPG");
  add_common(lad, common, true);
  lad->add_option("--max-epochs", max_epochs, "overrides train.max_epochs");
  lad->add_option("--out", out_path, "table file (default stdout)");
  lad->add_option("--log", log_path, "epoch log file");

  auto* serve = app.add_subcommand("serve-replay", "replay sessions through incremental state updates");
  add_common(serve, common, false);
  serve->add_option("--checkpoint", checkpoint_path, "RNN or S3DDPG checkpoint")->required()->check(
      CLI::ExistingFile);
  serve->add_option("--state", state_path, "per-user state file; resumed when present, rewritten after");
  serve->add_flag("--audit", audit, "compare every score with the offline batch forward");
  serve->add_option("--out", out_path, "per-item predictions (default: summary only)");

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    auto open_log = [&](std::ofstream& file) -> std::ostream* {
      if (log_path.empty()) return &out;
      file.open(log_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write " + log_path);
      return &file;
    };

    if (gen->parsed()) {
      const auto s = load_setup(common);
      const auto log = data::generate_log(s.gen);
      const std::size_t sessions = data::write_tsv(log, out_path);
      out << "users " << log.size() << "\nsessions " << sessions << "\n";
    } else if (stats->parsed()) {
      const auto s = load_setup(common);
      const auto log = load_data(common, s.gen);
      const auto p = pack::log_packing_stats(log, batch_users.value_or(s.train.batch_users));
      std::ostringstream os;
      os << "users " << p.users << "\nsessions " << p.sessions << "\npacked_rows " << p.packed_rows
         << "\ncompression " << p.compression() << "\nnaive_slots " << p.naive_slots << "\npacked_slots "
         << p.packed_slots << "\npadded_fraction_naive " << p.padded_before() << "\npadded_fraction_packed "
         << p.padded_after() << "\n";
      write_text(out_path, os.str(), out);
    } else if (tr->parsed()) {
      auto s = load_setup(common);
      if (!variant_name.empty()) s.model.variant = model::parse_variant(variant_name);
      if (max_epochs) s.train.max_epochs = *max_epochs;
      s.train.validate();
      const auto split = train::split_by_day(load_data(common, s.gen), s.train.eval_day);
      std::ofstream file;
      const auto r = train::train(s.model, split.train, split.validation, s.train, open_log(file));
      model::save_checkpoint(checkpoint_path, r.checkpoint(s.train));
      out << "variant " << model::variant_name(s.model.variant) << "\nbest_epoch " << r.best_epoch
          << "\nbest_session_auc " << r.best_auc << "\ninitial_session_auc " << r.initial_auc << "\ncheckpoint "
          << checkpoint_path << "\n";
    } else if (ev->parsed()) {
      if (common.config_path.empty() && common.data_path.empty())
        throw CLI::RequiredError("eval needs --data or --config");
      const auto m = load_model(checkpoint_path);
      const auto s = load_setup(common);
      const auto log = load_data(common, s.gen);
      const auto report = metrics::evaluate_protocol({m.cfg, m.params}, log, m.train.eval_options());
      const std::string text = "model " + std::string(model::variant_name(m.cfg.variant)) + "\n" + report.to_text();
      write_text(out_path, text, out);
    } else if (sweep->parsed()) {
      auto s = load_setup(common);
      if (max_epochs) s.train.max_epochs = *max_epochs;
      if (values_text.empty()) values_text = s.kv.get_string("sweep.values", "0.2,0.5,0.8");
      const auto values = data::parse_double_list(values_text);
      const auto split = train::split_by_day(load_data(common, s.gen), s.train.eval_day);
      std::ofstream file;
      std::ostream* log = log_path.empty() ? nullptr : open_log(file);
      write_text(out_path, train::sweep_table(train::sweep_mu(values, s.model, split, s.train, log)), out);
    } else if (lad->parsed()) {
      auto s = load_setup(common);
      if (max_epochs) s.train.max_epochs = *max_epochs;
      const auto split = train::split_by_day(load_data(common, s.gen), s.train.eval_day);
      std::ofstream file;
      std::ostream* log = log_path.empty() ? nullptr : open_log(file);
      write_text(out_path, train::ladder_table(train::ladder(s.model, split, s.train, log)), out);
    } else if (serve->parsed()) {
      if (common.config_path.empty() && common.data_path.empty())
        throw CLI::RequiredError("serve-replay needs --data or --config");
      const auto m = load_model(checkpoint_path);
      const auto s = load_setup(common);
      const auto log = load_data(common, s.gen);
      serve::ServingState state;
      if (!state_path.empty() && std::filesystem::exists(state_path)) state = serve::ServingState::load(state_path);
      const auto r = serve::serve_replay(m.cfg, m.params, log, state, audit);
      if (!state_path.empty()) state.save(state_path);
      if (!out_path.empty()) {
        std::ostringstream os;
        os << "user_id\tsession\titem\tscore\n";
        for (const auto& rs : r.sessions)
          for (std::size_t i = 0; i < rs.scores.size(); ++i)
            os << rs.user_id << '\t' << rs.session << '\t' << i << '\t' << data::format_double(rs.scores[i]) << '\n';
        write_text(out_path, os.str(), out);
      }
      std::size_t updates = 0;
      for (const auto& u : state.log) updates += u.delta_norm > 0.0;
      out << "sessions " << r.sessions.size() << "\nstate_updates " << updates << "\nusers " << state.users.size()
          << "\n";
      if (r.audit.ran)
        out << "audit pass\naudit_scores " << r.audit.scores_compared << "\naudit_max_abs_diff "
            << r.audit.max_abs_diff << "\n";
    }
  } catch (const CLI::RequiredError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace seqrank::cli
