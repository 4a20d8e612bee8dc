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

#include "seqrank/serving/replay.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "seqrank/datamodel/kv_config.hpp"
#include "seqrank/models/network.hpp"
#include "seqrank/models/scoring.hpp"

namespace seqrank::serve {

namespace {

constexpr const char* kHeader = "seqrank-serving-state";

}  // namespace

num::Tensor2<float> ServingState::state_of(std::uint64_t user_id) const {
  auto it = users.find(user_id);
  return it == users.end() ? num::Tensor2<float>(1, state_dim) : it->second;
}

void ServingState::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write serving state: " + path);
  out << kHeader << " " << state_dim << "\n";
  for (const auto& [user, h] : users) {
    auto ts = last_timestamp.find(user);
    out << user << " " << (ts == last_timestamp.end() ? 0 : ts->second);
    for (float v : h.data()) out << " " << data::format_double(v);
    out << "\n";
  }
  if (!out) throw std::runtime_error("failed writing serving state: " + path);
}

ServingState ServingState::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read serving state: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty serving state");
  std::istringstream head(line);
  std::string magic;
  ServingState s;
  if (!(head >> magic >> s.state_dim) || magic != kHeader) throw std::runtime_error(path + ": not a serving state");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::uint64_t user;
    std::int64_t ts;
    num::Tensor2<float> h(1, s.state_dim);
    if (!(row >> user >> ts)) throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": bad user entry");
    for (auto& v : h.data())
      if (!(row >> v)) throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": short state vector");
    std::string extra;
    if (row >> extra) throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": trailing values");
    if (!s.users.emplace(user, std::move(h)).second)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": duplicate user " + std::to_string(user));
    s.last_timestamp[user] = ts;
  }
  return s;
}

ReplayResult serve_replay(const model::ModelConfig& cfg, const num::ParamStore<float>& params,
                          const std::vector<data::UserHistory>& histories, ServingState& state, bool audit,
                          double tolerance) {
  if (!model::is_recurrent(cfg.variant))
    throw std::invalid_argument("serve_replay: variant " + std::string(model::variant_name(cfg.variant)) +
                                " keeps no user state");
  model::check_params(cfg, params);
  if (state.state_dim == 0) state.state_dim = cfg.state_dim;
  if (state.state_dim != cfg.state_dim) throw std::invalid_argument("serve_replay: state width does not match model");
  const model::ModelRef<float> m{cfg, params};

  ReplayResult result;
  for (const auto& user : histories) {
    if (audit && state.users.count(user.user_id))
      throw std::invalid_argument("serve_replay: audit needs a fresh state, but user " + std::to_string(user.user_id) +
                                  " already has one");
    num::Tensor2<float> h = state.state_of(user.user_id);
    auto last = state.last_timestamp.find(user.user_id);
    std::int64_t prev = last == state.last_timestamp.end() ? std::numeric_limits<std::int64_t>::min() : last->second;
    for (std::size_t t = 0; t < user.sessions.size(); ++t) {
      const auto& s = user.sessions[t];
      if (s.timestamp <= prev)
        throw std::invalid_argument("serve_replay: user " + std::to_string(user.user_id) + " session " +
                                    std::to_string(t) + " is not after the previous one");
      prev = s.timestamp;
      const auto enc = model::encode_session(m, user, t);
      const auto labels = s.labels();
      const auto k = model::rnn_kernel(m, enc, h, labels);
      const auto scores = model::actor_scores(m, k.omega);
      ReplaySession out{user.user_id, t, {}};
      for (std::size_t i = 0; i < scores.rows(); ++i) out.scores.push_back(scores(i, 0));
      result.sessions.push_back(std::move(out));
      double delta = 0.0;
      for (std::size_t j = 0; j < h.size(); ++j) {
        const double d = static_cast<double>(k.state.data()[j]) - static_cast<double>(h.data()[j]);
        delta += d * d;
      }
      state.log.push_back({user.user_id, t, s.timestamp, std::sqrt(delta)});
      h = k.state;
    }
    state.users[user.user_id] = h;
    state.last_timestamp[user.user_id] = prev;
  }

  if (audit) {
    std::vector<std::vector<bool>> mask;
    for (const auto& u : histories) mask.emplace_back(u.sessions.size(), true);
    const auto offline = model::offline_scores(m, histories, mask);
    result.audit.ran = true;
    std::size_t k = 0;
    for (std::size_t u = 0; u < histories.size(); ++u)
      for (std::size_t t = 0; t < histories[u].sessions.size(); ++t, ++k) {
        const auto& online = result.sessions[k].scores;
        const auto& ref = offline[u][t];
        if (online.size() != ref.size())
          throw std::runtime_error("serve_replay audit: item count differs at user " +
                                   std::to_string(histories[u].user_id) + " session " + std::to_string(t));
        for (std::size_t i = 0; i < ref.size(); ++i) {
          const double d = std::abs(static_cast<double>(online[i]) - static_cast<double>(ref[i]));
          result.audit.max_abs_diff = std::max(result.audit.max_abs_diff, d);
          ++result.audit.scores_compared;
          if (!(d <= tolerance))
            throw std::runtime_error("serve_replay audit: user " + std::to_string(histories[u].user_id) +
                                     " session " + std::to_string(t) + " item " + std::to_string(i) +
                                     " differs by " + std::to_string(d));
        }
      }
  }
  return result;
}

}  // namespace seqrank::serve
