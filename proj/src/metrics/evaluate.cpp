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

#include "seqrank/metrics/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "seqrank/metrics/ranking.hpp"
#include "seqrank/models/scoring.hpp"

namespace seqrank::metrics {

namespace {

struct Accumulator {
  double auc = 0, ndcg = 0;
  std::size_t auc_n = 0, ndcg_n = 0, sessions = 0;
  std::set<std::size_t> users;
};

}  // namespace

std::string MetricsReport::to_text(const std::string& prefix) const {
  std::string out;
  auto line = [&](const std::string& key, const std::string& value) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-32s %s\n", (prefix + key).c_str(), value.c_str());
    out += buf;
  };
  auto real = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };
  line("session_auc", real(session_auc));
  line("roc_auc", real(roc_auc));
  line("ndcg", real(ndcg));
  line("users", std::to_string(users));
  line("sessions", std::to_string(sessions));
  line("auc_sessions", std::to_string(auc_sessions));
  line("auc_skipped", std::to_string(auc_skipped));
  line("ndcg_sessions", std::to_string(ndcg_sessions));
  line("ndcg_skipped", std::to_string(ndcg_skipped));
  for (const auto& g : groups) {
    line("group." + g.name + ".users", std::to_string(g.users));
    line("group." + g.name + ".sessions", std::to_string(g.sessions));
    line("group." + g.name + ".session_auc", real(g.session_auc));
    line("group." + g.name + ".ndcg", real(g.ndcg));
  }
  return out;
}

MetricsReport evaluate_protocol(const model::ModelRef<float>& m, const std::vector<data::UserHistory>& histories,
                                const EvalOptions& options) {
  const int eval_day = options.eval_day < 0 ? data::last_day(histories) : options.eval_day;
  const bool recurrent = model::is_recurrent(m.cfg.variant);
  const int first_day = recurrent ? eval_day - options.warmup_days : eval_day;

  std::vector<data::UserHistory> users;
  std::vector<std::vector<bool>> mask;
  std::vector<std::size_t> past_counts;
  std::vector<bool> category_new;
  for (const auto& h : histories) {
    bool has_final = false;
    for (const auto& s : h.sessions) has_final = has_final || s.day() == eval_day;
    if (!has_final) continue;
    data::UserHistory trimmed;
    trimmed.user_id = h.user_id;
    trimmed.longterm = h.longterm;
    std::set<std::uint32_t> seen;
    for (const auto& q : h.longterm) seen.insert(q.category);
    std::size_t past = 0;
    bool is_new = false;
    std::vector<bool> flags;
    for (const auto& s : h.sessions) {
      const int day = s.day();
      if (day < eval_day) {
        ++past;
        seen.insert(s.query_category);
      }
      if (day == eval_day && !seen.count(s.query_category)) is_new = true;
      if (day < first_day || day > eval_day) continue;
      trimmed.sessions.push_back(s);
      flags.push_back(day == eval_day);
    }
    users.push_back(std::move(trimmed));
    mask.push_back(std::move(flags));
    past_counts.push_back(past);
    category_new.push_back(is_new);
  }
  if (users.empty()) throw std::invalid_argument("evaluate: no sessions on day " + std::to_string(eval_day));

  const auto scores = model::offline_scores(m, users, mask, options.batch_users, options.packed);

  const std::string threshold = std::to_string(options.past_session_threshold);
  const std::vector<std::string> names = {"past_lt_" + threshold, "past_ge_" + threshold, "category_new",
                                          "category_old"};
  std::vector<Accumulator> acc(names.size());
  Accumulator all;
  MetricsReport report;
  report.users = users.size();
  double roc_total = 0;
  for (std::size_t u = 0; u < users.size(); ++u) {
    const std::size_t g_past = past_counts[u] < options.past_session_threshold ? 0 : 1;
    const std::size_t g_cat = category_new[u] ? 2 : 3;
    for (std::size_t t = 0; t < users[u].sessions.size(); ++t) {
      if (!mask[u][t]) continue;
      const auto labels = users[u].sessions[t].labels();
      const std::vector<double> p(scores[u][t].begin(), scores[u][t].end());
      ++report.sessions;
      for (Accumulator* a : {&all, &acc[g_past], &acc[g_cat]}) {
        ++a->sessions;
        a->users.insert(u);
      }
      if (auc_defined(labels)) {
        const double v = auc_sign(p, labels);
        roc_total += roc_auc(p, labels);
        for (Accumulator* a : {&all, &acc[g_past], &acc[g_cat]}) {
          a->auc += v;
          ++a->auc_n;
        }
      } else {
        ++report.auc_skipped;
      }
      if (ndcg_defined(labels)) {
        const double v = ndcg(p, labels);
        for (Accumulator* a : {&all, &acc[g_past], &acc[g_cat]}) {
          a->ndcg += v;
          ++a->ndcg_n;
        }
      } else {
        ++report.ndcg_skipped;
      }
    }
  }
  if (all.auc_n == 0) throw std::invalid_argument("evaluate: no final-day session has both labels");
  report.auc_sessions = all.auc_n;
  report.ndcg_sessions = all.ndcg_n;
  report.session_auc = all.auc / static_cast<double>(all.auc_n);
  report.roc_auc = roc_total / static_cast<double>(all.auc_n);
  report.ndcg = all.ndcg_n ? all.ndcg / static_cast<double>(all.ndcg_n) : 0.0;
  for (std::size_t g = 0; g < names.size(); ++g) {
    GroupMetrics gm;
    gm.name = names[g];
    gm.users = acc[g].users.size();
    gm.sessions = acc[g].sessions;
    gm.session_auc = acc[g].auc_n ? acc[g].auc / static_cast<double>(acc[g].auc_n) : 0.0;
    gm.ndcg = acc[g].ndcg_n ? acc[g].ndcg / static_cast<double>(acc[g].ndcg_n) : 0.0;
    report.groups.push_back(gm);
  }
  return report;
}

}  // namespace seqrank::metrics
