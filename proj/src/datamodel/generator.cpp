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

#include "seqrank/datamodel/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "seqrank/numcore/math.hpp"

namespace seqrank::data {

namespace {

using Vec = std::vector<double>;

constexpr std::uint64_t kSessionIdStride = 1000000;

Vec random_unit(num::Rng& rng, std::size_t dim) {
  Vec v(dim);
  double norm = 0.0;
  for (auto& x : v) {
    x = rng.normal();
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

void normalize(Vec& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0)
    for (auto& x : v) x /= norm;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double power_mean(std::size_t lo, std::size_t hi, double s) {
  // log-space weights keep large |s| stable.
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = lo; k <= hi; ++k) top = std::max(top, -s * std::log(static_cast<double>(k)));
  double z = 0.0, m = 0.0;
  for (std::size_t k = lo; k <= hi; ++k) {
    const double w = std::exp(-s * std::log(static_cast<double>(k)) - top);
    z += w;
    m += w * static_cast<double>(k);
  }
  return m / z;
}

struct Catalog {
  std::vector<Vec> centroids;               // per category (index = id - 1)
  std::vector<std::vector<std::uint32_t>> by_category;
  std::vector<IdQuad> ids;                  // per item (index = id - 1)
  std::vector<Vec> latent;
  std::vector<double> popularity;
  std::vector<std::vector<float>> dense;
  std::vector<std::vector<float>> query_dense;  // per category
};

Catalog build_catalog(const GeneratorConfig& c) {
  num::Rng rng(num::mix_seed(c.seed, 0));
  Catalog cat;
  const std::size_t k = c.latent_dim;
  for (std::size_t i = 0; i < c.categories; ++i) cat.centroids.push_back(random_unit(rng, k));
  cat.by_category.resize(c.categories);

  std::vector<Vec> proj(c.dense_width, Vec(k));
  for (auto& row : proj)
    for (auto& x : row) x = rng.normal() / std::sqrt(static_cast<double>(k));
  Vec pop_dir(c.dense_width);
  for (auto& x : pop_dir) x = rng.normal();
  std::vector<Vec> qproj(c.query_dense_width, Vec(k));
  for (auto& row : qproj)
    for (auto& x : row) x = rng.normal() / std::sqrt(static_cast<double>(k));

  for (std::size_t j = 0; j < c.catalog_items; ++j) {
    IdQuad q;
    q.item = static_cast<std::uint32_t>(j + 1);
    const std::size_t category = rng.index(c.categories);
    q.category = static_cast<std::uint32_t>(category + 1);
    q.shop = static_cast<std::uint32_t>(rng.index(c.shops) + 1);
    q.brand = static_cast<std::uint32_t>(rng.index(c.brands) + 1);
    Vec v = cat.centroids[category];
    for (auto& x : v) x += 0.6 * rng.normal() / std::sqrt(static_cast<double>(k));
    normalize(v);
    const double pop = 0.5 * rng.normal();
    std::vector<float> f(c.dense_width);
    for (std::size_t r = 0; r < c.dense_width; ++r)
      f[r] = static_cast<float>(dot(proj[r], v) + 0.3 * pop * pop_dir[r] + 0.1 * rng.normal());
    cat.ids.push_back(q);
    cat.latent.push_back(std::move(v));
    cat.popularity.push_back(pop);
    cat.dense.push_back(std::move(f));
    cat.by_category[category].push_back(static_cast<std::uint32_t>(j));
  }
  for (std::size_t i = 0; i < c.categories; ++i) {
    std::vector<float> f(c.query_dense_width);
    for (std::size_t r = 0; r < c.query_dense_width; ++r)
      f[r] = static_cast<float>(dot(qproj[r], cat.centroids[i]));
    cat.query_dense.push_back(std::move(f));
  }
  // A category can come out empty for tiny catalogs; give it one item.
  for (std::size_t i = 0; i < c.categories; ++i)
    if (cat.by_category[i].empty()) cat.by_category[i].push_back(static_cast<std::uint32_t>(i % c.catalog_items));
  return cat;
}

std::size_t sample_category(const Catalog& cat, const Vec& pref, double scale, num::Rng& rng) {
  // Gumbel-max over softmax(scale * <pref, centroid>).
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cat.centroids.size(); ++i) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    const double score = scale * dot(pref, cat.centroids[i]) - std::log(-std::log(u));
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

std::uint32_t sample_item_in(const Catalog& cat, std::size_t category, num::Rng& rng) {
  const auto& pool = cat.by_category[category];
  return pool[rng.index(pool.size())];
}

}  // namespace

CountDistribution::CountDistribution(std::size_t lo, std::size_t hi, double mean) : lo_(lo) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("CountDistribution: need 1 <= lo <= hi");
  const double target = std::clamp(mean, static_cast<double>(lo), static_cast<double>(hi));
  if (hi == lo) {
    cdf_ = {1.0};
    expected_ = static_cast<double>(lo);
    return;
  }
  double a = -40.0, b = 40.0;  // mean is decreasing in the exponent
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (power_mean(lo, hi, mid) > target) a = mid;
    else b = mid;
  }
  exponent_ = 0.5 * (a + b);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = lo; k <= hi; ++k) top = std::max(top, -exponent_ * std::log(static_cast<double>(k)));
  double z = 0.0;
  std::vector<double> w;
  for (std::size_t k = lo; k <= hi; ++k) {
    w.push_back(std::exp(-exponent_ * std::log(static_cast<double>(k)) - top));
    z += w.back();
  }
  double acc = 0.0;
  expected_ = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i] / z;
    expected_ += w[i] / z * static_cast<double>(lo + i);
    cdf_.push_back(acc);
  }
  cdf_.back() = 1.0;
}

std::size_t CountDistribution::sample(num::Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto idx = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(), cdf_.size() - 1));
  return lo_ + idx;
}

void GeneratorConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("GeneratorConfig: " + m); };
  if (users < 1) fail("users must be >= 1");
  if (sessions_max < 1) fail("sessions_max must be >= 1");
  if (sessions_max >= kSessionIdStride) fail("sessions_max too large");
  if (sessions_mean < 1.0 || sessions_mean > static_cast<double>(sessions_max))
    fail("sessions_mean must lie in [1, sessions_max]");
  if (items_max < 2) fail("items_max must be >= 2 (a session needs a purchased and a non-purchased item)");
  if (items_min < 1 || items_min > items_max) fail("items_min must lie in [1, items_max]");
  if (items_mean < static_cast<double>(items_min) || items_mean > static_cast<double>(items_max))
    fail("items_mean must lie in [items_min, items_max]");
  if (dense_width < 1 || latent_dim < 1) fail("dense_width and latent_dim must be >= 1");
  if (catalog_items < 1 || categories < 1 || shops < 1 || brands < 1 || queries_per_category < 1)
    fail("catalog sizes must be >= 1");
  if (days < 1) fail("days must be >= 1");
  if (eligible_fraction < 0.0 || eligible_fraction > 1.0) fail("eligible_fraction must lie in [0, 1]");
  if (drift_rate < 0.0 || relevance_noise < 0.0) fail("drift_rate and relevance_noise must be >= 0");
}

GeneratorConfig GeneratorConfig::from_kv(const KvConfig& cfg, std::string_view prefix) {
  const std::string p(prefix);
  cfg.require_known(p, {"users", "sessions_mean", "sessions_max", "items_mean", "items_min", "items_max",
                        "dense_width", "query_dense_width", "latent_dim", "drift_rate", "relevance_noise",
                        "affinity_scale", "category_focus", "catalog_items", "categories", "shops", "brands",
                        "queries_per_category", "longterm_max", "days", "eligible_fraction", "seed"});
  GeneratorConfig g;
  g.users = cfg.get_size(p + "users", g.users);
  g.sessions_mean = cfg.get_double(p + "sessions_mean", g.sessions_mean);
  g.sessions_max = cfg.get_size(p + "sessions_max", g.sessions_max);
  g.items_mean = cfg.get_double(p + "items_mean", g.items_mean);
  g.items_min = cfg.get_size(p + "items_min", g.items_min);
  g.items_max = cfg.get_size(p + "items_max", g.items_max);
  g.dense_width = cfg.get_size(p + "dense_width", g.dense_width);
  g.query_dense_width = cfg.get_size(p + "query_dense_width", g.query_dense_width);
  g.latent_dim = cfg.get_size(p + "latent_dim", g.latent_dim);
  g.drift_rate = cfg.get_double(p + "drift_rate", g.drift_rate);
  g.relevance_noise = cfg.get_double(p + "relevance_noise", g.relevance_noise);
  g.affinity_scale = cfg.get_double(p + "affinity_scale", g.affinity_scale);
  g.category_focus = cfg.get_double(p + "category_focus", g.category_focus);
  g.catalog_items = cfg.get_size(p + "catalog_items", g.catalog_items);
  g.categories = cfg.get_size(p + "categories", g.categories);
  g.shops = cfg.get_size(p + "shops", g.shops);
  g.brands = cfg.get_size(p + "brands", g.brands);
  g.queries_per_category = cfg.get_size(p + "queries_per_category", g.queries_per_category);
  g.longterm_max = cfg.get_size(p + "longterm_max", g.longterm_max);
  g.days = cfg.get_size(p + "days", g.days);
  g.eligible_fraction = cfg.get_double(p + "eligible_fraction", g.eligible_fraction);
  g.seed = cfg.get_u64(p + "seed", g.seed);
  return g;
}

void GeneratorConfig::to_kv(KvConfig& cfg, std::string_view prefix) const {
  const std::string p(prefix);
  cfg.set(p + "users", std::to_string(users));
  cfg.set(p + "sessions_mean", format_double(sessions_mean));
  cfg.set(p + "sessions_max", std::to_string(sessions_max));
  cfg.set(p + "items_mean", format_double(items_mean));
  cfg.set(p + "items_min", std::to_string(items_min));
  cfg.set(p + "items_max", std::to_string(items_max));
  cfg.set(p + "dense_width", std::to_string(dense_width));
  cfg.set(p + "query_dense_width", std::to_string(query_dense_width));
  cfg.set(p + "latent_dim", std::to_string(latent_dim));
  cfg.set(p + "drift_rate", format_double(drift_rate));
  cfg.set(p + "relevance_noise", format_double(relevance_noise));
  cfg.set(p + "affinity_scale", format_double(affinity_scale));
  cfg.set(p + "category_focus", format_double(category_focus));
  cfg.set(p + "catalog_items", std::to_string(catalog_items));
  cfg.set(p + "categories", std::to_string(categories));
  cfg.set(p + "shops", std::to_string(shops));
  cfg.set(p + "brands", std::to_string(brands));
  cfg.set(p + "queries_per_category", std::to_string(queries_per_category));
  cfg.set(p + "longterm_max", std::to_string(longterm_max));
  cfg.set(p + "days", std::to_string(days));
  cfg.set(p + "eligible_fraction", format_double(eligible_fraction));
  cfg.set(p + "seed", std::to_string(seed));
}

std::vector<UserHistory> generate_log(const GeneratorConfig& c) {
  c.validate();
  const Catalog cat = build_catalog(c);
  const CountDistribution session_counts(1, c.sessions_max, c.sessions_mean);
  const CountDistribution item_counts(c.items_min, c.items_max, c.items_mean);
  const double step = c.drift_rate / std::sqrt(static_cast<double>(c.latent_dim));
  const auto horizon = static_cast<std::int64_t>(c.days) * kSecondsPerDay;

  std::vector<UserHistory> out;
  out.reserve(c.users);
  for (std::size_t u = 0; u < c.users; ++u) {
    num::Rng rng(num::mix_seed(c.seed, u + 1));
    UserHistory user;
    user.user_id = u + 1;
    Vec pref = random_unit(rng, c.latent_dim);

    // Long-term behavior predates the log and reflects the starting preference.
    const std::size_t lt_len = c.longterm_max == 0 ? 0 : c.longterm_max / 2 + rng.index(c.longterm_max / 2 + 1);
    for (std::size_t l = 0; l < lt_len; ++l) {
      const std::size_t category = sample_category(cat, pref, 3.0, rng);
      std::uint32_t best = sample_item_in(cat, category, rng);
      for (int probe = 0; probe < 4; ++probe) {
        const std::uint32_t cand = sample_item_in(cat, category, rng);
        if (dot(pref, cat.latent[cand]) > dot(pref, cat.latent[best])) best = cand;
      }
      user.longterm.push_back(cat.ids[best]);
    }

    const std::size_t n_sessions = session_counts.sample(rng);
    std::vector<std::int64_t> stamps(n_sessions);
    for (auto& t : stamps) t = static_cast<std::int64_t>(rng.index(static_cast<std::size_t>(horizon)));
    std::sort(stamps.begin(), stamps.end());
    for (std::size_t i = 1; i < stamps.size(); ++i) stamps[i] = std::max(stamps[i], stamps[i - 1] + 1);

    for (std::size_t t = 0; t < n_sessions; ++t) {
      for (auto& x : pref) x += step * rng.normal();
      normalize(pref);

      QuerySession s;
      s.session_id = user.user_id * kSessionIdStride + t;
      s.timestamp = stamps[t];
      const std::size_t qcat = sample_category(cat, pref, 3.0, rng);
      s.query_category = static_cast<std::uint32_t>(qcat + 1);
      s.query_id = static_cast<std::uint32_t>(qcat * c.queries_per_category + rng.index(c.queries_per_category) + 1);
      s.query_dense = cat.query_dense[qcat];
      for (auto& x : s.query_dense) x += static_cast<float>(0.1 * rng.normal());

      const std::size_t n_items = item_counts.sample(rng);
      std::vector<std::uint32_t> shown(n_items);
      for (auto& j : shown) {
        const std::size_t icat = rng.bernoulli(c.category_focus) ? qcat : rng.index(c.categories);
        j = sample_item_in(cat, icat, rng);
      }
      std::vector<double> base(n_items);
      for (std::size_t i = 0; i < n_items; ++i)
        base[i] = c.affinity_scale * dot(pref, cat.latent[shown[i]]) + cat.popularity[shown[i]];

      const bool must_purchase = rng.bernoulli(c.eligible_fraction);
      std::vector<bool> clicked(n_items);
      std::ptrdiff_t bought = -1;
      for (int attempt = 0; attempt < 100; ++attempt) {
        std::ptrdiff_t top = -1;
        double top_util = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_items; ++i) {
          const double util = base[i] + c.relevance_noise * rng.normal();
          clicked[i] = rng.bernoulli(num::sigmoid(util - 1.0));
          if (clicked[i] && util > top_util) {
            top_util = util;
            top = static_cast<std::ptrdiff_t>(i);
          }
        }
        if (top >= 0 && rng.bernoulli(num::sigmoid(top_util))) bought = top;
        if (bought >= 0 || !must_purchase) break;
      }
      if (bought < 0 && must_purchase) {
        bought = std::max_element(base.begin(), base.end()) - base.begin();
        clicked[static_cast<std::size_t>(bought)] = true;
      }

      for (std::size_t i = 0; i < n_items; ++i) {
        ItemInteraction it;
        it.ids = cat.ids[shown[i]];
        it.dense = cat.dense[shown[i]];
        it.clicked = clicked[i];
        it.purchased = static_cast<std::ptrdiff_t>(i) == bought;
        s.items.push_back(std::move(it));
      }
      user.sessions.push_back(std::move(s));
    }
    out.push_back(std::move(user));
  }
  return out;
}

}  // namespace seqrank::data
