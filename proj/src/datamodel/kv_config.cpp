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

#include "seqrank/datamodel/kv_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace seqrank::data {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename V>
V parse_number(std::string_view key, std::string_view text) {
  V out{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument("config key '" + std::string(key) + "': cannot parse '" + std::string(text) + "'");
  return out;
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  text = trim(text);
  if (text.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

KvConfig KvConfig::parse(std::string_view text, std::string_view origin) {
  KvConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(std::string(origin) + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw std::invalid_argument(std::string(origin) + ":" + std::to_string(line_no) + ": empty key");
    if (cfg.entries_.count(key) != 0)
      throw std::invalid_argument(std::string(origin) + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    cfg.entries_.emplace(std::move(key), std::move(value));
  }
  return cfg;
}

KvConfig KvConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

bool KvConfig::has(std::string_view key) const { return find(key) != nullptr; }

void KvConfig::set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

const std::string* KvConfig::find(std::string_view key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string KvConfig::get_string(std::string_view key, std::string_view fallback) const {
  const std::string* v = find(key);
  return v ? *v : std::string(fallback);
}

double KvConfig::get_double(std::string_view key, double fallback) const {
  const std::string* v = find(key);
  return v ? parse_number<double>(key, *v) : fallback;
}

std::int64_t KvConfig::get_int(std::string_view key, std::int64_t fallback) const {
  const std::string* v = find(key);
  return v ? parse_number<std::int64_t>(key, *v) : fallback;
}

std::size_t KvConfig::get_size(std::string_view key, std::size_t fallback) const {
  const std::string* v = find(key);
  return v ? parse_number<std::size_t>(key, *v) : fallback;
}

std::uint64_t KvConfig::get_u64(std::string_view key, std::uint64_t fallback) const {
  const std::string* v = find(key);
  return v ? parse_number<std::uint64_t>(key, *v) : fallback;
}

bool KvConfig::get_bool(std::string_view key, bool fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw std::invalid_argument("config key '" + std::string(key) + "': expected a boolean, got '" + *v + "'");
}

std::vector<std::size_t> KvConfig::get_sizes(std::string_view key, std::vector<std::size_t> fallback) const {
  const std::string* v = find(key);
  return v ? parse_size_list(*v) : fallback;
}

std::vector<double> KvConfig::get_doubles(std::string_view key, std::vector<double> fallback) const {
  const std::string* v = find(key);
  return v ? parse_double_list(*v) : fallback;
}

std::vector<std::string> KvConfig::unknown_keys(std::string_view prefix, const std::vector<std::string>& known) const {
  std::vector<std::string> out;
  for (const auto& [key, value] : entries_) {
    if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0) continue;
    const std::string rest = key.substr(prefix.size());
    bool found = false;
    for (const auto& k : known) found = found || k == rest;
    if (!found) out.push_back(key);
  }
  return out;
}

void KvConfig::require_known(std::string_view prefix, const std::vector<std::string>& known) const {
  const auto unknown = unknown_keys(prefix, known);
  if (unknown.empty()) return;
  std::string msg = "unknown config key(s):";
  for (const auto& k : unknown) msg += " " + k;
  throw std::invalid_argument(msg);
}

std::string KvConfig::to_text() const {
  std::string out;
  for (const auto& [key, value] : entries_) out += key + " = " + value + "\n";
  return out;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split_commas(text)) out.push_back(parse_number<double>("list", part));
  return out;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (auto part : split_commas(text)) out.push_back(parse_number<std::size_t>("list", part));
  return out;
}

std::string format_size_list(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

}  // namespace seqrank::data
