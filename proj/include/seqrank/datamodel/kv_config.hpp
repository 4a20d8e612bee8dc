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
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace seqrank::data {

/// Plain `key = value` text config. '#' starts a comment, blank lines are
/// ignored, duplicate keys are an error. Keys are conventionally namespaced
/// ("gen.users", "train.mu", "model.hidden_dim").
class KvConfig {
 public:
  static KvConfig parse(std::string_view text, std::string_view origin = "<config>");
  static KvConfig load(const std::string& path);

  bool has(std::string_view key) const;
  void set(std::string key, std::string value);

  std::string get_string(std::string_view key, std::string_view fallback) const;
  double get_double(std::string_view key, double fallback) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  std::size_t get_size(std::string_view key, std::size_t fallback) const;
  std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;
  std::vector<std::size_t> get_sizes(std::string_view key, std::vector<std::size_t> fallback) const;
  std::vector<double> get_doubles(std::string_view key, std::vector<double> fallback) const;

  /// Keys under `prefix` that are not in `known` (both given without prefix).
  std::vector<std::string> unknown_keys(std::string_view prefix, const std::vector<std::string>& known) const;
  /// Throws std::invalid_argument listing any unknown keys under `prefix`.
  void require_known(std::string_view prefix, const std::vector<std::string>& known) const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }
  std::string to_text() const;

 private:
  const std::string* find(std::string_view key) const;
  std::map<std::string, std::string, std::less<>> entries_;
};

std::vector<double> parse_double_list(std::string_view text);
std::vector<std::size_t> parse_size_list(std::string_view text);
std::string format_size_list(const std::vector<std::size_t>& values);
/// Shortest decimal that round-trips the double.
std::string format_double(double value);

}  // namespace seqrank::data
