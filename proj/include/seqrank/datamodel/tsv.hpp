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
#include <string>
#include <vector>

#include "seqrank/datamodel/types.hpp"

namespace seqrank::data {

/// User Session Input TSV: one row per query session, all sessions of a user
/// contiguous and chronological. Columns, tab separated:
///
///   user_id session_id timestamp                               (3)
///   query_id query_category Fq q_1..q_Fq F N L                 (Q = 6 + Fq + 4L)
///   (lt_item lt_category lt_shop lt_brand) x L
///   (item category shop brand f_1..f_F clicked purchased) x N  (N x (4 + F + 2))
///
/// F and Fq are declared on every row and must agree across the file. Reals
/// are written as the shortest decimal that round-trips the float, so
/// write -> read -> write is byte-identical.
std::size_t write_tsv(const std::vector<UserHistory>& histories, const std::string& path);
std::string to_tsv(const std::vector<UserHistory>& histories);

/// Parses, groups rows by user (first-appearance order), sorts each user's
/// sessions chronologically and validates. Errors carry the 1-based line.
std::vector<UserHistory> read_tsv(const std::string& path);
std::vector<UserHistory> parse_tsv(const std::string& text, const std::string& origin = "<tsv>");

/// Number of fields a session row occupies.
std::size_t tsv_column_count(const QuerySession& session, std::size_t longterm_length);

}  // namespace seqrank::data
