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

#include "seqrank/datamodel/tsv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace seqrank::data {

namespace {

void put_float(std::string& out, float v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("write_tsv: cannot format float");
  out.append(buf, ptr);
}

template <typename V>
void put_int(std::string& out, V v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  out.append(buf, ptr);
}

class RowReader {
 public:
  RowReader(std::string_view line, std::size_t line_no, const std::string& origin)
      : line_no_(line_no), origin_(origin) {
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      fields_.push_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
  }

  std::size_t size() const { return fields_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error(origin_ + ": line " + std::to_string(line_no_) + ": " + what);
  }

  void require(std::size_t count) const {
    if (pos_ + count > fields_.size())
      fail("row is short: needs at least " + std::to_string(pos_ + count) + " columns, has " +
           std::to_string(fields_.size()));
  }

  template <typename V>
  V integer(const char* what) {
    require(1);
    const std::string_view f = fields_[pos_++];
    V out{};
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
    if (ec != std::errc{} || ptr != f.data() + f.size())
      fail(std::string("bad ") + what + " '" + std::string(f) + "' in column " + std::to_string(pos_));
    return out;
  }

  float real() {
    require(1);
    const std::string_view f = fields_[pos_++];
    float out{};
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
    if (ec != std::errc{} || ptr != f.data() + f.size())
      fail("bad real '" + std::string(f) + "' in column " + std::to_string(pos_));
    return out;
  }

  bool flag() {
    const auto v = integer<int>("flag");
    if (v != 0 && v != 1) fail("flag must be 0 or 1 in column " + std::to_string(pos_));
    return v == 1;
  }

  std::size_t line() const { return line_no_; }

 private:
  std::vector<std::string_view> fields_;
  std::size_t pos_ = 0;
  std::size_t line_no_;
  const std::string& origin_;
};

}  // namespace

std::size_t tsv_column_count(const QuerySession& s, std::size_t longterm_length) {
  const std::size_t f = s.items.empty() ? 0 : s.items.front().dense.size();
  return 3 + (6 + s.query_dense.size() + 4 * longterm_length) + s.items.size() * (4 + f + 2);
}

std::string to_tsv(const std::vector<UserHistory>& histories) {
  std::string out;
  for (const auto& h : histories) {
    for (const auto& s : h.sessions) {
      if (s.items.empty()) throw std::invalid_argument("write_tsv: session without items");
      const std::size_t f = s.items.front().dense.size();
      put_int(out, h.user_id);
      out += '\t';
      put_int(out, s.session_id);
      out += '\t';
      put_int(out, s.timestamp);
      out += '\t';
      put_int(out, s.query_id);
      out += '\t';
      put_int(out, s.query_category);
      out += '\t';
      put_int(out, s.query_dense.size());
      for (float q : s.query_dense) {
        out += '\t';
        put_float(out, q);
      }
      out += '\t';
      put_int(out, f);
      out += '\t';
      put_int(out, s.items.size());
      out += '\t';
      put_int(out, h.longterm.size());
      for (const auto& lt : h.longterm) {
        for (auto id : {lt.item, lt.category, lt.shop, lt.brand}) {
          out += '\t';
          put_int(out, id);
        }
      }
      for (const auto& it : s.items) {
        if (it.dense.size() != f) throw std::invalid_argument("write_tsv: ragged dense features in a session");
        for (auto id : {it.ids.item, it.ids.category, it.ids.shop, it.ids.brand}) {
          out += '\t';
          put_int(out, id);
        }
        for (float v : it.dense) {
          out += '\t';
          put_float(out, v);
        }
        out += it.clicked ? "\t1" : "\t0";
        out += it.purchased ? "\t1" : "\t0";
      }
      out += '\n';
    }
  }
  return out;
}

std::size_t write_tsv(const std::vector<UserHistory>& histories, const std::string& path) {
  const std::string text = to_tsv(histories);
  std::ofstream outf(path, std::ios::binary | std::ios::trunc);
  if (!outf) throw std::runtime_error("write_tsv: cannot open '" + path + "' for writing");
  outf.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!outf) throw std::runtime_error("write_tsv: write to '" + path + "' failed");
  return total_sessions(histories);
}

std::vector<UserHistory> parse_tsv(const std::string& text, const std::string& origin) {
  std::vector<UserHistory> users;
  std::map<std::uint64_t, std::size_t> slot;
  std::map<std::uint64_t, std::size_t> first_line;
  long declared_f = -1, declared_fq = -1;

  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line(text.data() + pos, (nl == std::string::npos ? text.size() : nl) - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty()) continue;

    RowReader row(line, line_no, origin);
    const auto user_id = row.integer<std::uint64_t>("user_id");
    QuerySession s;
    s.session_id = row.integer<std::uint64_t>("session_id");
    s.timestamp = row.integer<std::int64_t>("timestamp");
    s.query_id = row.integer<std::uint32_t>("query_id");
    s.query_category = row.integer<std::uint32_t>("query_category");
    const auto fq = row.integer<std::size_t>("query width");
    if (declared_fq < 0) declared_fq = static_cast<long>(fq);
    if (static_cast<long>(fq) != declared_fq)
      row.fail("query width " + std::to_string(fq) + " differs from declared " + std::to_string(declared_fq));
    row.require(fq);
    for (std::size_t i = 0; i < fq; ++i) s.query_dense.push_back(row.real());
    const auto f = row.integer<std::size_t>("feature width");
    if (declared_f < 0) declared_f = static_cast<long>(f);
    if (static_cast<long>(f) != declared_f)
      row.fail("feature width " + std::to_string(f) + " differs from declared " + std::to_string(declared_f));
    const auto n_items = row.integer<std::size_t>("item count");
    const auto lt_len = row.integer<std::size_t>("long-term length");
    const std::size_t expected = 3 + 6 + fq + 4 * lt_len + n_items * (4 + f + 2);
    if (row.size() != expected)
      row.fail("expected " + std::to_string(expected) + " columns for " + std::to_string(n_items) +
               " items of width " + std::to_string(f) + ", got " + std::to_string(row.size()));
    if (n_items == 0) row.fail("session has no items");

    std::vector<IdQuad> longterm(lt_len);
    for (auto& q : longterm) {
      q.item = row.integer<std::uint32_t>("id");
      q.category = row.integer<std::uint32_t>("id");
      q.shop = row.integer<std::uint32_t>("id");
      q.brand = row.integer<std::uint32_t>("id");
    }
    for (std::size_t i = 0; i < n_items; ++i) {
      ItemInteraction it;
      it.ids.item = row.integer<std::uint32_t>("id");
      it.ids.category = row.integer<std::uint32_t>("id");
      it.ids.shop = row.integer<std::uint32_t>("id");
      it.ids.brand = row.integer<std::uint32_t>("id");
      it.dense.resize(f);
      for (auto& v : it.dense) v = row.real();
      it.clicked = row.flag();
      it.purchased = row.flag();
      s.items.push_back(std::move(it));
    }

    auto [it, inserted] = slot.emplace(user_id, users.size());
    if (inserted) {
      UserHistory h;
      h.user_id = user_id;
      h.longterm = std::move(longterm);
      users.push_back(std::move(h));
      first_line.emplace(user_id, line_no);
    } else if (users[it->second].longterm != longterm) {
      row.fail("long-term ids of user " + std::to_string(user_id) + " differ from line " +
               std::to_string(first_line[user_id]));
    }
    users[it->second].sessions.push_back(std::move(s));
  }

  for (auto& h : users) {
    std::stable_sort(h.sessions.begin(), h.sessions.end(), [](const QuerySession& a, const QuerySession& b) {
      return a.session_id != b.session_id ? a.session_id < b.session_id : a.timestamp < b.timestamp;
    });
    for (std::size_t t = 1; t < h.sessions.size(); ++t) {
      const auto& prev = h.sessions[t - 1];
      const auto& cur = h.sessions[t];
      if (prev.session_id == cur.session_id)
        throw std::runtime_error(origin + ": user " + std::to_string(h.user_id) + ": duplicate session id " +
                                 std::to_string(cur.session_id));
      if (prev.timestamp >= cur.timestamp)
        throw std::runtime_error(origin + ": user " + std::to_string(h.user_id) + ": session ids " +
                                 std::to_string(prev.session_id) + " and " + std::to_string(cur.session_id) +
                                 " are not in timestamp order");
    }
  }
  return users;
}

std::vector<UserHistory> read_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_tsv: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tsv(buf.str(), path);
}

}  // namespace seqrank::data
