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

#include "seqrank/models/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace seqrank::model {

namespace {

constexpr char kMagic[8] = {'S', 'E', 'Q', 'R', 'A', 'N', 'K', '1'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  Reader(const std::string& bytes, const std::string& origin) : bytes_(bytes), origin_(origin) {}

  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size())
      throw std::runtime_error(origin_ + ": truncated checkpoint at byte " + std::to_string(pos_));
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::string str(std::size_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  const std::string& bytes_;
  const std::string& origin_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_checkpoint(const Checkpoint& ckpt) {
  std::string out(kMagic, sizeof(kMagic));
  put_u32(out, kCheckpointVersion);
  const std::string text = ckpt.config.to_text();
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  put_u32(out, static_cast<std::uint32_t>(ckpt.params.size()));
  for (const auto& b : ckpt.params.blocks()) {
    put_u32(out, static_cast<std::uint32_t>(b.name.size()));
    out += b.name;
    out.push_back(b.trainable ? 1 : 0);
    put_u32(out, static_cast<std::uint32_t>(b.value.rows()));
    put_u32(out, static_cast<std::uint32_t>(b.value.cols()));
    for (float v : b.value.data()) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

Checkpoint decode_checkpoint(const std::string& bytes, const std::string& origin) {
  Reader r(bytes, origin);
  if (r.str(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic)))
    throw std::runtime_error(origin + ": not a seqrank checkpoint");
  const auto version = r.u32();
  if (version != kCheckpointVersion)
    throw std::runtime_error(origin + ": unsupported checkpoint version " + std::to_string(version));
  Checkpoint ck;
  ck.config = data::KvConfig::parse(r.str(r.u32()), origin + " (config)");
  const auto blocks = r.u32();
  for (std::uint32_t i = 0; i < blocks; ++i) {
    std::string name = r.str(r.u32());
    const bool trainable = r.u8() != 0;
    const auto rows = r.u32(), cols = r.u32();
    r.need(std::size_t{4} * rows * cols);
    num::Tensor2<float> t(rows, cols);
    for (auto& v : t.data()) v = r.f32();
    if (!t.all_finite()) throw std::runtime_error(origin + ": block '" + name + "' holds non-finite values");
    ck.params.add(std::move(name), std::move(t), trainable);
  }
  if (!r.done()) throw std::runtime_error(origin + ": trailing bytes after the last block");
  return ck;
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  const std::string bytes = encode_checkpoint(ckpt);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_checkpoint(buf.str(), path);
}

}  // namespace seqrank::model
