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

#include <string>

#include "seqrank/datamodel/kv_config.hpp"
#include "seqrank/numcore/param_store.hpp"

namespace seqrank::model {

/// Binary checkpoint, little endian throughout:
///   "SEQRANK1"  u32 version
///   u32 n  n bytes of key-value config text
///   u32 block count, then per block:
///     u32 name length, name, u8 trainable, u32 rows, u32 cols, rows*cols f32
struct Checkpoint {
  data::KvConfig config;
  num::ParamStore<float> params;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);
std::string encode_checkpoint(const Checkpoint& ckpt);
Checkpoint decode_checkpoint(const std::string& bytes, const std::string& origin = "<checkpoint>");

}  // namespace seqrank::model
