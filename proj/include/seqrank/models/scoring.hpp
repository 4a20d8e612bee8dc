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

#include <vector>

#include "seqrank/models/network.hpp"

namespace seqrank::model {

/// Actor scores for every item of every session flagged in mask, computed by
/// the offline batch forward (users in groups of batch_users). Unflagged
/// sessions come back empty but still advance recurrent state.
std::vector<std::vector<std::vector<float>>> offline_scores(const ModelRef<float>& m,
                                                            const std::vector<data::UserHistory>& users,
                                                            const std::vector<std::vector<bool>>& mask,
                                                            std::size_t batch_users = 64, bool packed = true);

}  // namespace seqrank::model
