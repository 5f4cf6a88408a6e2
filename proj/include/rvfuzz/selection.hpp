// Copyright 2026 The rvfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rvfuzz/intrinsic.hpp"
#include "rvfuzz/rng.hpp"

namespace rvfuzz {

struct SelectionConfig {
  std::uint32_t common_ratio = 8;
  std::size_t sequence_length = 10;
  std::uint64_t rng_seed = 0;
};

class SelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation intrinsics able to join a ratio-aligned sequence at `ratio`.
// Optional `accept` narrows the pool further (e.g. the oracle profile).
std::vector<const IntrinsicDef *> filter_candidates(
    const std::vector<IntrinsicDef> &defs, std::uint32_t ratio,
    const std::function<bool(const IntrinsicDef &)> &accept = {});

// N uniform draws with replacement, in draw order.
std::vector<const IntrinsicDef *> select_sequence(
    const std::vector<const IntrinsicDef *> &candidates,
    const SelectionConfig &cfg);
std::vector<const IntrinsicDef *> select_sequence(
    const std::vector<const IntrinsicDef *> &candidates, std::size_t n,
    Rng &rng);

// Ratio-alignment audit for one signature at a given common ratio.
bool participates_at_ratio(const IntrinsicDef &def, std::uint32_t ratio);

}  // namespace rvfuzz
