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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rvfuzz/intrinsic.hpp"
#include "rvfuzz/rng.hpp"

namespace rvfuzz {

struct VReg {
  int id = 0;
  VectorType vtype;
  bool from_memory = false;
  bool quarantined = false;
  // vreg_<id>, with "_mem" for memory-backed registers.
  std::string name() const;
};

// Active registers per exact type token.
class VRegTable {
 public:
  void add(const VReg &r) { by_type_[r.vtype.token()].push_back(r.id); }
  void remove(int id);
  const std::vector<int> &active(const VectorType &t) const;
  const std::map<std::string, std::vector<int>> &entries() const { return by_type_; }

 private:
  std::map<std::string, std::vector<int>> by_type_;
};

struct OpInstance {
  const IntrinsicDef *def = nullptr;
  // Register id per parameter; -1 for parameters codegen fills in.
  std::vector<int> bound_params;
  std::optional<int> bound_return;
};

struct AllocConfig {
  double coin_bias = 0.5;
  // Test hook replacing the biased coin.
  std::function<bool()> coin;
};

struct Allocation {
  std::vector<VReg> regs;
  VRegTable table;
};

bool coin_flip(Rng &rng, double bias = 0.5);

// Vector parameters whose value codegen synthesizes to keep a conditionally
// undefined intrinsic well defined (gather indices, compress selector).
bool is_synthesized_param(const IntrinsicDef &def, std::size_t index);

std::vector<OpInstance> make_instances(const std::vector<const IntrinsicDef *> &defs);

// Register allocation by biased coin. `seed_regs` pre-populate the table (ids
// are reassigned).
Allocation allocate(std::vector<OpInstance> &ops, Rng &rng,
                    const AllocConfig &cfg = {},
                    const std::vector<VReg> &seed_regs = {});

// Registers each op reads / writes, in parameter order.
std::vector<int> reads_of(const OpInstance &op);
std::optional<int> write_of(const OpInstance &op);

}  // namespace rvfuzz
