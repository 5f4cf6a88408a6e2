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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rvfuzz/dataflow.hpp"
#include "rvfuzz/program.hpp"
#include "rvfuzz/scheduling.hpp"

namespace rvfuzz {

struct GenConfig {
  std::optional<std::string> ratio_type;  // e.g. "i8m1"; random per seed if unset
  std::size_t seq_len_min = 10, seq_len_max = 10;
  std::size_t data_len_min = 10, data_len_max = 10;
  double coin_bias = 0.5;
  // Largest VLEN the programs must stay well defined on; bounds index EEW.
  std::uint32_t vlen_max = 1024;
  // Restrict every intrinsic to the reference evaluator's subset.
  bool oracle_profile = false;
};

// Per-position definedness of one register version (field-major for tuples:
// element (field f, position p) at f * data_len + p). `known` holds mask
// bit values the generator can predict (-1 unknown).
struct RegState {
  std::vector<std::uint8_t> def;
  std::vector<std::int8_t> known;
  bool all_defined() const;
};

struct ElementState {
  // Per array, per element. Zero-initialized elements count as defined.
  std::vector<std::vector<std::uint8_t>> arrays;
  // Elements some store addresses (on-ratio stores only).
  std::vector<std::vector<std::uint8_t>> touched;
  // Keyed by (register id, version).
  std::map<std::pair<int, int>, RegState> regs;
};

struct MemAccess {
  int reg = -1;
  int version = 0;
  const IntrinsicDef *def = nullptr;  // nullptr for the bool byte composite
  int array = -1;
  int mask_array = -1;   // masked access: mask bits come from this array
  int stride_mult = 1;   // element spacing in units of one segment
  bool off_ratio = false;
};

struct OpSynth {
  bool slidedown_clamped = false;  // offset may be non-zero: result agnostic
  int tuple_index = -1;            // vget/vset field index
};

// Everything about one seed that is shared by its scheduling variants.
struct CaseSkeleton {
  std::uint64_t seed = 0;
  VectorType ratio_type;
  std::uint32_t ratio = 0;
  std::size_t data_len = 0;
  std::vector<OpInstance> ops;
  Allocation alloc;
  PrefixSuffix ps;
  std::vector<int> return_version;           // per op; -1 if none
  std::vector<std::vector<int>> param_version;  // per op, per param
  std::vector<OpSynth> synth;
  std::vector<std::vector<MemAccess>> loads;   // parallels ps.P
  std::vector<std::vector<MemAccess>> stores;  // parallels ps.S
  std::vector<ArrayDecl> arrays;
  std::vector<std::vector<Stmt>> P, S;
  std::vector<Stmt> I;
  ElementState states;
  std::vector<PrintEntry> manifest;
};

struct ProgramCase {
  std::uint64_t seed = 0;
  ScheduleMode mode = ScheduleMode::AllIn;
  std::string source;
  std::vector<PrintEntry> manifest;
  std::string config_snapshot;
  ProgramIR ir;
  std::string file_name() const;
};

class Generator {
 public:
  Generator(std::shared_ptr<const std::vector<IntrinsicDef>> defs, GenConfig cfg);

  CaseSkeleton build(std::uint64_t seed) const;
  ProgramCase emit(const CaseSkeleton &skel, ScheduleMode mode) const;
  ProgramCase generate(std::uint64_t seed, ScheduleMode mode) const;

  const GenConfig &config() const { return cfg_; }
  const std::vector<IntrinsicDef> &defs() const { return *defs_; }
  // Stable digest of the listing and config, recorded with every case.
  const std::string &snapshot() const { return snapshot_; }
  std::string listing_digest() const;

 private:
  struct Pools;
  std::shared_ptr<const std::vector<IntrinsicDef>> defs_;
  GenConfig cfg_;
  std::shared_ptr<Pools> pools_;
  std::string snapshot_;
};

// Inverse of Generator::snapshot(), minus the listing digest. Throws
// ModelError on malformed input.
GenConfig gen_config_from_snapshot(const std::string &snapshot);

// Reference-evaluator subset predicate used by the oracle profile.
bool in_oracle_subset(const IntrinsicDef &def);

// Abstract interpretation over data-stream positions.
ElementState analyze_agnostic(const CaseSkeleton &skel);

// Helper intrinsic synthesized from a prototype (stable address).
const IntrinsicDef *helper_def(const std::string &prototype);

}  // namespace rvfuzz
