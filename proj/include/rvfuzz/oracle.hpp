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
#include <stdexcept>
#include <string>

#include "rvfuzz/program.hpp"

namespace rvfuzz {

// Raised on an out-of-range array access: always a generator bug.
class BoundsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalOptions {
  std::uint32_t vlen = 128;
  // Every agnostic element (tail, masked-off under mask-agnostic policy)
  // reads as this byte repeated to the element width.
  std::uint8_t poison = 0x00;
};

struct EvalResult {
  enum class Status { Ok, Unsupported };
  Status status = Status::Ok;
  std::string output;   // exactly what the program prints
  std::string message;  // names the unsupported construct
  bool ok() const { return status == Status::Ok; }
};

// Executes the program's strip-mining loop directly. Throws BoundsError on an
// out-of-range access.
EvalResult evaluate(const ProgramIR &ir, const EvalOptions &opts = {});

}  // namespace rvfuzz
