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

#include <string>

namespace rvfuzz {

// The four naming schemes of the ratified (v1.0) intrinsic API.
enum class ListingKind { Explicit, ExplicitPolicy, Implicit, ImplicitPolicy };

const char *to_string(ListingKind k);

// Prototype listing for one scheme, one declaration per line, grouped under
// "// <family>" comment lines. Assumes ELEN=64 with Zvfh.
std::string generate_listing(ListingKind kind);

// Explicit and explicit-policy listings concatenated.
std::string generate_explicit_listing();

}  // namespace rvfuzz
