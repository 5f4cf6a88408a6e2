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
#include <vector>

namespace rvfuzz {

struct ProcessResult {
  bool started = false;  // exec succeeded
  bool timed_out = false;
  bool signaled = false;
  int exit_code = -1;
  int signal = 0;
  std::string out;
  std::string err;
};

// Runs argv[0] (PATH lookup) in its own process group with stdin closed.
// On timeout the whole group is killed. Output is capped per stream.
ProcessResult run_process(const std::vector<std::string> &argv, double timeout_seconds,
                          const std::string &cwd = {});

// Absolute path of an executable: argv0 itself if it contains '/', else the
// first PATH match. Empty if not found or not executable.
std::string find_executable(const std::string &argv0);

}  // namespace rvfuzz
