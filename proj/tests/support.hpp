#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "rvfuzz/codegen.hpp"
#include "rvfuzz/difftest.hpp"
#include "rvfuzz/intrinsic.hpp"

namespace rvfuzz::test {

// Built-in explicit + explicit-policy listing, parsed once.
const std::string &explicit_listing();
std::shared_ptr<const std::vector<IntrinsicDef>> explicit_prototypes();
std::shared_ptr<const std::vector<IntrinsicDef>> explicit_definitions();

const Generator &default_generator();
const Generator &oracle_generator();

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string mock_cc();
std::string mock_emu();
// A mock compiler config; `extra` are trigger options for mockcc.sh.
CompilerConfig mock_config(const std::string &label, std::vector<std::string> opts,
                           std::vector<std::string> extra = {});

std::string read_file(const std::filesystem::path &p);

}  // namespace rvfuzz::test
