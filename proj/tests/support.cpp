#include "support.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "rvfuzz/listing_gen.hpp"

namespace rvfuzz::test {

const std::string &explicit_listing() {
  static const std::string s = generate_explicit_listing();
  return s;
}

std::shared_ptr<const std::vector<IntrinsicDef>> explicit_prototypes() {
  static const auto p =
      std::make_shared<const std::vector<IntrinsicDef>>(parse_prototypes(explicit_listing()));
  return p;
}

std::shared_ptr<const std::vector<IntrinsicDef>> explicit_definitions() {
  static const auto p =
      std::make_shared<const std::vector<IntrinsicDef>>(parse_definitions(explicit_listing()));
  return p;
}

const Generator &default_generator() {
  static const Generator g(explicit_prototypes(), GenConfig{});
  return g;
}

const Generator &oracle_generator() {
  static const Generator g = [] {
    GenConfig c;
    c.oracle_profile = true;
    return Generator(explicit_prototypes(), c);
  }();
  return g;
}

TempDir::TempDir() {
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("rvfuzz-test-" + std::to_string(rd()) + std::to_string(rd()));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string mock_cc() { return std::string(RVFUZZ_MOCK_DIR) + "/mockcc.sh"; }
std::string mock_emu() { return std::string(RVFUZZ_MOCK_DIR) + "/mockemu.sh"; }

CompilerConfig mock_config(const std::string &label, std::vector<std::string> opts,
                           std::vector<std::string> extra) {
  CompilerConfig c;
  c.label = label;
  c.compile = {mock_cc(), "-march=rv64gcv_zvfh", "-mabi=lp64d"};
  for (auto &e : extra) c.compile.push_back(std::move(e));
  for (const char *a : {"-{opt}", "{src}", "-o", "{exe}"}) c.compile.push_back(a);
  c.opt_levels = std::move(opts);
  c.compile_timeout = 10;
  c.run_timeout = 10;
  return c;
}

std::string read_file(const std::filesystem::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace rvfuzz::test
