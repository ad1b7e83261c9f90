#pragma once
// Shared helpers for the test binaries.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fixture(const std::string& name) {
  return read_text(std::string(SUBGROUP_FIXTURES) + "/" + name);
}

inline std::string fixture_path(const std::string& name) {
  return std::string(SUBGROUP_FIXTURES) + "/" + name;
}

/// Speaker-colon text with `turns` lines drawn from `speakers` names,
/// a blank line after roughly every `conversation_length` lines.
inline std::string random_dialogue(std::mt19937& gen, std::size_t turns, int speakers,
                                   std::size_t conversation_length) {
  std::uniform_int_distribution<int> who(1, speakers);
  std::bernoulli_distribution cut(1.0 / static_cast<double>(conversation_length));
  std::string out;
  for (std::size_t i = 0; i < turns; ++i) {
    out += "S" + std::to_string(who(gen)) + ": line " + std::to_string(i) + "\n";
    if (cut(gen)) out += "\n";
  }
  return out;
}

}  // namespace testing
