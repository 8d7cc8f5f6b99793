#pragma once

#include <string>

#include "json.hpp"

namespace kmk::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode { kComputed = 0, kUsage = 1, kResource = 2, kInternal = 3 };

struct Command {
  std::string verb;  // normalform | residue | iszero | isnorm | kato | crosscheck | factor
  std::string tower = "t;x";
  std::string expr;
  std::string place;
  std::string w;
  std::string p;
  int precision = 8;
  unsigned factor_bound = 12;
  std::string windows = "2,4,8";
  std::string format = "text";  // text | structured
};

struct Outcome {
  int exit_code = kComputed;
  nlohmann::ordered_json doc;
  std::string text;
  // Rendered according to cmd.format.
  std::string render(const Command& cmd) const;
};

Outcome execute(const Command& cmd);

}  // namespace kmk::cli
